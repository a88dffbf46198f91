#include "isorev/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "isorev/normal_form.hpp"

namespace isorev {

namespace {

Eigen::MatrixXcd to_eigen(const MatC& m) {
  Eigen::MatrixXcd z(m.dim(), m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) z(i, j) = m(i, j);
  return z;
}

MatC from_eigen(const Eigen::MatrixXcd& z) {
  MatC m(static_cast<int>(z.rows()));
  for (int i = 0; i < z.rows(); ++i)
    for (int j = 0; j < z.cols(); ++j) m(i, j) = z(i, j);
  return m;
}

Eigen::MatrixXcd eigen_random_unitary(int n, Rng& rng) {
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.cnormal() / std::sqrt(2.0);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    cplx d = r(k, k);
    double a = std::abs(d);
    q.col(k) *= a > 0 ? d / a : cplx(1.0, 0.0);
  }
  return q;
}

// Quaternionic modified Gram-Schmidt on columns (right coefficients);
// two passes for orthogonality near machine precision.
void h_orthonormalize(MatH& m) {
  const int n = m.dim();
  auto col = [&](int c) {
    VecH v(n);
    for (int r = 0; r < n; ++r) v[r] = m(r, c);
    return v;
  };
  auto set_col = [&](int c, const VecH& v) {
    for (int r = 0; r < n; ++r) m(r, c) = v[r];
  };
  for (int k = 0; k < n; ++k) {
    VecH ck = col(k);
    for (int pass = 0; pass < 2; ++pass)
      for (int p = 0; p < k; ++p) {
        VecH cp = col(p);
        Quaternion coef = hermitian_form(cp, ck);
        for (int r = 0; r < n; ++r) ck[r] -= cp[r] * coef;
      }
    double nr = vec_norm(ck);
    if (nr == 0.0) throw EigensolverFailure("degenerate quaternionic frame");
    for (auto& e : ck) e *= 1.0 / nr;
    set_col(k, ck);
  }
}

}  // namespace

MatC random_unitary(int n, Rng& rng) {
  return from_eigen(eigen_random_unitary(n, rng));
}

MatC random_special_unitary(int n, Rng& rng) {
  Eigen::MatrixXcd q = eigen_random_unitary(n, rng);
  cplx d = q.determinant();
  q.col(0) *= std::conj(d) / std::abs(d);
  return from_eigen(q);
}

MatH random_sp_unitary(int n, Rng& rng) {
  MatH m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.qnormal() * 0.5;
  h_orthonormalize(m);
  return m;
}

MatC nearest_unitary(const MatC& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
  return from_eigen(svd.matrixU() * svd.matrixV().adjoint());
}

AnyIsometry random_group_element(GroupTag tag, std::uint64_t seed,
                                 const std::optional<Spectrum>& planted) {
  Rng rng(seed);
  const int n = tag.n;
  if (planted && planted->dim() != n)
    throw PreconditionViolated("planted spectrum dimension mismatch");

  if (tag.family == Family::Sp) {
    MatH a(n);
    if (planted) {
      MatH d(n);
      int k = 0;
      for (const auto& cl : planted->classes)
        for (int i = 0; i < cl.multiplicity; ++i, ++k)
          d(k, k) = unit_quaternion_angle(cl.theta);
      if (k != n)
        throw PreconditionViolated(
            "planted spectrum multiplicities do not sum to n");
      MatH u = random_sp_unitary(n, rng);
      a = u * d * adjoint(u);
    } else {
      a = random_sp_unitary(n, rng);
    }
    VecH v(n, Quaternion(0.0));
    if (tag.affine)
      for (auto& e : v) e = rng.qnormal();
    return IsometryH(tag, a, v);
  }

  MatC a(n);
  if (planted) {
    MatC d(n);
    cplx det(1.0, 0.0);
    int k = 0;
    for (const auto& cl : planted->classes)
      for (int i = 0; i < cl.multiplicity; ++i, ++k) {
        cplx e = unit_complex_angle(cl.theta);
        det *= e;
        d(k, k) = e;
      }
    if (k != n)
      throw PreconditionViolated(
          "planted spectrum multiplicities do not sum to n");
    if (tag.family == Family::SU && std::abs(det - cplx(1.0, 0.0)) > 1e-9 * n)
      throw PreconditionViolated("planted SU spectrum has determinant != 1");
    MatC u = random_unitary(n, rng);
    a = u * d * adjoint(u);
  } else {
    a = tag.family == Family::SU ? random_special_unitary(n, rng)
                                 : random_unitary(n, rng);
  }
  VecC v(n, cplx(0.0));
  if (tag.affine)
    for (auto& e : v) e = rng.cnormal();
  return IsometryC(tag, a, v);
}

namespace {

constexpr double kSupportTol = 1e-9;

std::vector<std::string> constraint_names(const ReverserConstraints& cons,
                                          bool translation) {
  std::vector<std::string> out{"conjugation-reversal", "unitary"};
  if (translation) out.push_back("translation-flip");
  if (cons.involution) out.push_back("involution");
  if (cons.det_one) out.push_back("det-one");
  return out;
}

bool carries(const VecC& v, const std::vector<int>& coords) {
  for (int c : coords)
    if (std::abs(v[c]) > kSupportTol) return true;
  return false;
}

bool carries(const VecH& v, const std::vector<int>& coords) {
  for (int c : coords)
    if (abs(v[c]) > kSupportTol) return true;
  return false;
}

}  // namespace

ReverserSpace reverser_space(const VecC& diag, const VecC& v,
                             const ReverserConstraints& cons) {
  EigenBuckets b = bucket_unitary_eigenvalues(diag);
  ReverserSpace out;

  const int nrot = static_cast<int>(b.rotation.size());
  std::vector<bool> used(nrot, false);
  for (int i = 0; i < nrot; ++i) {
    if (used[i] || b.rotation[i].angle <= 0) continue;
    int found = -1;
    for (int j = 0; j < nrot; ++j) {
      if (used[j] || j == i || b.rotation[j].angle > 0) continue;
      if (std::abs(b.rotation[i].angle + b.rotation[j].angle) <=
              10 * kClusterGap &&
          b.rotation[i].cols.size() == b.rotation[j].cols.size()) {
        found = j;
        break;
      }
    }
    if (found < 0) {
      out.feasible = false;
      continue;
    }
    used[i] = used[found] = true;
    ReverserBlock blk;
    blk.kind = ReverserBlock::Kind::PairCoupling;
    blk.angle = b.rotation[i].angle;
    blk.coords = b.rotation[i].cols;
    blk.mirror_coords = b.rotation[found].cols;
    const int m = static_cast<int>(blk.coords.size());
    blk.free_real_params = cons.involution ? m * m : 2 * m * m;
    out.blocks.push_back(std::move(blk));
  }
  for (int i = 0; i < nrot; ++i)
    if (!used[i] && b.rotation[i].angle <= 0) out.feasible = false;

  if (!b.minus_cols.empty()) {
    ReverserBlock blk;
    blk.kind = ReverserBlock::Kind::FullBlock;
    blk.angle = M_PI;
    blk.coords = b.minus_cols;
    const int m = static_cast<int>(blk.coords.size());
    blk.free_real_params = m * m;
    blk.carries_translation = carries(v, blk.coords);
    out.blocks.push_back(std::move(blk));
  }
  if (!b.plus_cols.empty()) {
    ReverserBlock blk;
    blk.kind = ReverserBlock::Kind::FullBlock;
    blk.angle = 0.0;
    blk.coords = b.plus_cols;
    const int m = static_cast<int>(blk.coords.size());
    blk.free_real_params = m * m;
    blk.carries_translation = carries(v, blk.coords);
    out.blocks.push_back(std::move(blk));
  }

  bool any_translation = false;
  for (const auto& blk : out.blocks)
    any_translation = any_translation || blk.carries_translation;
  out.constraints = constraint_names(cons, any_translation);
  for (const auto& blk : out.blocks) out.free_real_params += blk.free_real_params;
  return out;
}

ReverserSpace reverser_space(const VecH& diag, const VecH& v,
                             const ReverserConstraints& cons) {
  const int n = static_cast<int>(diag.size());
  // Normal-form diagonals are complex-subfield quaternions e^{i theta}.
  std::vector<double> theta(n);
  for (int k = 0; k < n; ++k) {
    auto [u, w] = q_split(diag[k]);
    if (std::abs(w) > kSupportTol)
      throw PreconditionViolated(
          "reverser_space: diagonal entry outside the complex subfield");
    theta[k] = std::abs(std::atan2(u.imag(), u.real()));
  }

  ReverserSpace out;
  std::vector<bool> grouped(n, false);
  for (int k = 0; k < n; ++k) {
    if (grouped[k]) continue;
    std::vector<int> coords{k};
    grouped[k] = true;
    for (int j = k + 1; j < n; ++j)
      if (!grouped[j] && std::abs(theta[j] - theta[k]) <= kClusterGap) {
        coords.push_back(j);
        grouped[j] = true;
      }
    const int m = static_cast<int>(coords.size());
    ReverserBlock blk;
    blk.angle = theta[k];
    blk.coords = coords;
    blk.carries_translation = carries(v, coords);
    if (theta[k] <= kFixedEigTol || theta[k] >= M_PI - kFixedEigTol) {
      blk.kind = ReverserBlock::Kind::FullQuaternion;
      blk.free_real_params = m * (2 * m + 1);
    } else {
      // The scalar commutation solver pins entries reversing e^{i theta}
      // to the line C j.
      if (solve_commutation(theta[k], -theta[k]) !=
          CommutationSolutionClass::ComplexJLine)
        throw EigensolverFailure("reverser_space: commutation class broke");
      blk.kind = ReverserBlock::Kind::ComplexJLines;
      blk.free_real_params = m * m;
    }
    out.blocks.push_back(std::move(blk));
  }

  bool any_translation = false;
  for (const auto& blk : out.blocks)
    any_translation = any_translation || blk.carries_translation;
  out.constraints = constraint_names(cons, any_translation);
  for (const auto& blk : out.blocks) out.free_real_params += blk.free_real_params;
  return out;
}

namespace {

// Orthonormal complex frame whose first column is v / ||v||.
Eigen::MatrixXcd pinned_frame(const VecC& v, const std::vector<int>& coords) {
  const int m = static_cast<int>(coords.size());
  Eigen::MatrixXcd w(m, m);
  Eigen::VectorXcd x(m);
  for (int i = 0; i < m; ++i) x(i) = v[coords[i]];
  x /= x.norm();
  w.col(0) = x;
  int filled = 1;
  while (filled < m) {
    Eigen::VectorXcd best;
    double best_norm = -1.0;
    for (int cand = 0; cand < m; ++cand) {
      Eigen::VectorXcd r = Eigen::VectorXcd::Zero(m);
      r(cand) = 1.0;
      for (int p = 0; p < filled; ++p)
        r -= w.col(p) * (w.col(p).adjoint() * r)(0, 0);
      if (r.norm() > best_norm) {
        best_norm = r.norm();
        best = r;
      }
    }
    w.col(filled++) = best / best.norm();
  }
  return w;
}

// Quaternionic analogue.
MatH pinned_frame_h(const VecH& v, const std::vector<int>& coords, Rng& rng) {
  const int m = static_cast<int>(coords.size());
  std::vector<VecH> cols;
  VecH x(m);
  for (int i = 0; i < m; ++i) x[i] = v[coords[i]];
  double nx = vec_norm(x);
  for (auto& e : x) e *= 1.0 / nx;
  cols.push_back(x);
  while (static_cast<int>(cols.size()) < m) {
    VecH best;
    double best_norm = -1.0;
    for (int cand = 0; cand < m; ++cand) {
      VecH r(m, Quaternion(0.0));
      r[cand] = Quaternion(1.0);
      for (const auto& y : cols) {
        Quaternion coef = hermitian_form(y, r);
        for (int i = 0; i < m; ++i) r[i] -= y[i] * coef;
      }
      double nr = vec_norm(r);
      if (nr > best_norm) {
        best_norm = nr;
        best = r;
      }
    }
    for (auto& e : best) e *= 1.0 / best_norm;
    cols.push_back(best);
  }
  (void)rng;
  MatH w(m);
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < m; ++r) w(r, c) = cols[c][r];
  return w;
}

// Places a complex block into B at the given row/column coordinate sets.
void scatter(MatC& b, const std::vector<int>& rows,
             const std::vector<int>& cols, const Eigen::MatrixXcd& blk) {
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) b(rows[i], cols[j]) = blk(i, j);
}

void scatter_h(MatH& b, const std::vector<int>& rows,
               const std::vector<int>& cols, const MatH& blk) {
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) b(rows[i], cols[j]) = blk(i, j);
}

// diag(signs) conjugated by a frame; an involution by construction.
Eigen::MatrixXcd signed_block(const Eigen::MatrixXcd& w,
                              const std::vector<int>& signs) {
  Eigen::VectorXcd d(w.cols());
  for (int i = 0; i < w.cols(); ++i) d(i) = static_cast<double>(signs[i]);
  return w * d.asDiagonal() * w.adjoint();
}

MatH signed_block_h(const MatH& w, const std::vector<int>& signs) {
  const int m = w.dim();
  MatH d(m);
  for (int i = 0; i < m; ++i) d(i, i) = Quaternion(double(signs[i]));
  return w * d * adjoint(w);
}

std::vector<int> random_signs(int m, Rng& rng, bool pin_first) {
  std::vector<int> s(m);
  for (int i = 0; i < m; ++i) s[i] = rng.sign();
  if (pin_first && m > 0) s[0] = -1;
  return s;
}

// Standard antisymmetric unitary J (2x2 rotation blocks).
Eigen::MatrixXcd j_standard(int m) {
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i + 1 < m; i += 2) {
    j(i, i + 1) = 1.0;
    j(i + 1, i) = -1.0;
  }
  return j;
}

template <class S>
SearchOutcome search_result(const AffineMap<S>& g_model,
                            const SquareMatrix<S>& b, GroupTag tag,
                            const ReverserConstraints& cons, long trial,
                            const ReverserSpace& space) {
  const int n = tag.n;
  AffineMap<S> h(tag, b, std::vector<S>(n, S(0.0)));
  ReverserWitness w = verify_witness(g_model, h, cons.accept_tol);
  const double bound = cons.accept_tol * n;
  if (w.residual_conj > bound) return {false, {}, trial, space};
  if (cons.involution && w.residual_inv > bound) return {false, {}, trial, space};
  if (!is_unitary(b, bound)) return {false, {}, trial, space};
  if constexpr (std::is_same_v<S, cplx>) {
    if (cons.det_one && det_defect(b) > bound) return {false, {}, trial, space};
  }
  return {true, w, trial, space};
}

}  // namespace

SearchOutcome brute_reverser_search(const MatC& diag_a, const VecC& v,
                                    GroupTag tag,
                                    const ReverserConstraints& cons,
                                    long trials, std::uint64_t seed) {
  const int n = diag_a.dim();
  if (tag.n != n || static_cast<int>(v.size()) != n)
    throw DimensionMismatch("brute_reverser_search: size mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && std::abs(diag_a(i, j)) > kSupportTol)
        throw PreconditionViolated("brute_reverser_search: A must be diagonal");

  VecC d(n);
  for (int i = 0; i < n; ++i) d[i] = diag_a(i, i);
  ReverserSpace space = reverser_space(d, v, cons);
  if (!space.feasible) return {false, {}, 0, space};

  AffineMap<cplx> g_model(tag, diag_a, v);
  for (long trial = 0; trial < trials; ++trial) {
    Rng rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(trial));
    MatC b(n);
    for (const auto& blk : space.blocks) {
      const int m = static_cast<int>(blk.coords.size());
      if (blk.kind == ReverserBlock::Kind::PairCoupling) {
        Eigen::MatrixXcd p = eigen_random_unitary(m, rng);
        scatter(b, blk.coords, blk.mirror_coords, p);
        scatter(b, blk.mirror_coords, blk.coords,
                cons.involution ? Eigen::MatrixXcd(p.adjoint())
                                : eigen_random_unitary(m, rng));
      } else {  // FullBlock on a +-1 class
        if (blk.carries_translation) {
          Eigen::MatrixXcd w = pinned_frame(v, blk.coords);
          if (cons.involution) {
            scatter(b, blk.coords, blk.coords,
                    signed_block(w, random_signs(m, rng, true)));
          } else {
            Eigen::MatrixXcd inner = Eigen::MatrixXcd::Zero(m, m);
            inner(0, 0) = -1.0;
            if (m > 1)
              inner.bottomRightCorner(m - 1, m - 1) =
                  eigen_random_unitary(m - 1, rng);
            scatter(b, blk.coords, blk.coords, w * inner * w.adjoint());
          }
        } else if (cons.involution) {
          Eigen::MatrixXcd w = eigen_random_unitary(m, rng);
          scatter(b, blk.coords, blk.coords,
                  signed_block(w, random_signs(m, rng, false)));
        } else {
          scatter(b, blk.coords, blk.coords, eigen_random_unitary(m, rng));
        }
      }
    }
    SearchOutcome out = search_result(g_model, b, tag, cons, trial + 1, space);
    if (out.found) return out;
  }
  return {false, {}, trials, space};
}

SearchOutcome brute_reverser_search(const MatH& diag_a, const VecH& v,
                                    GroupTag tag,
                                    const ReverserConstraints& cons,
                                    long trials, std::uint64_t seed) {
  const int n = diag_a.dim();
  if (tag.n != n || static_cast<int>(v.size()) != n)
    throw DimensionMismatch("brute_reverser_search: size mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && abs(diag_a(i, j)) > kSupportTol)
        throw PreconditionViolated("brute_reverser_search: A must be diagonal");

  VecH d(n);
  for (int i = 0; i < n; ++i) d[i] = diag_a(i, i);
  ReverserSpace space = reverser_space(d, v, cons);
  if (!space.feasible) return {false, {}, 0, space};

  AffineMap<Quaternion> g_model(tag, diag_a, v);
  for (long trial = 0; trial < trials; ++trial) {
    Rng rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(trial));
    MatH b(n);
    bool rejected = false;
    for (const auto& blk : space.blocks) {
      const int m = static_cast<int>(blk.coords.size());
      if (blk.kind == ReverserBlock::Kind::ComplexJLines) {
        Eigen::MatrixXcd b1;
        if (cons.involution && m % 2 == 0) {
          Eigen::MatrixXcd w = eigen_random_unitary(m, rng);
          b1 = w * j_standard(m) * w.transpose();
        } else {
          b1 = eigen_random_unitary(m, rng);
        }
        if (cons.involution) {
          // (B1 j)^2 = -B1 conj(B1); reject as soon as this block fails.
          double defect = (b1 * b1.conjugate() +
                           Eigen::MatrixXcd::Identity(m, m))
                              .cwiseAbs()
                              .maxCoeff();
          if (defect > cons.accept_tol * n) {
            rejected = true;
            break;
          }
        }
        MatH qblk(m);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            qblk(i, j) = Quaternion::from_complex_pair(0.0, b1(i, j));
        scatter_h(b, blk.coords, blk.coords, qblk);
      } else {  // FullQuaternion on a +-1 class
        if (blk.carries_translation) {
          MatH w = pinned_frame_h(v, blk.coords, rng);
          if (cons.involution) {
            scatter_h(b, blk.coords, blk.coords,
                      signed_block_h(w, random_signs(m, rng, true)));
          } else {
            MatH inner(m);
            inner(0, 0) = Quaternion(-1.0);
            if (m > 1) {
              MatH rest = random_sp_unitary(m - 1, rng);
              for (int i = 1; i < m; ++i)
                for (int j = 1; j < m; ++j) inner(i, j) = rest(i - 1, j - 1);
            }
            scatter_h(b, blk.coords, blk.coords, w * inner * adjoint(w));
          }
        } else if (cons.involution) {
          MatH w = random_sp_unitary(m, rng);
          scatter_h(b, blk.coords, blk.coords,
                    signed_block_h(w, random_signs(m, rng, false)));
        } else {
          scatter_h(b, blk.coords, blk.coords, random_sp_unitary(m, rng));
        }
      }
    }
    if (rejected) continue;
    SearchOutcome out = search_result(g_model, b, tag, cons, trial + 1, space);
    if (out.found) return out;
  }
  return {false, {}, trials, space};
}

std::optional<ObstructionCertificate> det_obstruction(const NormalFormC& nf,
                                                      double tol) {
  if (nf.tag.family != Family::SU)
    throw PreconditionViolated("det_obstruction: SU only");
  if (!nf.self_dual)
    throw PreconditionViolated("det_obstruction: spectrum must be self-dual");

  if (nf.s > 0) return std::nullopt;  // free sign on the -1 block
  const int n = nf.tag.n;
  const bool pinned = nf.t == 1 && std::abs(nf.v[n - 1]) > tol;
  if (nf.t >= 2) return std::nullopt;  // free sign among fixed lines
  if (nf.t == 1 && !pinned) return std::nullopt;

  ObstructionCertificate cert;
  for (const auto& cl : nf.spectrum.classes) {
    if (cl.theta <= kFixedEigTol || std::abs(cl.theta - M_PI) <= kFixedEigTol)
      continue;
    if (cl.theta < 0) continue;  // count each conjugate pair class once
    cert.trace.push_back({"conjugate-pair-class", cl.multiplicity,
                          cl.multiplicity % 2 ? -1 : 1});
  }
  if (pinned) cert.trace.push_back({"pinned-fixed-line", 1, -1});
  cert.forced_det = cert.replay();
  if (cert.forced_det != -1) return std::nullopt;
  return cert;
}

bool spectrum_oracle_reversible(const MatC& a, GroupTag tag, double tol) {
  (void)tag;
  return spectrum_self_dual(a, tol);
}

bool spectrum_oracle_reversible(const MatH& a, GroupTag tag, double tol) {
  (void)tag;
  require_membership(
      IsometryH({Family::Sp, false, a.dim()}, a,
                VecH(a.dim(), Quaternion(0.0))),
      tol);
  return true;
}

}  // namespace isorev
