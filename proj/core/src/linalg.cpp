#include "isorev/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

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

// Signed angle in (-pi, pi].
double signed_angle(cplx lambda) {
  double a = std::atan2(lambda.imag(), lambda.real());
  if (a <= -M_PI) a = M_PI;
  return a;
}

// Single-linkage clustering of sorted values: a break wherever the gap
// exceeds `gap`.  Returns [begin, end) index ranges into `order`.
std::vector<std::pair<int, int>> linkage_ranges(const std::vector<double>& v,
                                                const std::vector<int>& order,
                                                double gap) {
  std::vector<std::pair<int, int>> ranges;
  int begin = 0;
  for (int i = 1; i <= static_cast<int>(order.size()); ++i) {
    if (i == static_cast<int>(order.size()) ||
        v[order[i]] - v[order[i - 1]] > gap) {
      ranges.emplace_back(begin, i);
      begin = i;
    }
  }
  return ranges;
}

}  // namespace

MatC embed_complex(const MatH& m) {
  const int n = m.dim();
  MatC z(2 * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      auto [u, v] = q_split(m(s, t));
      z(s, t) = u;
      z(s, t + n) = v;
      z(s + n, t) = -std::conj(v);
      z(s + n, t + n) = std::conj(u);
    }
  return z;
}

VecC embed_vector(const VecH& zq) {
  const int n = static_cast<int>(zq.size());
  VecC w(2 * n);
  for (int s = 0; s < n; ++s) {
    auto [u, v] = q_split(zq[s]);
    w[s] = u;
    w[s + n] = -std::conj(v);
  }
  return w;
}

UnitaryEigen eig_unitary(const MatC& m, double tol) {
  const int n = m.dim();
  if (n == 0) return {VecC{}, MatC(0)};
  if (!is_unitary(m, tol * n))
    throw NotUnitary("eig_unitary: input is not unitary within tolerance");

  const Eigen::MatrixXcd z = to_eigen(m);
  Eigen::MatrixXcd h = 0.5 * (z + z.adjoint());
  Eigen::MatrixXcd sk = (z - z.adjoint()) / cplx(0.0, 2.0);
  h = (0.5 * (h + h.adjoint())).eval();
  sk = (0.5 * (sk + sk.adjoint())).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw EigensolverFailure("eig_unitary: Hermitian stage failed");

  // The real parts alone cannot separate conjugate eigenvalues e^{+-i
  // theta}; diagonalize the compressed imaginary part inside each cluster
  // of close real parts.
  const Eigen::VectorXd c = es.eigenvalues();
  const Eigen::MatrixXcd q = es.eigenvectors();
  constexpr double kRealStageGap = 1e-6;

  Eigen::MatrixXcd vecs(n, n);
  int col = 0;
  int begin = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || c(i) - c(i - 1) > kRealStageGap) {
      const int width = i - begin;
      const Eigen::MatrixXcd p = q.middleCols(begin, width);
      if (width == 1) {
        vecs.col(col++) = p;
      } else {
        Eigen::MatrixXcd sr = p.adjoint() * sk * p;
        sr = (0.5 * (sr + sr.adjoint())).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(sr);
        if (es2.info() != Eigen::Success)
          throw EigensolverFailure("eig_unitary: refinement stage failed");
        vecs.middleCols(col, width) = p * es2.eigenvectors();
        col += width;
      }
      begin = i;
    }
  }

  // Rayleigh quotients give the eigenvalues to full accuracy; order columns
  // by ascending signed angle for determinism.
  std::vector<cplx> lam(n);
  std::vector<double> ang(n);
  for (int k = 0; k < n; ++k) {
    cplx r = (vecs.col(k).adjoint() * z * vecs.col(k))(0, 0);
    double a = std::abs(r);
    lam[k] = a > 0 ? r / a : cplx(1.0, 0.0);
    ang[k] = signed_angle(lam[k]);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return ang[a] < ang[b]; });

  UnitaryEigen out;
  out.eigenvalues.resize(n);
  Eigen::MatrixXcd sorted(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = lam[order[k]];
    sorted.col(k) = vecs.col(order[k]);
  }
  out.vectors = from_eigen(sorted);

  double resid = 0.0;
  for (int k = 0; k < n; ++k)
    resid = std::max(
        resid,
        (z * sorted.col(k) - out.eigenvalues[k] * sorted.col(k))
            .cwiseAbs()
            .maxCoeff());
  if (resid > 1e-9 * n)
    throw EigensolverFailure("eig_unitary: residual " + std::to_string(resid) +
                             " exceeds bound");
  return out;
}

EigenBuckets bucket_unitary_eigenvalues(const VecC& lam) {
  EigenBuckets out;
  std::vector<double> ang;
  std::vector<int> rot_cols;
  for (int k = 0; k < static_cast<int>(lam.size()); ++k) {
    if (std::abs(lam[k] - cplx(1.0, 0.0)) <= kFixedEigTol) {
      out.plus_cols.push_back(k);
    } else if (std::abs(lam[k] + cplx(1.0, 0.0)) <= kFixedEigTol) {
      out.minus_cols.push_back(k);
    } else {
      rot_cols.push_back(k);
      ang.push_back(signed_angle(lam[k]));
    }
  }
  std::vector<int> order(rot_cols.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ang[a] < ang[b]; });
  for (auto [lo, hi] : linkage_ranges(ang, order, kClusterGap)) {
    EigenBuckets::Cluster cl;
    double sum = 0.0;
    for (int i = lo; i < hi; ++i) {
      cl.cols.push_back(rot_cols[order[i]]);
      sum += ang[order[i]];
    }
    cl.angle = sum / (hi - lo);
    out.rotation.push_back(std::move(cl));
  }
  return out;
}

Spectrum eigenclasses(const MatC& m, double tol) {
  UnitaryEigen eg = eig_unitary(m, tol);
  EigenBuckets b = bucket_unitary_eigenvalues(eg.eigenvalues);
  Spectrum sp;
  sp.t = static_cast<int>(b.plus_cols.size());
  sp.s = static_cast<int>(b.minus_cols.size());
  for (const auto& cl : b.rotation) {
    sp.classes.push_back({cl.angle, static_cast<int>(cl.cols.size())});
    sp.r += static_cast<int>(cl.cols.size());
  }
  if (sp.t > 0) sp.classes.push_back({0.0, sp.t});
  if (sp.s > 0) sp.classes.push_back({M_PI, sp.s});
  std::sort(sp.classes.begin(), sp.classes.end(),
            [](const SimilarityClass& a, const SimilarityClass& b2) {
              return a.theta < b2.theta;
            });
  sp.has_plus_one = sp.t > 0;
  sp.has_minus_one = sp.s > 0;
  return sp;
}

namespace {

// Folds the spectrum of embed_complex(A) into quaternionic similarity
// classes.  Returns clusters paired as (+theta, -theta) plus halved fixed
// blocks; verifies the symmetry the embedding forces.
struct FoldedSpectrum {
  std::vector<EigenBuckets::Cluster> rotation;  // positive angles only
  std::vector<int> plus_cols;                       // full complex lists
  std::vector<int> minus_cols;
  int s_h = 0;
  int t_h = 0;
};

FoldedSpectrum fold_embedded(const EigenBuckets& b) {
  FoldedSpectrum f;
  f.plus_cols = b.plus_cols;
  f.minus_cols = b.minus_cols;
  if (f.plus_cols.size() % 2 || f.minus_cols.size() % 2)
    throw EigensolverFailure(
        "embedded spectrum: fixed eigenvalue multiplicity is odd");
  f.t_h = static_cast<int>(f.plus_cols.size()) / 2;
  f.s_h = static_cast<int>(f.minus_cols.size()) / 2;

  std::vector<const EigenBuckets::Cluster*> pos, neg;
  for (const auto& cl : b.rotation)
    (cl.angle > 0 ? pos : neg).push_back(&cl);
  if (pos.size() != neg.size())
    throw EigensolverFailure("embedded spectrum: unpaired rotation classes");
  // b.rotation ascends in signed angle, so neg ascends and pos ascends;
  // the mirror of pos[i] is neg[neg.size()-1-i].
  for (size_t i = 0; i < pos.size(); ++i) {
    const auto* mirror = neg[neg.size() - 1 - i];
    if (std::abs(mirror->angle + pos[i]->angle) > 10 * kClusterGap ||
        mirror->cols.size() != pos[i]->cols.size())
      throw EigensolverFailure("embedded spectrum: mirror class mismatch");
    f.rotation.push_back(*pos[i]);
  }
  return f;
}

}  // namespace

Spectrum eigenclasses(const MatH& m, double tol) {
  UnitaryEigen eg = eig_unitary(embed_complex(m), tol);
  FoldedSpectrum f = fold_embedded(bucket_unitary_eigenvalues(eg.eigenvalues));
  Spectrum sp;
  sp.t = f.t_h;
  sp.s = f.s_h;
  for (const auto& cl : f.rotation) {
    sp.classes.push_back({cl.angle, static_cast<int>(cl.cols.size())});
    sp.r += static_cast<int>(cl.cols.size());
  }
  if (sp.t > 0) sp.classes.insert(sp.classes.begin(), {0.0, sp.t});
  if (sp.s > 0) sp.classes.push_back({M_PI, sp.s});
  sp.has_plus_one = sp.t > 0;
  sp.has_minus_one = sp.s > 0;
  return sp;
}

bool spectrum_self_dual(const Spectrum& sp) {
  std::vector<SimilarityClass> rot;
  for (const auto& c : sp.classes)
    if (std::abs(c.theta) > kFixedEigTol &&
        std::abs(c.theta - M_PI) > kFixedEigTol &&
        std::abs(c.theta + M_PI) > kFixedEigTol)
      rot.push_back(c);
  std::vector<bool> used(rot.size(), false);
  for (size_t i = 0; i < rot.size(); ++i) {
    if (used[i]) continue;
    bool matched = false;
    for (size_t j = 0; j < rot.size(); ++j) {
      if (j == i || used[j]) continue;
      if (std::abs(rot[i].theta + rot[j].theta) <= 10 * kClusterGap &&
          rot[i].multiplicity == rot[j].multiplicity) {
        used[i] = used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

bool spectrum_self_dual(const MatC& m, double tol) {
  return spectrum_self_dual(eigenclasses(m, tol));
}

cplx determinant(const MatC& m) { return to_eigen(m).determinant(); }

double det_defect(const MatC& m) {
  return std::abs(determinant(m) - cplx(1.0, 0.0));
}

namespace {

// tau(w) = J conj(w) with J = [[0, I], [-I, 0]]: the antilinear map the
// quaternionic structure induces on C^{2n}; tau^2 = -1 and <tau w, w> = 0.
Eigen::VectorXcd tau(const Eigen::VectorXcd& w) {
  const int n = static_cast<int>(w.size()) / 2;
  Eigen::VectorXcd out(2 * n);
  out.head(n) = w.tail(n).conjugate();
  out.tail(n) = -w.head(n).conjugate();
  return out;
}

// Quaternionic vector with embed_vector(z) = w.
VecH unembed_vector(const Eigen::VectorXcd& w) {
  const int n = static_cast<int>(w.size()) / 2;
  VecH z(n);
  for (int s = 0; s < n; ++s)
    z[s] = Quaternion::from_complex_pair(w(s), -std::conj(w(s + n)));
  return z;
}

// Orthonormal half-basis of a +-1 eigenspace of an embedded matrix: picks
// w_1, ..., w_m so that {w_p} together with {tau(w_p)} spans the given 2m
// columns.  Each w_p then yields one quaternionic eigenvector.
std::vector<Eigen::VectorXcd> tau_half_basis(const Eigen::MatrixXcd& cols) {
  const int two_m = static_cast<int>(cols.cols());
  if (two_m % 2)
    throw EigensolverFailure("tau_half_basis: odd eigenspace dimension");
  const int m = two_m / 2;
  std::vector<Eigen::VectorXcd> chosen;
  std::vector<Eigen::VectorXcd> span;  // chosen plus their tau images
  for (int step = 0; step < m; ++step) {
    Eigen::VectorXcd best;
    double best_norm = -1.0;
    for (int c = 0; c < two_m; ++c) {
      Eigen::VectorXcd r = cols.col(c);
      for (const auto& y : span) r -= y * (y.adjoint() * r)(0, 0);
      double nr = r.norm();
      if (nr > best_norm) {
        best_norm = nr;
        best = r;
      }
    }
    if (best_norm < 0.1)
      throw EigensolverFailure("tau_half_basis: basis extraction collapsed");
    best /= best.norm();
    chosen.push_back(best);
    span.push_back(best);
    Eigen::VectorXcd tb = tau(best);
    // <tau w, w> = 0 holds identically; re-orthogonalize against earlier
    // picks only, then normalize.
    for (const auto& y : span) tb -= y * (y.adjoint() * tb)(0, 0);
    tb /= tb.norm();
    span.push_back(tb);
  }
  return chosen;
}

}  // namespace

SpDiagonalization diagonalize_sp(const MatH& a, double tol) {
  const int n = a.dim();
  if (!is_unitary(a, tol * n))
    throw NotUnitary("diagonalize_sp: input is not unitary within tolerance");
  const MatC z = embed_complex(a);
  UnitaryEigen eg = eig_unitary(z, tol);
  FoldedSpectrum f = fold_embedded(bucket_unitary_eigenvalues(eg.eigenvalues));

  Eigen::MatrixXcd vecs(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i)
    for (int k = 0; k < 2 * n; ++k) vecs(i, k) = eg.vectors(i, k);

  // Columns of W in ascending class order: +1 block (theta = 0), rotation
  // classes, -1 block (theta = pi).
  std::vector<VecH> w_cols;
  std::vector<double> thetas;

  auto emit_fixed_block = [&](const std::vector<int>& cols, double theta) {
    if (cols.empty()) return;
    Eigen::MatrixXcd sub(2 * n, cols.size());
    for (size_t c = 0; c < cols.size(); ++c) sub.col(c) = vecs.col(cols[c]);
    for (const auto& w : tau_half_basis(sub)) {
      w_cols.push_back(unembed_vector(w));
      thetas.push_back(theta);
    }
  };

  emit_fixed_block(f.plus_cols, 0.0);
  for (const auto& cl : f.rotation)
    for (int c : cl.cols) {
      w_cols.push_back(unembed_vector(vecs.col(c)));
      thetas.push_back(cl.angle);
    }
  emit_fixed_block(f.minus_cols, M_PI);

  if (static_cast<int>(w_cols.size()) != n)
    throw EigensolverFailure("diagonalize_sp: class multiplicities do not sum");

  MatH w(n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) w(r, c) = w_cols[c][r];

  // Certify: W unitary over H and A W = W D.
  const double bound = std::max(tol, 1e-9) * n;
  if (!is_unitary(w, bound))
    throw EigensolverFailure("diagonalize_sp: eigenvector frame not unitary");
  MatH d(n);
  for (int i = 0; i < n; ++i) {
    if (thetas[i] == 0.0)
      d(i, i) = Quaternion(1.0);
    else if (thetas[i] == M_PI)
      d(i, i) = Quaternion(-1.0);
    else
      d(i, i) = Quaternion(std::cos(thetas[i]), std::sin(thetas[i]), 0.0, 0.0);
  }
  if (max_abs(a * w - w * d) > bound)
    throw EigensolverFailure("diagonalize_sp: residual exceeds bound");

  return {adjoint(w), thetas};
}

}  // namespace isorev
