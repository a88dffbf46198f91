#include "isorev/normal_form.hpp"

#include <algorithm>
#include <cmath>

namespace isorev {

cplx unit_complex_angle(double theta) {
  if (theta == 0.0) return cplx(1.0, 0.0);
  if (theta == M_PI) return cplx(-1.0, 0.0);
  return cplx(std::cos(theta), std::sin(theta));
}

Quaternion unit_quaternion_angle(double theta) {
  if (theta == 0.0) return Quaternion(1.0);
  if (theta == M_PI) return Quaternion(-1.0);
  return Quaternion(std::cos(theta), std::sin(theta), 0.0, 0.0);
}

namespace {

// Permutes the rows of a conjugating frame: row k of the result is row
// perm[k] of the input, so U' A U'^-1 = diag(d_{perm[k]}).
template <class S>
SquareMatrix<S> permute_rows(const SquareMatrix<S>& u,
                             const std::vector<int>& perm) {
  SquareMatrix<S> out(u.dim());
  for (int k = 0; k < u.dim(); ++k)
    for (int j = 0; j < u.dim(); ++j) out(k, j) = u(perm[k], j);
  return out;
}

cplx inverse_scalar(const cplx& z) { return 1.0 / z; }
Quaternion inverse_scalar(const Quaternion& q) { return inverse(q); }

// Eliminates the translation on moving coordinates: u_k = (d_k - 1)^-1 w_k
// there, zero on the fixed block; v keeps only the fixed-block part.
// is_fixed[k] marks the +1 coordinates.
template <class S>
void split_translation(const std::vector<S>& w, const std::vector<S>& diag,
                       const std::vector<bool>& is_fixed, std::vector<S>* u,
                       std::vector<S>* v) {
  using std::abs;
  const int n = static_cast<int>(w.size());
  u->assign(n, S(0.0));
  v->assign(n, S(0.0));
  for (int k = 0; k < n; ++k) {
    if (is_fixed[k]) {
      (*v)[k] = w[k];
      continue;
    }
    S dm1 = diag[k] - S(1.0);
    if (abs(dm1) < kIllConditionedGap)
      throw IllConditioned(
          "translation elimination divides by an eigenvalue too close to 1");
    (*u)[k] = inverse_scalar(dm1) * w[k];
  }
}

Spectrum spectrum_from_coordinates(const std::vector<double>& thetas_by_coord,
                                   int s, int t, bool quaternionic) {
  Spectrum sp;
  sp.s = s;
  sp.t = t;
  std::vector<double> rot;
  for (double th : thetas_by_coord) rot.push_back(th);
  std::sort(rot.begin(), rot.end());
  for (size_t i = 0; i < rot.size();) {
    size_t j = i;
    while (j < rot.size() && rot[j] - rot[i] <= kClusterGap) ++j;
    sp.classes.push_back({rot[i], static_cast<int>(j - i)});
    sp.r += static_cast<int>(j - i);
    i = j;
  }
  if (quaternionic) {
    if (sp.t > 0) sp.classes.insert(sp.classes.begin(), {0.0, sp.t});
    if (sp.s > 0) sp.classes.push_back({M_PI, sp.s});
  } else {
    if (sp.t > 0) sp.classes.push_back({0.0, sp.t});
    if (sp.s > 0) sp.classes.push_back({M_PI, sp.s});
    std::sort(sp.classes.begin(), sp.classes.end(),
              [](const SimilarityClass& a, const SimilarityClass& b) {
                return a.theta < b.theta;
              });
  }
  sp.has_plus_one = sp.t > 0;
  sp.has_minus_one = sp.s > 0;
  return sp;
}

}  // namespace

NormalFormH normalize(const IsometryH& g, double tol) {
  require_membership(g, tol);
  const int n = g.tag.n;
  SpDiagonalization sd = diagonalize_sp(g.linear, tol);

  // diagonalize_sp ascends in [0, pi]; normal-form order is rotations,
  // then -1, then +1.
  std::vector<int> rot_idx, s_idx, t_idx;
  for (int k = 0; k < n; ++k) {
    if (sd.thetas[k] == 0.0)
      t_idx.push_back(k);
    else if (sd.thetas[k] == M_PI)
      s_idx.push_back(k);
    else
      rot_idx.push_back(k);
  }
  std::vector<int> perm;
  perm.insert(perm.end(), rot_idx.begin(), rot_idx.end());
  perm.insert(perm.end(), s_idx.begin(), s_idx.end());
  perm.insert(perm.end(), t_idx.begin(), t_idx.end());

  NormalFormH nf;
  nf.tag = g.tag;
  nf.rot = static_cast<int>(rot_idx.size());
  nf.s = static_cast<int>(s_idx.size());
  nf.t = static_cast<int>(t_idx.size());
  nf.self_dual = true;

  MatH u_lin = permute_rows(sd.u, perm);
  nf.diagonal.resize(n);
  std::vector<double> rot_thetas;
  std::vector<bool> is_fixed(n, false);
  for (int k = 0; k < n; ++k) {
    double th = sd.thetas[perm[k]];
    nf.diagonal[k] = unit_quaternion_angle(th);
    if (th == 0.0) is_fixed[k] = true;
    if (th != 0.0 && th != M_PI) rot_thetas.push_back(th);
  }

  VecH w = u_lin * g.translation;
  VecH u_trans, v;
  split_translation(w, nf.diagonal, is_fixed, &u_trans, &v);
  if (!g.tag.affine) u_trans.assign(n, Quaternion(0.0));

  nf.conjugator = IsometryH(g.tag, u_lin, u_trans);
  nf.v = v;
  nf.spectrum = spectrum_from_coordinates(rot_thetas, nf.s, nf.t, true);
  nf.residual = distance(conjugate_by(nf.conjugator, g), nf.normal_element());
  if (nf.residual > std::max(tol, 1e-9) * n * 10)
    throw EigensolverFailure("normalize: conjugation residual too large");
  return nf;
}

NormalFormC normalize(const IsometryC& g, double tol) {
  require_membership(g, tol);
  const int n = g.tag.n;
  UnitaryEigen eg = eig_unitary(g.linear, tol);
  EigenBuckets b = bucket_unitary_eigenvalues(eg.eigenvalues);

  // Try to match every rotation class with its mirror at -theta.
  const int nrot = static_cast<int>(b.rotation.size());
  std::vector<int> mirror(nrot, -1);
  bool self_dual = true;
  {
    std::vector<bool> used(nrot, false);
    for (int i = 0; i < nrot; ++i) {
      if (b.rotation[i].angle <= 0) continue;
      int found = -1;
      for (int j = 0; j < nrot; ++j) {
        if (used[j] || b.rotation[j].angle > 0) continue;
        if (std::abs(b.rotation[i].angle + b.rotation[j].angle) <=
                10 * kClusterGap &&
            b.rotation[i].cols.size() == b.rotation[j].cols.size()) {
          found = j;
          break;
        }
      }
      if (found < 0) {
        self_dual = false;
        break;
      }
      used[found] = true;
      mirror[i] = found;
    }
    if (self_dual) {
      int paired = 0;
      for (int i = 0; i < nrot; ++i)
        if (mirror[i] >= 0) paired += 2;
      if (paired != nrot) self_dual = false;
    }
  }

  // Column order and snapped diagonal entries.
  std::vector<int> order;
  std::vector<cplx> diag;
  int pairs = 0;
  if (self_dual) {
    for (int i = 0; i < nrot; ++i) {
      if (mirror[i] < 0) continue;
      const auto& pos = b.rotation[i];
      const auto& neg = b.rotation[mirror[i]];
      double theta = 0.5 * (pos.angle - neg.angle);
      double c = std::cos(theta), sn = std::sin(theta);
      for (size_t k = 0; k < pos.cols.size(); ++k) {
        order.push_back(pos.cols[k]);
        diag.push_back(cplx(c, sn));
        order.push_back(neg.cols[k]);
        diag.push_back(cplx(c, -sn));
        ++pairs;
      }
    }
  } else {
    for (const auto& cl : b.rotation) {
      cplx e = unit_complex_angle(cl.angle);
      for (int c : cl.cols) {
        order.push_back(c);
        diag.push_back(e);
      }
    }
  }
  for (int c : b.minus_cols) {
    order.push_back(c);
    diag.push_back(cplx(-1.0, 0.0));
  }
  for (int c : b.plus_cols) {
    order.push_back(c);
    diag.push_back(cplx(1.0, 0.0));
  }

  MatC frame(n);  // columns are the reordered eigenvectors
  for (int k = 0; k < n; ++k)
    for (int r = 0; r < n; ++r) frame(r, k) = eg.vectors(r, order[k]);

  // SU conjugators must have det 1; absorb the frame's phase into the
  // first eigenvector (an eigenvector scaled by a unit stays one).
  if (g.tag.family == Family::SU && n > 0) {
    cplx d = determinant(frame);
    cplx fix = std::conj(d) / std::abs(d);
    for (int r = 0; r < n; ++r) frame(r, 0) *= fix;
  }

  NormalFormC nf;
  nf.tag = g.tag;
  nf.self_dual = self_dual;
  nf.pairs = pairs;
  nf.s = static_cast<int>(b.minus_cols.size());
  nf.t = static_cast<int>(b.plus_cols.size());
  nf.rot = n - nf.s - nf.t;
  nf.diagonal = diag;

  MatC c_lin = adjoint(frame);
  std::vector<bool> is_fixed(n, false);
  for (int k = nf.rot + nf.s; k < n; ++k) is_fixed[k] = true;

  VecC w = c_lin * g.translation;
  VecC u_trans, v;
  split_translation(w, nf.diagonal, is_fixed, &u_trans, &v);
  if (!g.tag.affine) u_trans.assign(n, cplx(0.0));

  nf.conjugator = IsometryC(g.tag, c_lin, u_trans);
  nf.v = v;

  std::vector<double> rot_thetas;
  for (int k = 0; k < nf.rot; ++k)
    rot_thetas.push_back(std::arg(nf.diagonal[k]));
  nf.spectrum = spectrum_from_coordinates(rot_thetas, nf.s, nf.t, false);
  nf.residual = distance(conjugate_by(nf.conjugator, g), nf.normal_element());
  if (nf.residual > std::max(tol, 1e-9) * n * 10)
    throw EigensolverFailure("normalize: conjugation residual too large");
  return nf;
}

NormalFormC reduce_fixed_support(const NormalFormC& nf, double tol) {
  if (nf.tag.family == Family::Sp)
    throw PreconditionViolated("reduce_fixed_support: complex families only");
  const int n = nf.tag.n;
  const int t = nf.t;
  if (t <= 1) return nf;

  VecC x(nf.v.begin() + (n - t), nf.v.end());
  double norm = vec_norm(x);
  if (norm <= tol) return nf;

  // Orthonormal frame on the fixed block whose first column is x / ||x||;
  // its adjoint sends x to (||x||, 0, ..., 0).
  std::vector<VecC> cols;
  VecC xhat = x;
  for (auto& e : xhat) e /= norm;
  cols.push_back(xhat);
  while (static_cast<int>(cols.size()) < t) {
    VecC best;
    double best_norm = -1.0;
    for (int cand = 0; cand < t; ++cand) {
      VecC r(t, cplx(0.0));
      r[cand] = 1.0;
      for (const auto& y : cols) {
        cplx coef = hermitian_form(y, r);
        for (int i = 0; i < t; ++i) r[i] -= y[i] * coef;
      }
      double nr = vec_norm(r);
      if (nr > best_norm) {
        best_norm = nr;
        best = r;
      }
    }
    for (auto& e : best) e /= best_norm;
    cols.push_back(best);
  }
  MatC wt(t);
  for (int c = 0; c < t; ++c)
    for (int r = 0; r < t; ++r) wt(r, c) = cols[c][r];

  // det-1 correction for SU: rotate the phase of a column other than the
  // first (t >= 2 here), leaving the image of x untouched.
  if (nf.tag.family == Family::SU) {
    cplx d = determinant(wt);
    cplx fix = std::conj(d) / std::abs(d);
    for (int r = 0; r < t; ++r) wt(r, 1) *= fix;
  }

  MatC block = MatC::identity(n);
  MatC ct = adjoint(wt);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) block(n - t + i, n - t + j) = ct(i, j);

  NormalFormC out = nf;
  out.v.assign(n, cplx(0.0));
  out.v[n - t] = norm;
  IsometryC rot(nf.tag, block, VecC(n, cplx(0.0)));
  out.conjugator = compose(rot, nf.conjugator);
  out.residual =
      distance(conjugate_by(out.conjugator, nf.reconstruct_original()),
               out.normal_element());
  return out;
}

}  // namespace isorev
