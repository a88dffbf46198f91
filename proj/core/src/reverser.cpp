#include "isorev/reverser.hpp"

#include <cmath>

namespace isorev {

template <class S>
ReverserWitness verify_witness(const AffineMap<S>& g, const AffineMap<S>& h,
                               double tol) {
  check_same_tag(g, h);
  ReverserWitness w;
  w.residual_conj = distance(conjugate_by(h, g), inverse(g));
  w.residual_inv = involution_defect(h);
  w.is_involution = w.residual_inv <= tol * g.tag.n;
  if constexpr (std::is_same_v<S, cplx>) {
    if (g.tag.family == Family::SU) w.det_ok = det_defect(h.linear) <= kDetTol;
  }
  w.h = h;
  return w;
}

template ReverserWitness verify_witness<cplx>(const IsometryC&,
                                              const IsometryC&, double);
template ReverserWitness verify_witness<Quaternion>(const IsometryH&,
                                                    const IsometryH&, double);

namespace {

// Wraps a block-diagonal reverser acting on the normal form into a witness
// for the original element: h = conj^-1 (B, 0) conj.
template <class S>
ReverserWitness finish(const NormalForm<S>& nf, const SquareMatrix<S>& b,
                       double tol) {
  AffineMap<S> on_model(nf.tag, b, std::vector<S>(nf.tag.n, S(0.0)));
  AffineMap<S> h =
      compose(compose(inverse(nf.conjugator), on_model), nf.conjugator);
  return verify_witness(nf.reconstruct_original(), h, tol);
}

}  // namespace

ReverserWitness build_sp_reverser(const NormalFormH& nf, double tol) {
  const int n = nf.tag.n;
  MatH b(n);
  for (int k = 0; k < n; ++k)
    b(k, k) = k < nf.rot ? Quaternion::unit_j() : Quaternion(-1.0);
  return finish(nf, b, tol);
}

ReverserWitness build_sp_strong(const NormalFormH& nf, double tol) {
  const int n = nf.tag.n;
  for (const auto& cl : nf.spectrum.classes)
    if (cl.theta != 0.0 && cl.theta != M_PI && cl.multiplicity % 2)
      throw CriterionUnsatisfied(
          "build_sp_strong: rotation class with odd multiplicity");
  MatH b(n);
  // Rotation classes are contiguous and even; pair adjacent coordinates.
  for (int k = 0; k < nf.rot; k += 2) {
    b(k, k + 1) = Quaternion::unit_j();
    b(k + 1, k) = -Quaternion::unit_j();
  }
  for (int k = nf.rot; k < nf.rot + nf.s; ++k) b(k, k) = Quaternion(1.0);
  for (int k = nf.rot + nf.s; k < n; ++k) b(k, k) = Quaternion(-1.0);
  return finish(nf, b, tol);
}

ReverserWitness build_u_strong(const NormalFormC& nf, double tol) {
  if (!nf.self_dual)
    throw CriterionUnsatisfied("build_u_strong: spectrum is not self-dual");
  const int n = nf.tag.n;
  MatC b(n);
  for (int k = 0; k < nf.rot; k += 2) {
    b(k, k + 1) = 1.0;
    b(k + 1, k) = 1.0;
  }
  for (int k = nf.rot; k < nf.rot + nf.s; ++k) b(k, k) = 1.0;
  for (int k = nf.rot + nf.s; k < n; ++k) b(k, k) = -1.0;
  return finish(nf, b, tol);
}

namespace {

// Sign-block involution on the reduced SU normal form.  Returns the signs
// for the -1 block and fixed block, or nothing when the determinant cannot
// be steered to 1.
struct SuSigns {
  std::vector<int> delta;  // -1 block
  std::vector<int> eps;    // fixed block
  bool feasible = true;
};

SuSigns su_strong_signs(int pairs, int s, int t, bool pinned) {
  SuSigns out;
  out.delta.assign(s, 1);
  out.eps.assign(t, -1);
  int det = (pairs % 2 ? -1 : 1) * (t % 2 ? -1 : 1);
  if (det == -1) {
    if (s >= 1) {
      out.delta[0] = -1;
    } else if (t >= 2) {
      out.eps[t - 1] = 1;  // reduced translation is zero past the first line
    } else if (t == 1 && !pinned) {
      out.eps[0] = 1;
    } else {
      out.feasible = false;
    }
  }
  return out;
}

}  // namespace

ReverserWitness build_su_strong(const NormalFormC& nf, double tol) {
  if (!nf.self_dual)
    throw CriterionUnsatisfied("build_su_strong: spectrum is not self-dual");
  NormalFormC red = reduce_fixed_support(nf, tol);
  const int n = red.tag.n;
  const bool pinned =
      red.t >= 1 && std::abs(red.v[n - red.t]) > tol;

  SuSigns signs = su_strong_signs(red.pairs, red.s, red.t, pinned);
  if (!signs.feasible)
    throw Infeasible(
        red.t == 0
            ? "build_su_strong: no free sign, determinant forced to -1 "
              "(dimension 2 mod 4)"
            : "build_su_strong: no free sign, determinant forced to -1 "
              "(pinned fixed line)");

  MatC b(n);
  for (int k = 0; k < red.rot; k += 2) {
    b(k, k + 1) = 1.0;
    b(k + 1, k) = 1.0;
  }
  for (int k = 0; k < red.s; ++k)
    b(red.rot + k, red.rot + k) = static_cast<double>(signs.delta[k]);
  for (int k = 0; k < red.t; ++k)
    b(red.rot + red.s + k, red.rot + red.s + k) =
        static_cast<double>(signs.eps[k]);
  return finish(red, b, tol);
}

ReverserWitness build_su_reverser(const NormalFormC& nf, double tol) {
  if (!nf.self_dual)
    throw CriterionUnsatisfied("build_su_reverser: spectrum is not self-dual");
  try {
    return build_su_strong(nf, tol);
  } catch (const Infeasible&) {
    // Determinant forced to -1 for every sign pattern: replace the first
    // swap block by [[0,-1],[1,0]] (det 1, squares to -1).
    if (nf.pairs < 1)
      throw CriterionUnsatisfied(
          "build_su_reverser: no conjugate pair to absorb the determinant");
    const int n = nf.tag.n;
    MatC b(n);
    b(0, 1) = -1.0;
    b(1, 0) = 1.0;
    for (int k = 2; k < nf.rot; k += 2) {
      b(k, k + 1) = 1.0;
      b(k + 1, k) = 1.0;
    }
    for (int k = nf.rot; k < nf.rot + nf.s; ++k) b(k, k) = 1.0;
    for (int k = nf.rot + nf.s; k < n; ++k) b(k, k) = -1.0;
    return finish(nf, b, tol);
  }
}

template <class S>
std::pair<AffineMap<S>, AffineMap<S>> involution_factors(
    const AffineMap<S>& g, const AffineMap<S>& h, double tol) {
  ReverserWitness w = verify_witness(g, h, tol);
  if (w.residual_conj > tol * g.tag.n * 10 || !w.is_involution)
    throw CriterionUnsatisfied(
        "involution_factors: h is not an involutive reverser for g");
  return {h, compose(h, g)};
}

template std::pair<IsometryC, IsometryC> involution_factors<cplx>(
    const IsometryC&, const IsometryC&, double);
template std::pair<IsometryH, IsometryH> involution_factors<Quaternion>(
    const IsometryH&, const IsometryH&, double);

}  // namespace isorev
