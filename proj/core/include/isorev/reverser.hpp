#pragma once

#include <optional>
#include <utility>

#include "isorev/normal_form.hpp"

namespace isorev {

// |det(B) - 1| bound for witnesses claimed to live in SU.
inline constexpr double kDetTol = 1e-9;

// A conjugating element h with h g h^-1 = g^-1, together with the measured
// defects.  `is_involution` reports residual_inv <= tol * n at build time;
// `det_ok` is |det - 1| <= kDetTol for SU witnesses and true elsewhere.
struct ReverserWitness {
  AnyIsometry h;
  bool is_involution = false;
  double residual_conj = 0.0;  // max-norm of h g h^-1 vs g^-1
  double residual_inv = 0.0;   // max-norm of h^2 vs identity
  bool det_ok = true;
};

// Measures h as a reversing conjugator for g.
template <class S>
ReverserWitness verify_witness(const AffineMap<S>& g, const AffineMap<S>& h,
                               double tol);

// Sp(n) x H^n: B = diag(j, ..., j, -1, ..., -1) on the normal form
// (j on rotation coordinates, -1 on the +-1 blocks), pulled back through
// the conjugator.  Always succeeds.
ReverserWitness build_sp_reverser(const NormalFormH& nf, double tol);

// Sp involution witness: one [[0, j], [-j, 0]] block per coordinate pair
// inside each rotation class (requires even class multiplicities), identity
// on the -1 block, -identity on the fixed block.  Throws
// CriterionUnsatisfied when a rotation class has odd multiplicity.
ReverserWitness build_sp_strong(const NormalFormH& nf, double tol);

// U(n) x C^n involution witness: [[0,1],[1,0]] swap blocks on conjugate
// pairs, identity on the -1 block, -identity on the fixed block.  Requires
// a self-dual spectrum.
ReverserWitness build_u_strong(const NormalFormC& nf, double tol);

// SU witnesses: same block shapes with the determinant steered to 1 by
// sign choices.  build_su_strong throws Infeasible exactly when no
// involutive choice exists (the mod-4 linear obstruction or the pinned
// fixed-line family); build_su_reverser then falls back to replacing one
// swap block by the rotation [[0,-1],[1,0]], which has det 1 but squares
// to -1, so that witness is not an involution.
ReverserWitness build_su_strong(const NormalFormC& nf, double tol);
ReverserWitness build_su_reverser(const NormalFormC& nf, double tol);

// Factorization g = (h) o (h g) into two involutions, valid whenever h is
// an involutive reverser for g.  Throws CriterionUnsatisfied otherwise.
template <class S>
std::pair<AffineMap<S>, AffineMap<S>> involution_factors(
    const AffineMap<S>& g, const AffineMap<S>& h, double tol);

}  // namespace isorev
