#pragma once

#include <vector>

#include "isorev/isometry.hpp"
#include "isorev/linalg.hpp"

namespace isorev {

// Conjugated diagonal model of an isometry: a conjugator h inside the same
// group with h g h^-1 = (D, v), where D is diagonal with unit entries in
// normal-form order and v is supported on the fixed block.
//
// Coordinate order of D: rotation coordinates first (quaternionic case:
// similarity classes ascending in (0, pi), each class contiguous; complex
// self-dual case: (theta, -theta) adjacent pairs, classes ascending; complex
// non-self-dual case: classes ascending by signed angle), then the -1 block
// (s coordinates), then the +1 block (t coordinates).  v can be nonzero only
// on the +1 block; on rotation and -1 coordinates the translation is
// eliminated exactly.
template <class S>
struct NormalForm {
  GroupTag tag;
  AffineMap<S> conjugator;
  std::vector<S> diagonal;
  std::vector<S> v;
  Spectrum spectrum;
  int rot = 0;   // rotation coordinates
  int s = 0;     // -1 block size
  int t = 0;     // +1 block size
  bool self_dual = false;  // complex only; quaternionic forms set it true
  int pairs = 0;           // complex self-dual: adjacent (theta,-theta) pairs
  double residual = 0.0;   // max-norm defect of conjugate_by(h, g) vs (D, v)

  AffineMap<S> normal_element() const {
    SquareMatrix<S> d(tag.n);
    for (int i = 0; i < tag.n; ++i) d(i, i) = diagonal[i];
    return AffineMap<S>(tag, d, v);
  }

  AffineMap<S> reconstruct_original() const {
    return conjugate_by(inverse(conjugator), normal_element());
  }

  // Max-norm of the translation restricted to the fixed (+1) block.
  double fixed_translation_norm() const {
    double m = 0.0;
    using std::abs;
    for (int i = tag.n - t; i < tag.n; ++i) m = std::max(m, abs(v[i]));
    return m;
  }
};

using NormalFormC = NormalForm<cplx>;
using NormalFormH = NormalForm<Quaternion>;

// Conjugates g to its diagonal model.  Throws NotInGroup when membership
// fails, IllConditioned when an eigenvalue sits in the gray zone around 1
// (closer than 1e-6 but not snappable to 1), EigensolverFailure when the
// construction cannot certify itself.
NormalFormH normalize(const IsometryH& g, double tol);
NormalFormC normalize(const IsometryC& g, double tol);

// For complex families with t >= 2: rotates the fixed block by a unitary
// (det 1 for SU) so the translation's fixed part becomes (c, 0, ..., 0),
// c = ||v_fixed|| >= 0.  Inputs with t <= 1 or an already-zero fixed part
// are returned unchanged.
NormalFormC reduce_fixed_support(const NormalFormC& nf, double tol);

// Unit scalar with the given angle; exact 1 / -1 at the snapped endpoints.
cplx unit_complex_angle(double theta);
Quaternion unit_quaternion_angle(double theta);

}  // namespace isorev
