#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "isorev/errors.hpp"

namespace isorev {

using cplx = std::complex<double>;

// Angle comparison tolerance used by the commutation solver and by
// eigenvalue class bookkeeping built on top of it.
inline constexpr double kAngleTol = 1e-9;

// Quaternion q = a0 + a1 i + a2 j + a3 k over the reals, with the standard
// Hamilton relations i^2 = j^2 = k^2 = ijk = -1.  The complex subfield is
// spanned by {1, i}; right multiplication by j conjugates it: z j = j conj(z).
struct Quaternion {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  Quaternion() = default;
  Quaternion(double real) : a0(real) {}  // NOLINT: implicit like std::complex
  Quaternion(double c0, double c1, double c2, double c3)
      : a0(c0), a1(c1), a2(c2), a3(c3) {}

  // q = u + v j with u, v in the complex subfield spanned by {1, i}.
  static Quaternion from_complex_pair(cplx u, cplx v) {
    return Quaternion(u.real(), u.imag(), v.real(), v.imag());
  }
  static Quaternion from_complex(cplx u) { return from_complex_pair(u, 0.0); }

  static Quaternion unit_i() { return Quaternion(0, 1, 0, 0); }
  static Quaternion unit_j() { return Quaternion(0, 0, 1, 0); }
  static Quaternion unit_k() { return Quaternion(0, 0, 0, 1); }

  Quaternion& operator+=(const Quaternion& o) {
    a0 += o.a0; a1 += o.a1; a2 += o.a2; a3 += o.a3;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    a0 -= o.a0; a1 -= o.a1; a2 -= o.a2; a3 -= o.a3;
    return *this;
  }
  Quaternion& operator*=(double s) {
    a0 *= s; a1 *= s; a2 *= s; a3 *= s;
    return *this;
  }
};

inline Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
inline Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
inline Quaternion operator-(const Quaternion& a) {
  return Quaternion(-a.a0, -a.a1, -a.a2, -a.a3);
}

inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return Quaternion(
      a.a0 * b.a0 - a.a1 * b.a1 - a.a2 * b.a2 - a.a3 * b.a3,
      a.a0 * b.a1 + a.a1 * b.a0 + a.a2 * b.a3 - a.a3 * b.a2,
      a.a0 * b.a2 - a.a1 * b.a3 + a.a2 * b.a0 + a.a3 * b.a1,
      a.a0 * b.a3 + a.a1 * b.a2 - a.a2 * b.a1 + a.a3 * b.a0);
}

inline Quaternion operator*(Quaternion a, double s) { return a *= s; }
inline Quaternion operator*(double s, Quaternion a) { return a *= s; }

inline Quaternion conj(const Quaternion& q) {
  return Quaternion(q.a0, -q.a1, -q.a2, -q.a3);
}

inline double abs2(const Quaternion& q) {
  return q.a0 * q.a0 + q.a1 * q.a1 + q.a2 * q.a2 + q.a3 * q.a3;
}
inline double abs2(const cplx& z) { return std::norm(z); }

inline double abs(const Quaternion& q) { return std::sqrt(abs2(q)); }

inline Quaternion inverse(const Quaternion& q) {
  double n2 = abs2(q);
  if (n2 == 0.0) throw Error("quaternion inverse of zero");
  return conj(q) * (1.0 / n2);
}

// Splits q = u + v j into its complex components (u, v).
inline std::pair<cplx, cplx> q_split(const Quaternion& q) {
  return {cplx(q.a0, q.a1), cplx(q.a2, q.a3)};
}

// Real (scalar) part; invariant under similarity q -> m^-1 q m.
inline double real_part(const Quaternion& q) { return q.a0; }
inline double real_part(const cplx& z) { return z.real(); }

// Canonical representative angle of the similarity class of a unit
// quaternion: every unit q is similar to exactly one e^{i theta} with
// theta in [0, pi], and theta = arccos(Re q).
inline double canonical_rep(const Quaternion& q, double tol = kAngleTol) {
  double n = abs(q);
  if (std::abs(n - 1.0) > tol)
    throw NonUnitScalar("canonical_rep requires a unit quaternion, |q| = " +
                        std::to_string(n));
  double c = q.a0 / n;
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return std::acos(c);
}

// Solution set of x e^{i alpha} = e^{i beta} x over the quaternions,
// for alpha in (0, pi) and beta in [-pi, pi].  Writing x = u + v j the
// equation splits into u (e^{i alpha} - e^{i beta}) = 0 and
// v (e^{-i alpha} - e^{i beta}) = 0, so the solution set is one of:
//   {0}                    when beta matches neither alpha nor -alpha,
//   the complex line C     when beta = alpha,
//   the line C j           when beta = -alpha.
enum class CommutationSolutionClass { ZeroOnly, ComplexLine, ComplexJLine };

inline CommutationSolutionClass solve_commutation(double alpha, double beta,
                                                  double tol = kAngleTol) {
  if (!(alpha > tol && alpha < M_PI - tol))
    throw PreconditionViolated("solve_commutation: alpha must lie in (0, pi)");
  if (beta < -M_PI - tol || beta > M_PI + tol)
    throw PreconditionViolated("solve_commutation: beta must lie in [-pi, pi]");
  if (std::abs(beta - alpha) <= tol) return CommutationSolutionClass::ComplexLine;
  if (std::abs(beta + alpha) <= tol) return CommutationSolutionClass::ComplexJLine;
  return CommutationSolutionClass::ZeroOnly;
}

// One similarity class of eigenvalues: the angle of its representative
// e^{i theta} and how many times it repeats in a diagonalization.
struct SimilarityClass {
  double theta = 0.0;
  int multiplicity = 0;
};

}  // namespace isorev
