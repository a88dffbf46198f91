#pragma once

#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "isorev/errors.hpp"
#include "isorev/linalg.hpp"
#include "isorev/scalar.hpp"

namespace isorev {

// The three Hermitian isometry families: Sp(n) over the quaternions,
// U(n) and SU(n) over the complexes.
enum class Family { Sp, U, SU };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::Sp: return "sp";
    case Family::U: return "u";
    case Family::SU: return "su";
  }
  return "?";
}

// Which group an element lives in: the linear family, whether translations
// are allowed (G = U(n,F) x F^n acting z -> Az + v), and the dimension.
struct GroupTag {
  Family family = Family::U;
  bool affine = false;
  int n = 0;

  friend bool operator==(const GroupTag& a, const GroupTag& b) {
    return a.family == b.family && a.affine == b.affine && a.n == b.n;
  }
  friend bool operator!=(const GroupTag& a, const GroupTag& b) {
    return !(a == b);
  }
};

inline std::string to_string(const GroupTag& t) {
  return to_string(t.family) + "(" + std::to_string(t.n) + ")" +
         (t.affine ? " affine" : " linear");
}

template <class S>
constexpr bool family_matches_scalar(Family f) {
  if constexpr (std::is_same_v<S, Quaternion>)
    return f == Family::Sp;
  else
    return f == Family::U || f == Family::SU;
}

// Isometry z -> A z + v.  For linear tags the translation is kept as an
// all-zero vector so composition code is uniform.
template <class S>
struct AffineMap {
  GroupTag tag;
  SquareMatrix<S> linear;
  std::vector<S> translation;

  AffineMap() = default;
  AffineMap(GroupTag t, SquareMatrix<S> a, std::vector<S> v)
      : tag(t), linear(std::move(a)), translation(std::move(v)) {
    if (!family_matches_scalar<S>(tag.family))
      throw TagMismatch("scalar type does not match family " +
                        to_string(tag.family));
    if (linear.dim() != tag.n ||
        static_cast<int>(translation.size()) != tag.n)
      throw DimensionMismatch("isometry parts do not match tag dimension");
  }

  static AffineMap identity(GroupTag t) {
    return AffineMap(t, SquareMatrix<S>::identity(t.n),
                     std::vector<S>(t.n, S(0.0)));
  }

  std::vector<S> apply(const std::vector<S>& z) const {
    return vec_add(linear * z, translation);
  }
};

using IsometryC = AffineMap<cplx>;
using IsometryH = AffineMap<Quaternion>;
using AnyIsometry = std::variant<IsometryC, IsometryH>;

inline GroupTag tag_of(const AnyIsometry& g) {
  return std::visit([](const auto& e) { return e.tag; }, g);
}

template <class S>
void check_same_tag(const AffineMap<S>& g, const AffineMap<S>& h) {
  if (g.tag != h.tag)
    throw TagMismatch("tags differ: " + to_string(g.tag) + " vs " +
                      to_string(h.tag));
}

// (A, v) o (B, w) = (A B, A w + v).
template <class S>
AffineMap<S> compose(const AffineMap<S>& g, const AffineMap<S>& h) {
  check_same_tag(g, h);
  return AffineMap<S>(g.tag, g.linear * h.linear,
                      vec_add(g.linear * h.translation, g.translation));
}

// (A, v)^-1 = (A^-1, -A^-1 v), with A^-1 = A* for unitary A.
template <class S>
AffineMap<S> inverse(const AffineMap<S>& g) {
  SquareMatrix<S> ainv = adjoint(g.linear);
  return AffineMap<S>(g.tag, ainv, vec_neg(ainv * g.translation));
}

// h g h^-1.
template <class S>
AffineMap<S> conjugate_by(const AffineMap<S>& h, const AffineMap<S>& g) {
  return compose(compose(h, g), inverse(h));
}

// max-norm distance across linear part and translation.
template <class S>
double distance(const AffineMap<S>& g, const AffineMap<S>& h) {
  check_same_tag(g, h);
  return std::max(max_abs(g.linear - h.linear),
                  max_abs(vec_sub(g.translation, h.translation)));
}

template <class S>
double involution_defect(const AffineMap<S>& g) {
  return distance(compose(g, g), AffineMap<S>::identity(g.tag));
}

template <class S>
bool is_involution(const AffineMap<S>& g, double tol) {
  return involution_defect(g) <= tol;
}

// Projection to the linear part; a group homomorphism G -> U(n, F).
template <class S>
AffineMap<S> linear_part(const AffineMap<S>& g) {
  GroupTag t = g.tag;
  t.affine = false;
  return AffineMap<S>(t, g.linear, std::vector<S>(t.n, S(0.0)));
}

// Group membership within tolerance: unitary linear part, zero translation
// for linear tags, unit determinant for SU.  `tol` is the base tolerance;
// matrix-sized checks are scaled by n.
template <class S>
bool membership_check(const AffineMap<S>& g, double tol) {
  const int n = g.tag.n;
  if (g.linear.dim() != n || static_cast<int>(g.translation.size()) != n)
    return false;
  if (!family_matches_scalar<S>(g.tag.family)) return false;
  if (!g.tag.affine && max_abs(g.translation) > tol) return false;
  if (!is_unitary(g.linear, tol * n)) return false;
  if constexpr (std::is_same_v<S, cplx>) {
    if (g.tag.family == Family::SU && det_defect(g.linear) > tol * n)
      return false;
  }
  return true;
}

template <class S>
void require_membership(const AffineMap<S>& g, double tol) {
  if (!membership_check(g, tol))
    throw NotInGroup("element is not in " + to_string(g.tag) +
                     " within tolerance");
}

}  // namespace isorev
