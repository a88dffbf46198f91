#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "isorev/errors.hpp"
#include "isorev/scalar.hpp"

namespace isorev {

// Gap threshold for merging eigenvalue angles into one similarity class.
inline constexpr double kClusterGap = 1e-8;
// |lambda -/+ 1| below this counts as eigenvalue +1 / -1.
inline constexpr double kFixedEigTol = 1e-8;
// Angles closer to 1 than this but not snappable are rejected as unstable.
inline constexpr double kIllConditionedGap = 1e-6;

// Dense square matrix over S (std::complex<double> or Quaternion),
// row-major.  Scalars multiply on the side written; quaternion entries do
// not commute, so generic code below is careful about factor order.
template <class S>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n) : n_(n), e_(static_cast<size_t>(n) * n) {}

  static SquareMatrix identity(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1.0);
    return m;
  }

  int dim() const { return n_; }

  S& operator()(int r, int c) { return e_[static_cast<size_t>(r) * n_ + c]; }
  const S& operator()(int r, int c) const {
    return e_[static_cast<size_t>(r) * n_ + c];
  }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    check_same_dim(o);
    for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    check_same_dim(o);
    for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) {
    return a += b;
  }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) {
    return a -= b;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    a.check_same_dim(b);
    const int n = a.n_;
    SquareMatrix c(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const S aik = a(i, k);
        for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::vector<S> operator*(const SquareMatrix& a,
                                  const std::vector<S>& x) {
    if (static_cast<int>(x.size()) != a.n_)
      throw DimensionMismatch("matrix-vector dimension mismatch");
    std::vector<S> y(a.n_, S(0.0));
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j < a.n_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

 private:
  void check_same_dim(const SquareMatrix& o) const {
    if (n_ != o.n_)
      throw DimensionMismatch("matrix dimension mismatch: " +
                              std::to_string(n_) + " vs " +
                              std::to_string(o.n_));
  }

  int n_ = 0;
  std::vector<S> e_;
};

using MatC = SquareMatrix<cplx>;
using MatH = SquareMatrix<Quaternion>;
using VecC = std::vector<cplx>;
using VecH = std::vector<Quaternion>;

// Conjugate transpose.  For quaternion matrices this is the entrywise
// quaternionic conjugate of the transpose.
template <class S>
SquareMatrix<S> adjoint(const SquareMatrix<S>& m) {
  using std::conj;
  const int n = m.dim();
  SquareMatrix<S> a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = conj(m(j, i));
  return a;
}

template <class S>
double max_abs(const SquareMatrix<S>& m) {
  using std::abs;
  double v = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) v = std::max(v, abs(m(i, j)));
  return v;
}

template <class S>
double max_abs(const std::vector<S>& x) {
  using std::abs;
  double v = 0.0;
  for (const auto& e : x) v = std::max(v, abs(e));
  return v;
}

template <class S>
std::vector<S> vec_add(std::vector<S> a, const std::vector<S>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector size mismatch");
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class S>
std::vector<S> vec_sub(std::vector<S> a, const std::vector<S>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector size mismatch");
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class S>
std::vector<S> vec_neg(std::vector<S> a) {
  for (auto& e : a) e = -e;
  return a;
}

// Standard Hermitian pairing sum_s conj(z_s) w_s, conjugate-linear in the
// first slot.  Over the quaternions it is right-linear in the second slot
// and satisfies conj(form(z, w)) = form(w, z).
template <class S>
S hermitian_form(const std::vector<S>& z, const std::vector<S>& w) {
  using std::conj;
  if (z.size() != w.size())
    throw DimensionMismatch("hermitian_form: vector size mismatch");
  S acc(0.0);
  for (size_t s = 0; s < z.size(); ++s) acc += conj(z[s]) * w[s];
  return acc;
}

template <class S>
double vec_norm(const std::vector<S>& z) {
  double acc = 0.0;
  for (const auto& e : z) acc += abs2(e);
  return std::sqrt(acc);
}

// Distance induced by the Hermitian form.
template <class S>
double hermitian_distance(const std::vector<S>& z, const std::vector<S>& w) {
  return vec_norm(vec_sub(z, w));
}

// max |(M* M - I)_{st}| <= tol.
template <class S>
bool is_unitary(const SquareMatrix<S>& m, double tol) {
  return max_abs(adjoint(m) * m - SquareMatrix<S>::identity(m.dim())) <= tol;
}

// Complex adjoint embedding of a quaternionic matrix M = U + V j:
//   embed(M) = [ U      V    ]
//              [ -conj(V) conj(U) ]
// It is a *-algebra homomorphism: multiplicative and compatible with the
// conjugate transpose, and embeds Sp(n) into U(2n).
MatC embed_complex(const MatH& m);

// Vector-side companion of embed_complex: z = u + v j maps to [u; -conj(v)],
// so that embed_complex(M) * embed_vector(z) = embed_vector(M z).
VecC embed_vector(const VecH& z);

// Eigendecomposition of a unitary complex matrix with orthonormal
// eigenvectors (columns) and unit-modulus eigenvalues.
struct UnitaryEigen {
  VecC eigenvalues;
  MatC vectors;
};

UnitaryEigen eig_unitary(const MatC& m, double tol);

// Diagonalization of A in Sp(n): returns unitary U (quaternionic) and the
// class angles so that U A U^-1 = diag(e^{i theta_1}, ..., e^{i theta_n}),
// thetas ascending in [0, pi].
struct SpDiagonalization {
  MatH u;
  std::vector<double> thetas;
};

SpDiagonalization diagonalize_sp(const MatH& a, double tol);

// Clustered eigenvalue structure of a unitary matrix.  For quaternionic
// input the angles are similarity-class representatives in [0, pi]; for
// complex input they are signed angles in (-pi, pi].  r/s/t count the
// coordinates in rotation classes, the -1 class and the +1 class.
struct Spectrum {
  std::vector<SimilarityClass> classes;  // ascending angle, multiplicities sum to n
  bool has_plus_one = false;
  bool has_minus_one = false;
  int r = 0;
  int s = 0;
  int t = 0;

  int dim() const { return r + s + t; }
};

Spectrum eigenclasses(const MatC& m, double tol);
Spectrum eigenclasses(const MatH& m, double tol);

// Raw clustering of a unit-modulus eigenvalue list: which positions carry
// +1 / -1 (within kFixedEigTol), and the remaining rotation eigenvalues
// grouped into classes by signed angle (ascending, gap kClusterGap).
struct EigenBuckets {
  struct Cluster {
    double angle = 0.0;      // mean signed angle of the class
    std::vector<int> cols;   // positions in the input list
  };
  std::vector<int> plus_cols;
  std::vector<int> minus_cols;
  std::vector<Cluster> rotation;
};

EigenBuckets bucket_unitary_eigenvalues(const VecC& lambda);

// True when the eigenvalue multiset is closed under conjugation: every
// class at angle theta not in {0, pi} has a partner at -theta with the
// same multiplicity.
bool spectrum_self_dual(const MatC& m, double tol);
bool spectrum_self_dual(const Spectrum& sp);

// |det(M) - 1|, complex matrices only.
double det_defect(const MatC& m);
cplx determinant(const MatC& m);

}  // namespace isorev
