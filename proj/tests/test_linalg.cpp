#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "isorev/linalg.hpp"
#include "isorev/normal_form.hpp"
#include "isorev/oracle.hpp"

using namespace isorev;

TEST_CASE("adjoint conjugate-transposes both scalar kinds") {
  MatC a(1);
  a(0, 0) = cplx(0.0, 1.0);
  CHECK(adjoint(a)(0, 0) == cplx(0.0, -1.0));

  MatH b(1);
  b(0, 0) = Quaternion::unit_j();
  CHECK(abs(adjoint(b)(0, 0) + Quaternion::unit_j()) == 0.0);

  MatC k(2);
  k(0, 1) = 1.0;
  k(1, 0) = 1.0;
  CHECK(max_abs(adjoint(k) - k) == 0.0);

  Rng rng(501);
  MatC m = random_unitary(3, rng);
  CHECK(max_abs(adjoint(adjoint(m)) - m) == 0.0);
}

TEST_CASE("unitarity checks") {
  CHECK(is_unitary(MatC::identity(3), 1e-12));
  MatC k(2);
  k(0, 1) = 1.0;
  k(1, 0) = 1.0;
  CHECK(is_unitary(k, 1e-12));
  MatC d(1);
  d(0, 0) = 2.0;
  CHECK_FALSE(is_unitary(d, 1e-9));
}

TEST_CASE("hermitian form is conjugate-linear in the first slot") {
  VecC e1{cplx(1.0), cplx(0.0)}, e2{cplx(0.0), cplx(1.0)};
  CHECK(hermitian_form(e1, e1) == cplx(1.0));
  CHECK(hermitian_form(e1, e2) == cplx(0.0));

  // Quaternion case against the direct product oracle conj(j) * k.
  VecH z{Quaternion::unit_j()}, w{Quaternion::unit_k()};
  Quaternion oracle = conj(Quaternion::unit_j()) * Quaternion::unit_k();
  CHECK(abs(hermitian_form(z, w) - oracle) == 0.0);
  CHECK(abs(oracle + Quaternion::unit_i()) == 0.0);

  CHECK_THROWS_AS(hermitian_form(VecC{cplx(1.0)}, VecC{cplx(1.0), cplx(0.0)}),
                  DimensionMismatch);
}

TEST_CASE("complex embedding fixed points") {
  MatH one(1);
  one(0, 0) = Quaternion(1.0);
  CHECK(max_abs(embed_complex(one) - MatC::identity(2)) == 0.0);

  MatH jm(1);
  jm(0, 0) = Quaternion::unit_j();
  MatC ej = embed_complex(jm);
  CHECK(ej(0, 0) == cplx(0.0));
  CHECK(ej(0, 1) == cplx(1.0));
  CHECK(ej(1, 0) == cplx(-1.0));
  CHECK(ej(1, 1) == cplx(0.0));
  MatH minus(1);
  minus(0, 0) = Quaternion(-1.0);
  CHECK(max_abs(ej * ej - embed_complex(minus)) == 0.0);

  MatH im(1), km(1);
  im(0, 0) = Quaternion::unit_i();
  km(0, 0) = Quaternion::unit_k();
  MatC ei = embed_complex(im);
  CHECK(ei(0, 0) == cplx(0.0, 1.0));
  CHECK(ei(1, 1) == cplx(0.0, -1.0));
  CHECK(ei(0, 1) == cplx(0.0));
  CHECK(max_abs(ei * ej - embed_complex(km)) == 0.0);
}

TEST_CASE("complex embedding is a star-algebra homomorphism") {
  Rng rng(502);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng.u64() % 5);
    MatH a = random_sp_unitary(n, rng), b = random_sp_unitary(n, rng);
    CHECK(max_abs(embed_complex(a * b) - embed_complex(a) * embed_complex(b)) <=
          1e-11);
    CHECK(max_abs(embed_complex(adjoint(a)) - adjoint(embed_complex(a))) ==
          0.0);
    VecH v(n);
    for (auto& e : v) e = rng.qnormal();
    VecC lhs = embed_complex(a) * embed_vector(v);
    VecC rhs = embed_vector(a * v);
    double d = 0.0;
    for (size_t s = 0; s < lhs.size(); ++s)
      d = std::max(d, std::abs(lhs[s] - rhs[s]));
    CHECK(d <= 1e-12);
  }
}

TEST_CASE("unitary eigensolver on explicit matrices") {
  MatC k(2);
  k(0, 1) = 1.0;
  k(1, 0) = 1.0;
  UnitaryEigen eg = eig_unitary(k, 1e-9);
  // reflection spectrum {1, -1}, ascending signed angle puts +1 first
  CHECK(std::abs(eg.eigenvalues[0] - cplx(1.0)) <= 1e-12);
  CHECK(std::abs(eg.eigenvalues[1] + cplx(1.0)) <= 1e-12);
  for (int c = 0; c < 2; ++c)
    for (int r = 0; r < 2; ++r)
      CHECK(std::abs(std::abs(eg.vectors(r, c)) - 1.0 / std::sqrt(2.0)) <=
            1e-12);

  UnitaryEigen id = eig_unitary(MatC::identity(3), 1e-9);
  for (const auto& l : id.eigenvalues) CHECK(std::abs(l - cplx(1.0)) <= 1e-12);

  MatC d(2);
  d(0, 0) = std::polar(1.0, M_PI / 3);
  d(1, 1) = std::polar(1.0, -M_PI / 3);
  UnitaryEigen dg = eig_unitary(d, 1e-9);
  CHECK(std::abs(dg.eigenvalues[0] - d(1, 1)) <= 1e-12);
  CHECK(std::abs(dg.eigenvalues[1] - d(0, 0)) <= 1e-12);

  CHECK_THROWS_AS(eig_unitary([] {
                    MatC m(1);
                    m(0, 0) = 2.0;
                    return m;
                  }(),
                    1e-9),
                  NotUnitary);
}

TEST_CASE("unitary eigensolver reconstructs random inputs") {
  Rng rng(503);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng.u64() % 6);
    MatC m = random_unitary(n, rng);
    UnitaryEigen eg = eig_unitary(m, 1e-9);
    MatC d(n);
    for (int s = 0; s < n; ++s) d(s, s) = eg.eigenvalues[s];
    CHECK(max_abs(eg.vectors * d * adjoint(eg.vectors) - m) <= 1e-8 * n);
    CHECK(is_unitary(eg.vectors, 1e-9 * n));
  }
}

TEST_CASE("sp diagonalization on explicit matrices") {
  MatH di(1);
  di(0, 0) = Quaternion::unit_i();
  SpDiagonalization a = diagonalize_sp(di, 1e-9);
  REQUIRE(a.thetas.size() == 1);
  CHECK(a.thetas[0] == doctest::Approx(M_PI / 2).epsilon(1e-12));

  MatH dj(1);
  dj(0, 0) = Quaternion::unit_j();
  SpDiagonalization b = diagonalize_sp(dj, 1e-9);
  CHECK(b.thetas[0] == doctest::Approx(M_PI / 2).epsilon(1e-12));
  // u j u^-1 = i for the returned frame
  Quaternion u = b.u(0, 0);
  CHECK(abs(u * Quaternion::unit_j() * inverse(u) - Quaternion::unit_i()) <=
        1e-9);

  MatH l(2);
  l(0, 1) = Quaternion::unit_j();
  l(1, 0) = Quaternion(0.0, 0.0, -1.0, 0.0);
  SpDiagonalization c = diagonalize_sp(l, 1e-9);
  REQUIRE(c.thetas.size() == 2);
  CHECK(c.thetas[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c.thetas[1] == doctest::Approx(M_PI).epsilon(1e-12));
}

TEST_CASE("sp diagonalization certifies random inputs") {
  Rng rng(504);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + static_cast<int>(rng.u64() % 6);
    MatH a = random_sp_unitary(n, rng);
    SpDiagonalization dg = diagonalize_sp(a, 1e-9);
    CHECK(is_unitary(dg.u, 1e-9 * n));
    MatH d(n);
    for (int s = 0; s < n; ++s) {
      CHECK(dg.thetas[s] >= 0.0);
      CHECK(dg.thetas[s] <= M_PI);
      if (s > 0) CHECK(dg.thetas[s] >= dg.thetas[s - 1] - 1e-12);
      d(s, s) = unit_quaternion_angle(dg.thetas[s]);
    }
    MatH w = adjoint(dg.u);
    CHECK(max_abs(a * w - w * d) <= 1e-8 * n);
  }
}

TEST_CASE("embedded spectrum folds to the quaternionic classes") {
  Rng rng(505);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + static_cast<int>(rng.u64() % 6);
    MatH a = random_sp_unitary(n, rng);
    UnitaryEigen eg = eig_unitary(embed_complex(a), 1e-9);
    // conjugate-pair symmetry of the embedded eigenvalues
    std::vector<double> up, down;
    for (const auto& l : eg.eigenvalues) {
      double ang = std::arg(l);
      if (ang >= 0)
        up.push_back(ang);
      else
        down.push_back(-ang);
    }
    REQUIRE(up.size() == down.size());
    std::sort(up.begin(), up.end());
    std::sort(down.begin(), down.end());
    for (size_t s = 0; s < up.size(); ++s)
      CHECK(std::abs(up[s] - down[s]) <= 1e-8);

    SpDiagonalization dg = diagonalize_sp(a, 1e-9);
    std::vector<double> folded = dg.thetas;
    std::sort(folded.begin(), folded.end());
    for (size_t s = 0; s < folded.size(); ++s)
      CHECK(std::abs(folded[s] - up[s]) <= 1e-8);
  }
}

TEST_CASE("eigenvalue classes over both scalar kinds") {
  MatH a(3);
  a(0, 0) = Quaternion::unit_i();
  a(1, 1) = Quaternion::unit_i();
  a(2, 2) = Quaternion(-1.0);
  Spectrum sa = eigenclasses(a, 1e-9);
  REQUIRE(sa.classes.size() == 2);
  CHECK(sa.classes[0].theta == doctest::Approx(M_PI / 2).epsilon(1e-12));
  CHECK(sa.classes[0].multiplicity == 2);
  CHECK(sa.classes[1].theta == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(sa.classes[1].multiplicity == 1);
  CHECK(sa.r == 2);
  CHECK(sa.s == 1);
  CHECK(sa.t == 0);
  CHECK(sa.has_minus_one);
  CHECK_FALSE(sa.has_plus_one);

  MatH b(2);
  b(0, 0) = Quaternion::unit_j();
  b(1, 1) = Quaternion::unit_k();
  Spectrum sb = eigenclasses(b, 1e-9);
  REQUIRE(sb.classes.size() == 1);
  CHECK(sb.classes[0].theta == doctest::Approx(M_PI / 2).epsilon(1e-10));
  CHECK(sb.classes[0].multiplicity == 2);

  MatC c(2);
  c(0, 0) = std::polar(1.0, M_PI / 3);
  c(1, 1) = std::polar(1.0, -M_PI / 3);
  Spectrum sc = eigenclasses(c, 1e-9);
  REQUIRE(sc.classes.size() == 2);
  CHECK(sc.classes[0].theta == doctest::Approx(-M_PI / 3).epsilon(1e-12));
  CHECK(sc.classes[1].theta == doctest::Approx(M_PI / 3).epsilon(1e-12));
  CHECK(sc.r == 2);
}

TEST_CASE("self-duality of complex spectra") {
  MatC pair(2);
  pair(0, 0) = std::polar(1.0, M_PI / 3);
  pair(1, 1) = std::polar(1.0, -M_PI / 3);
  CHECK(spectrum_self_dual(pair, 1e-9));

  MatC twin(2);
  twin(0, 0) = std::polar(1.0, M_PI / 3);
  twin(1, 1) = std::polar(1.0, M_PI / 3);
  CHECK_FALSE(spectrum_self_dual(twin, 1e-9));

  MatC fixed(3);
  fixed(0, 0) = -1.0;
  fixed(1, 1) = -1.0;
  fixed(2, 2) = 1.0;
  CHECK(spectrum_self_dual(fixed, 1e-9));
}

TEST_CASE("self-duality is invariant under inverse and conjugation") {
  Rng rng(506);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + static_cast<int>(rng.u64() % 5);
    MatC a = random_unitary(n, rng);
    MatC u = random_unitary(n, rng);
    bool sd = spectrum_self_dual(a, 1e-9);
    CHECK(spectrum_self_dual(adjoint(a), 1e-9) == sd);
    CHECK(spectrum_self_dual(u * a * adjoint(u), 1e-9) == sd);
  }
}
