#include "isorev/selftest.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <string>

#include "isorev/classify.hpp"
#include "isorev/normal_form.hpp"
#include "isorev/oracle.hpp"

namespace isorev {

namespace {

struct SuiteRunner {
  std::ostream& out;
  SelftestReport report;

  void run(const std::string& name, long checks,
           const std::function<long()>& body) {
    long bad = 0;
    std::string note;
    try {
      bad = body();
    } catch (const Error& e) {
      bad = 1;
      note = std::string("  (") + e.what() + ")";
    }
    ++report.suites;
    if (bad > 0) ++report.failures;
    out << (bad > 0 ? "[FAIL] " : "[ok]   ") << std::left << std::setw(28)
        << name << std::right << std::setw(6) << checks << " checks"
        << (bad > 0 ? "  violations: " + std::to_string(bad) : "") << note
        << "\n";
  }
};

Quaternion random_unit_quaternion(Rng& rng) {
  Quaternion q = rng.qnormal();
  return q * (1.0 / abs(q));
}

GroupTag random_tag(Rng& rng, int n_max, bool affine) {
  const int n = 1 + static_cast<int>(rng.u64() % n_max);
  const int f = static_cast<int>(rng.u64() % 3);
  Family fam = f == 0 ? Family::Sp : (f == 1 ? Family::U : Family::SU);
  return {fam, affine, n};
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& opt, std::ostream& out) {
  SuiteRunner runner{out, {}};
  const int trials = std::max(1, opt.trials);
  const int n_max = std::max(1, opt.n_max);

  runner.run("quaternion-algebra", 6L * trials, [&] {
    Rng rng(opt.seed + 1);
    long bad = 0;
    const Quaternion i = Quaternion::unit_i(), j = Quaternion::unit_j(),
                     k = Quaternion::unit_k();
    if (abs(i * i + Quaternion(1.0)) > 1e-15) ++bad;
    if (abs(j * j + Quaternion(1.0)) > 1e-15) ++bad;
    if (abs(i * j - k) > 1e-15) ++bad;
    for (int t = 0; t < trials; ++t) {
      Quaternion p = rng.qnormal(), q = rng.qnormal(), r = rng.qnormal();
      if (abs((p * q) * r - p * (q * r)) > 1e-12) ++bad;
      if (abs(conj(p * q) - conj(q) * conj(p)) > 1e-13) ++bad;
      cplx z(rng.normal(), rng.normal());
      Quaternion zq(z.real(), z.imag(), 0.0, 0.0);
      if (abs(zq * j - j * Quaternion(z.real(), -z.imag(), 0.0, 0.0)) > 1e-15)
        ++bad;
      Quaternion u = random_unit_quaternion(rng);
      if (abs(u * inverse(u) - Quaternion(1.0)) > 1e-13) ++bad;
      double th = canonical_rep(u);
      Quaternion w = random_unit_quaternion(rng);
      if (std::abs(canonical_rep(w * u * inverse(w)) - th) > 1e-9) ++bad;
      auto [c0, c1] = q_split(p);
      if (abs(Quaternion::from_complex_pair(c0, c1) - p) > 1e-15) ++bad;
    }
    return bad;
  });

  runner.run("complex-embedding", 3L * trials, [&] {
    Rng rng(opt.seed + 2);
    long bad = 0;
    for (int t = 0; t < trials; ++t) {
      const int n = 1 + static_cast<int>(rng.u64() % n_max);
      MatH a = random_sp_unitary(n, rng), b = random_sp_unitary(n, rng);
      if (max_abs(embed_complex(a * b) - embed_complex(a) * embed_complex(b)) >
          1e-12)
        ++bad;
      if (max_abs(embed_complex(adjoint(a)) - adjoint(embed_complex(a))) >
          1e-12)
        ++bad;
      VecH v(n);
      for (auto& e : v) e = rng.qnormal();
      VecC lhs = embed_complex(a) * embed_vector(v);
      VecC rhs = embed_vector(a * v);
      double d = 0;
      for (size_t s = 0; s < lhs.size(); ++s)
        d = std::max(d, std::abs(lhs[s] - rhs[s]));
      if (d > 1e-12) ++bad;
    }
    return bad;
  });

  runner.run("unitary-eigensolver", 2L * trials, [&] {
    Rng rng(opt.seed + 3);
    long bad = 0;
    for (int t = 0; t < trials; ++t) {
      const int n = 1 + static_cast<int>(rng.u64() % n_max);
      MatC a = random_unitary(n, rng);
      UnitaryEigen eg = eig_unitary(a, 1e-9);
      MatC d(n);
      for (int s = 0; s < n; ++s) {
        d(s, s) = eg.eigenvalues[s];
        if (std::abs(std::abs(eg.eigenvalues[s]) - 1.0) > 1e-10) ++bad;
      }
      if (max_abs(a * eg.vectors - eg.vectors * d) > 1e-9 * n) ++bad;
    }
    return bad;
  });

  runner.run("sp-diagonalization", 2L * trials, [&] {
    Rng rng(opt.seed + 4);
    long bad = 0;
    for (int t = 0; t < trials; ++t) {
      const int n = 1 + static_cast<int>(rng.u64() % n_max);
      MatH a = random_sp_unitary(n, rng);
      SpDiagonalization dg = diagonalize_sp(a, 1e-9);
      MatH d(n);
      for (int s = 0; s < n; ++s) {
        double th = dg.thetas[s];
        if (th < 0 || th > M_PI || (s > 0 && th < dg.thetas[s - 1] - 1e-12))
          ++bad;
        d(s, s) = unit_quaternion_angle(th);
      }
      MatH w = adjoint(dg.u);
      if (max_abs(a * w - w * d) > 1e-8 * n) ++bad;
    }
    return bad;
  });

  runner.run("group-operations", 3L * trials, [&] {
    Rng rng(opt.seed + 5);
    long bad = 0;
    for (int t = 0; t < trials; ++t) {
      GroupTag tag = random_tag(rng, n_max, true);
      AnyIsometry g = random_group_element(tag, rng.u64());
      AnyIsometry h = random_group_element(tag, rng.u64());
      std::visit(
          [&](const auto& ge) {
            using T = std::decay_t<decltype(ge)>;
            const auto& he = std::get<T>(h);
            if (!membership_check(compose(ge, he), 1e-9)) ++bad;
            if (distance(compose(ge, inverse(ge)), T::identity(tag)) >
                1e-12 * tag.n)
              ++bad;
            auto k = conjugate_by(he, ge);
            if (!membership_check(k, 1e-9)) ++bad;
          },
          g);
    }
    return bad;
  });

  runner.run("normal-form-round-trip", 1L * trials, [&] {
    Rng rng(opt.seed + 6);
    long bad = 0;
    for (int t = 0; t < trials; ++t) {
      GroupTag tag = random_tag(rng, n_max, (rng.u64() & 1) != 0);
      AnyIsometry g = random_group_element(tag, rng.u64());
      std::visit(
          [&](const auto& ge) {
            auto nf = normalize(ge, 1e-9);
            if (distance(nf.reconstruct_original(), ge) > 1e-8 * tag.n) ++bad;
          },
          g);
    }
    return bad;
  });

  runner.run("verdict-consistency", 1L * trials, [&] {
    Rng rng(opt.seed + 7);
    long bad = 0;
    for (int t = 0; t < trials; ++t) {
      GroupTag tag = random_tag(rng, n_max, (rng.u64() & 1) != 0);
      AnyIsometry g = random_group_element(tag, rng.u64());
      Verdict v = decide(g, {});
      if (v.strongly_reversible && !v.reversible) ++bad;
      if (v.reversible && !v.witness) ++bad;
      if (v.strongly_reversible != v.witness_is_involution()) ++bad;
      if (v.witness) {
        if (v.witness->residual_conj > 1e-8 * tag.n) ++bad;
        if (v.witness->is_involution && v.witness->residual_inv > 1e-8 * tag.n)
          ++bad;
      }
    }
    return bad;
  });

  runner.run("spectral-oracle-agreement", 1L * trials, [&] {
    Rng rng(opt.seed + 8);
    long bad = 0;
    for (int t = 0; t < trials; ++t) {
      GroupTag tag = random_tag(rng, n_max, false);
      AnyIsometry g = random_group_element(tag, rng.u64());
      Verdict v = decide(g, {});
      bool oracle = std::visit(
          [&](const auto& ge) {
            return spectrum_oracle_reversible(ge.linear, tag, 1e-9);
          },
          g);
      if (v.reversible != oracle) ++bad;
    }
    return bad;
  });

  out << "selftest: " << runner.report.suites << " suites, "
      << runner.report.failures << " failures\n";
  return runner.report;
}

}  // namespace isorev
