// Acceptance gate for the library: one line per criterion, nonzero exit on
// any failure.  Tolerances are pinned here on purpose; loosening them is a
// behavior change, not a test fix.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "isorev/classify.hpp"

using namespace isorev;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Strongly reversible instances collected across the suites, consumed by
// the factorization criterion at the end.
std::vector<std::pair<AnyIsometry, AnyIsometry>> g_strong;

void collect_strong(const AnyIsometry& g, const Verdict& v) {
  if (v.strongly_reversible && v.witness)
    g_strong.emplace_back(g, v.witness->h);
}

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void require(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

std::string fmt(const char* pattern, ...) {
  char buf[256];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

double fresh_theta(std::vector<double>& used, Rng& rng, double lo = 0.25,
                   double span = 2.6) {
  for (;;) {
    double th = lo + span * rng.uniform();
    bool clear = true;
    for (double u : used) clear = clear && std::abs(u - th) > 0.08;
    if (clear) {
      used.push_back(th);
      return th;
    }
  }
}

// ---------------------------------------------------------------- 1 ----

Check criterion_1() {
  Check c;
  const double th = M_PI / 3, ph = M_PI / 5;
  MatC d(5);
  d(0, 0) = std::polar(1.0, th);
  d(1, 1) = std::polar(1.0, -th);
  d(2, 2) = std::polar(1.0, ph);
  d(3, 3) = std::polar(1.0, -ph);
  d(4, 4) = cplx(1.0);
  VecC v(5, cplx(0.0));
  v[4] = cplx(1.0);
  IsometryC g(GroupTag{Family::SU, true, 5}, d, v);

  auto t0 = Clock::now();
  Verdict verdict = decide(AnyIsometry(g));
  double dt = seconds_since(t0);

  c.require(verdict.reversible, "expected reversible");
  c.require(!verdict.strongly_reversible, "expected not strongly reversible");
  c.require(verdict.obstruction.has_value(), "expected a certificate");
  if (verdict.obstruction) {
    c.require(verdict.obstruction->forced_det == -1, "certificate must force -1");
    c.require(verdict.obstruction->replay() == -1, "certificate replay broke");
  }
  c.require(verdict.witness.has_value(), "expected a reverser witness");
  if (verdict.witness) {
    c.require(!verdict.witness->is_involution, "witness must not be an involution");
    c.require(verdict.witness->residual_conj <= 1e-8,
              fmt("witness residual %.2e above 1e-8", verdict.witness->residual_conj));
  }
  c.require(dt < 1.0, fmt("took %.2f s, budget 1 s", dt));
  if (c.ok)
    c.detail = fmt("reason=%s, residual %.1e, %.0f ms", to_string(verdict.reason),
                   verdict.witness->residual_conj, dt * 1e3);
  return c;
}

// ---------------------------------------------------------------- 2 ----

Check criterion_2() {
  Check c;
  Rng rng(20240802);
  auto t0 = Clock::now();
  double worst = 0.0;
  int total = 0;
  for (int n = 1; n <= 5 && c.ok; ++n) {
    GroupTag tag{Family::Sp, true, n};
    for (int rep = 0; rep < 200 && c.ok; ++rep, ++total) {
      AnyIsometry g = random_group_element(tag, rng.u64());
      Verdict v = decide(g);
      c.require(v.reversible, fmt("n=%d rep=%d not reversible", n, rep));
      c.require(v.witness.has_value(), "missing witness");
      if (!c.ok) break;
      const IsometryH& e = std::get<IsometryH>(g);
      const IsometryH& h = std::get<IsometryH>(v.witness->h);
      ReverserWitness again = verify_witness(e, h, 1e-9);
      c.require(again.residual_conj <= 1e-8 * n,
                fmt("n=%d re-verified residual %.2e", n, again.residual_conj));
      c.require(membership_check(h, 1e-8), "witness left the group");
      worst = std::max(worst, again.residual_conj);
      collect_strong(g, v);
    }
  }
  double dt = seconds_since(t0);
  c.require(dt < 30.0, fmt("took %.1f s, budget 30 s", dt));
  if (c.ok)
    c.detail = fmt("%d/1000 reversible, worst residual %.1e, %.1f s", total,
                   worst, dt);
  return c;
}

// ---------------------------------------------------------------- 3 ----

Spectrum parity_spectrum(int n, bool satisfying, Rng& rng) {
  Spectrum sp;
  std::vector<double> used;
  int rem = n;
  if (!satisfying) {
    sp.classes.push_back({fresh_theta(used, rng), 1});
    --rem;
  }
  while (rem >= 2 && (rem > 3 || rng.uniform() < 0.7)) {
    sp.classes.push_back({fresh_theta(used, rng), 2});
    rem -= 2;
  }
  while (rem > 0) {
    sp.classes.push_back({rng.uniform() < 0.5 ? 0.0 : M_PI, 1});
    --rem;
  }
  for (const auto& cl : sp.classes) {
    if (cl.theta == 0.0) {
      sp.t += cl.multiplicity;
      sp.has_plus_one = true;
    } else if (cl.theta == M_PI) {
      sp.s += cl.multiplicity;
      sp.has_minus_one = true;
    } else {
      sp.r += cl.multiplicity;
    }
  }
  return sp;
}

Check criterion_3() {
  Check c;
  Rng rng(20240803);
  long searched = 0;
  double worst_inv = 0.0;
  for (int n = 1; n <= 5 && c.ok; ++n) {
    GroupTag tag{Family::Sp, false, n};
    for (int rep = 0; rep < 100 && c.ok; ++rep) {
      const bool satisfying = rep % 2 == 0;
      Spectrum sp = parity_spectrum(n, satisfying, rng);
      AnyIsometry g = random_group_element(tag, rng.u64(), sp);
      Verdict v = decide(g);
      c.require(v.strongly_reversible == satisfying,
                fmt("n=%d rep=%d verdict %d, parity %d", n, rep,
                    int(v.strongly_reversible), int(satisfying)));
      if (!c.ok) break;
      if (satisfying) {
        c.require(v.witness_is_involution(), "missing involution witness");
        c.require(v.witness->residual_inv <= 1e-9 * n,
                  fmt("involution residual %.2e", v.witness->residual_inv));
        worst_inv = std::max(worst_inv, v.witness->residual_inv);
        collect_strong(g, v);
      } else {
        NormalFormH nf = normalize(std::get<IsometryH>(g), 1e-9);
        MatH d(n);
        for (int k = 0; k < n; ++k) d(k, k) = nf.diagonal[k];
        ReverserConstraints cons;
        cons.involution = true;
        SearchOutcome out =
            brute_reverser_search(d, nf.v, tag, cons, 10000, rng.u64());
        c.require(!out.found, fmt("n=%d rep=%d search found an involution "
                                  "despite odd parity", n, rep));
        c.require(out.trials_used >= 10000, "search stopped early");
        searched += out.trials_used;
      }
    }
  }
  if (c.ok)
    c.detail = fmt("500 planted spectra, worst involution residual %.1e, "
                   "%ld negative trials", worst_inv, searched);
  return c;
}

// ---------------------------------------------------------------- 4 ----

Spectrum self_dual_spectrum(int n, Rng& rng, bool allow_minus_single) {
  Spectrum sp;
  std::vector<double> used;
  int rem = n;
  while (rem >= 2 && (rem > 2 || rng.uniform() < 0.7)) {
    int m = 1 + static_cast<int>(rng.u64() % 2);
    m = std::min(m, rem / 2);
    double th = fresh_theta(used, rng);
    sp.classes.push_back({th, m});
    sp.classes.push_back({-th, m});
    rem -= 2 * m;
  }
  while (rem > 0) {
    if (allow_minus_single && rng.uniform() < 0.3) {
      sp.classes.push_back({M_PI, 1});
    } else if (rem >= 2 && rng.uniform() < 0.3) {
      sp.classes.push_back({M_PI, 2});
      --rem;
    } else {
      sp.classes.push_back({0.0, 1});
    }
    --rem;
  }
  for (const auto& cl : sp.classes) {
    if (cl.theta == 0.0) {
      sp.t += cl.multiplicity;
      sp.has_plus_one = true;
    } else if (cl.theta == M_PI) {
      sp.s += cl.multiplicity;
      sp.has_minus_one = true;
    } else {
      sp.r += cl.multiplicity;
    }
  }
  return sp;
}

Check criterion_4() {
  Check c;
  Rng rng(20240804);
  int self_dual_count = 0;
  for (int rep = 0; rep < 500 && c.ok; ++rep) {
    const int n = 1 + static_cast<int>(rng.u64() % 5);
    GroupTag tag{Family::U, true, n};
    AnyIsometry g =
        rep % 2 == 0
            ? random_group_element(tag, rng.u64(),
                                   self_dual_spectrum(n, rng, true))
            : random_group_element(tag, rng.u64());
    const IsometryC& e = std::get<IsometryC>(g);
    const bool sd = spectrum_self_dual(e.linear, 1e-9);
    Verdict v = decide(g);
    c.require(v.reversible == sd,
              fmt("rep=%d reversible=%d, self-dual=%d", rep, int(v.reversible),
                  int(sd)));
    c.require(v.strongly_reversible == sd, "the two flags must coincide");
    if (sd && c.ok) {
      ++self_dual_count;
      c.require(v.witness_is_involution(), "self-dual case without involution");
      c.require(v.witness->residual_inv <= 1e-8 * n,
                fmt("involution residual %.2e", v.witness->residual_inv));
      collect_strong(g, v);
    }
  }
  if (c.ok)
    c.detail = fmt("500 elements, %d self-dual, flags matched the spectrum "
                   "oracle throughout", self_dual_count);
  return c;
}

// ---------------------------------------------------------------- 5 ----

VecC paired_diagonal(int m, Rng& rng) {
  // random multiplicity split of m conjugate pairs, no +-1 eigenvalues
  std::vector<double> used;
  VecC d;
  int rem = m;
  while (rem > 0) {
    int k = 1 + static_cast<int>(rng.u64() % rem);
    double th = fresh_theta(used, rng);
    for (int i = 0; i < k; ++i) {
      d.push_back(std::polar(1.0, th));
      d.push_back(std::polar(1.0, -th));
    }
    rem -= k;
  }
  return d;
}

Check criterion_5() {
  Check c;
  Rng rng(20240805);
  int found = 0;
  for (int m = 1; m <= 3 && c.ok; ++m) {
    const int n = 2 * m;
    const double target = m % 2 ? -1.0 : 1.0;
    GroupTag tag{Family::SU, false, n};
    for (int rep = 0; rep < 100 && c.ok; ++rep) {
      VecC d = paired_diagonal(m, rng);
      MatC dm(n);
      for (int k = 0; k < n; ++k) dm(k, k) = d[k];
      for (int attempt = 0; attempt < 3 && c.ok; ++attempt) {
        ReverserConstraints cons;
        cons.involution = true;
        SearchOutcome out = brute_reverser_search(dm, VecC(n, cplx(0.0)), tag,
                                                  cons, 500, rng.u64());
        c.require(out.found, fmt("m=%d rep=%d no involutive reverser", m, rep));
        if (!c.ok) break;
        const MatC& b = std::get<IsometryC>(out.witness->h).linear;
        cplx det = determinant(b);
        c.require(std::abs(det - cplx(target)) <= 1e-9,
                  fmt("m=%d det %.3f%+.3fi, expected %+.0f", m, det.real(),
                      det.imag(), target));
        ++found;
      }
    }
  }
  if (c.ok)
    c.detail = fmt("%d involutive reversers, all with det = (-1)^m", found);
  return c;
}

// ---------------------------------------------------------------- 6 ----

// Class list of a diagonal built from adjacent conjugate pairs.
Spectrum spectrum_of_pairs(const VecC& d) {
  Spectrum sp;
  sp.r = static_cast<int>(d.size());
  for (size_t k = 0; k < d.size(); k += 2) {
    const double th = std::arg(d[k]);
    bool seen = false;
    for (size_t i = 0; i + 1 < sp.classes.size(); i += 2)
      if (std::abs(sp.classes[i].theta - th) < 1e-12) {
        ++sp.classes[i].multiplicity;
        ++sp.classes[i + 1].multiplicity;
        seen = true;
      }
    if (!seen) {
      sp.classes.push_back({th, 1});
      sp.classes.push_back({-th, 1});
    }
  }
  return sp;
}

Check criterion_6() {
  Check c;
  Rng rng(20240806);
  for (int n : {2, 6}) {
    GroupTag tag{Family::SU, false, n};
    for (int rep = 0; rep < 20 && c.ok; ++rep) {
      VecC d = paired_diagonal(n / 2, rng);
      AnyIsometry g = random_group_element(tag, rng.u64(), spectrum_of_pairs(d));
      Verdict v = decide(g);
      c.require(v.reversible, fmt("n=%d rep=%d not reversible", n, rep));
      c.require(!v.strongly_reversible,
                fmt("n=%d rep=%d wrongly strong", n, rep));
      c.require(v.obstruction.has_value(), fmt("n=%d missing certificate", n));
      if (v.obstruction)
        c.require(v.obstruction->forced_det == -1, "certificate must force -1");
    }
  }
  {
    GroupTag tag{Family::SU, false, 4};
    for (int rep = 0; rep < 20 && c.ok; ++rep) {
      VecC d = paired_diagonal(2, rng);
      AnyIsometry g = random_group_element(tag, rng.u64(), spectrum_of_pairs(d));
      Verdict v = decide(g);
      c.require(v.strongly_reversible, fmt("n=4 rep=%d not strong", rep));
      if (v.witness) {
        c.require(v.witness_is_involution(), "expected involution witness");
        c.require(v.witness->residual_inv <= 1e-8 * 4,
                  fmt("involution residual %.2e", v.witness->residual_inv));
      }
      collect_strong(g, v);
    }
  }
  if (c.ok)
    c.detail = "n=2,6: certified obstruction; n=4: verified involutions";
  return c;
}

// ---------------------------------------------------------------- 7 ----

Check criterion_7() {
  Check c;
  Rng rng(20240807);
  int signatures = 0, strong_count = 0;
  for (int r = 0; r <= 3; ++r) {
    for (int s : {0, 2}) {
      for (int t = 0; t <= 3; ++t) {
        for (int vcase = 0; vcase <= 1 && c.ok; ++vcase) {
          const int n = 2 * r + s + t;
          if (n < 1 || n > 9) continue;
          if (vcase == 1 && t == 0) continue;

          // planted diagonal model
          std::vector<double> used;
          VecC d;
          for (int p = 0; p < r; ++p) {
            double th = fresh_theta(used, rng);
            d.push_back(std::polar(1.0, th));
            d.push_back(std::polar(1.0, -th));
          }
          for (int k = 0; k < s; ++k) d.push_back(cplx(-1.0));
          for (int k = 0; k < t; ++k) d.push_back(cplx(1.0));
          VecC v(n, cplx(0.0));
          if (vcase == 1)
            for (int k = 0; k < t; ++k)
              v[2 * r + s + k] = cplx(0.5 + 0.4 * k, 0.2 * k);

          GroupTag tag{Family::SU, true, n};
          MatC dm(n);
          for (int k = 0; k < n; ++k) dm(k, k) = d[k];
          IsometryC model(tag, dm, v);

          // the decision procedure sees a conjugated copy
          MatC q = random_special_unitary(n, rng);
          VecC shift(n);
          for (auto& e : shift) e = rng.cnormal();
          IsometryC mask(tag, q, shift);
          IsometryC g = conjugate_by(mask, model);
          Verdict verdict = decide(AnyIsometry(g));

          // independent oracle on the planted model
          ReverserConstraints cons;
          cons.involution = true;
          cons.det_one = true;
          SearchOutcome out =
              brute_reverser_search(dm, v, tag, cons, 3000, rng.u64());
          auto cert = det_obstruction(normalize(model, 1e-9), 1e-9);

          const bool expected_rev = !(n == 1 && vcase == 1);
          c.require(verdict.reversible == expected_rev,
                    fmt("r=%d s=%d t=%d v=%d reversible=%d", r, s, t, vcase,
                        int(verdict.reversible)));
          c.require(verdict.strongly_reversible == out.found,
                    fmt("r=%d s=%d t=%d v=%d verdict %d vs search %d", r, s,
                        t, vcase, int(verdict.strongly_reversible),
                        int(out.found)));
          c.require(out.found == !cert.has_value(),
                    fmt("r=%d s=%d t=%d v=%d search %d vs certificate %d", r,
                        s, t, vcase, int(out.found), int(cert.has_value())));
          if (verdict.strongly_reversible) {
            ++strong_count;
            collect_strong(AnyIsometry(g), verdict);
          }
          ++signatures;
        }
      }
    }
  }
  if (c.ok)
    c.detail = fmt("%d signatures swept, %d strong, zero contradictions",
                   signatures, strong_count);
  return c;
}

// ---------------------------------------------------------------- 8 ----

Check criterion_8() {
  Check c;
  Rng rng(20240808);
  double worst = 0.0;
  int exact_zero = 0;
  for (Family fam : {Family::Sp, Family::U, Family::SU}) {
    for (int rep = 0; rep < 300 && c.ok; ++rep) {
      const int n = 1 + static_cast<int>(rng.u64() % 6);
      GroupTag tag{fam, true, n};
      AnyIsometry g = random_group_element(tag, rng.u64());
      std::visit(
          [&](const auto& e) {
            auto nf = normalize(e, 1e-9);
            double resid =
                distance(conjugate_by(nf.conjugator, e), nf.normal_element());
            c.require(resid <= 1e-8 * n, fmt("round trip residual %.2e", resid));
            worst = std::max(worst, resid);
            if (nf.t == 0) {
              c.require(max_abs(nf.v) == 0.0,
                        "translation must vanish exactly without eigenvalue 1");
              ++exact_zero;
            }
          },
          g);
    }
  }
  if (c.ok)
    c.detail = fmt("900 round trips, worst residual %.1e, %d exact-zero "
                   "translations", worst, exact_zero);
  return c;
}

// ---------------------------------------------------------------- 9 ----

Check criterion_9() {
  Check c;
  int done = 0;
  for (const auto& [g, h] : g_strong) {
    if (!c.ok) break;
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          const T& w = std::get<T>(h);
          const int n = e.tag.n;
          auto [f1, f2] = involution_factors(e, w, 1e-8 * n);
          c.require(is_involution(f1, 1e-8 * n), "first factor not an involution");
          c.require(is_involution(f2, 1e-8 * n), "second factor not an involution");
          c.require(membership_check(f1, 1e-7), "first factor left the group");
          c.require(membership_check(f2, 1e-7), "second factor left the group");
          c.require(distance(compose(f1, f2), e) <= 1e-8 * n,
                    "factors do not compose back");
        },
        g);
    ++done;
  }
  c.require(done > 400, fmt("only %d strong instances were collected", done));
  if (c.ok) c.detail = fmt("%d strong instances factored", done);
  return c;
}

}  // namespace

int main() {
  struct Named {
    const char* what;
    std::function<Check()> run;
  };
  const Named suite[] = {
      {"pinned-line fixture classifies with certificate", criterion_1},
      {"quaternionic family is reversible throughout", criterion_2},
      {"quaternionic strong verdict equals class parity", criterion_3},
      {"full unitary family: reversible = strong = self-dual", criterion_4},
      {"involutive reverser determinant law", criterion_5},
      {"special-unitary linear exception at n = 2 mod 4", criterion_6},
      {"special-unitary affine signature sweep", criterion_7},
      {"normal form round trip and exact fixed translation", criterion_8},
      {"strong instances factor into two involutions", criterion_9},
  };

  int failures = 0;
  int idx = 0;
  for (const auto& item : suite) {
    ++idx;
    auto t0 = Clock::now();
    Check c;
    try {
      c = item.run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    double dt = seconds_since(t0);
    std::printf("[%s] criterion-%d: %s (%s; %.1f s)\n", c.ok ? "PASS" : "FAIL",
                idx, item.what, c.detail.c_str(), dt);
    std::fflush(stdout);
    if (!c.ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
