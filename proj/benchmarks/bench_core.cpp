#include <benchmark/benchmark.h>

#include "isorev/classify.hpp"

using namespace isorev;

namespace {

void bm_eig_unitary(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(11);
  MatC m = random_unitary(n, rng);
  for (auto _ : state) {
    auto eig = eig_unitary(m, 1e-9);
    benchmark::DoNotOptimize(eig.eigenvalues.data());
  }
}
BENCHMARK(bm_eig_unitary)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void bm_diagonalize_sp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(12);
  MatH m = random_sp_unitary(n, rng);
  for (auto _ : state) {
    auto dg = diagonalize_sp(m, 1e-9);
    benchmark::DoNotOptimize(dg.thetas.data());
  }
}
BENCHMARK(bm_diagonalize_sp)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

template <Family F>
void bm_normalize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  AnyIsometry g = random_group_element({F, true, n}, 13);
  for (auto _ : state) {
    std::visit(
        [](const auto& e) {
          auto nf = normalize(e, 1e-9);
          benchmark::DoNotOptimize(nf.residual);
        },
        g);
  }
}
BENCHMARK(bm_normalize<Family::Sp>)->Arg(5);
BENCHMARK(bm_normalize<Family::U>)->Arg(5);
BENCHMARK(bm_normalize<Family::SU>)->Arg(5);

template <Family F>
void bm_decide(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  AnyIsometry g = random_group_element({F, true, n}, 14);
  for (auto _ : state) {
    Verdict v = decide(g);
    benchmark::DoNotOptimize(v.reversible);
  }
}
BENCHMARK(bm_decide<Family::Sp>)->Arg(5);
BENCHMARK(bm_decide<Family::U>)->Arg(5);
BENCHMARK(bm_decide<Family::SU>)->Arg(5);

// Per-trial cost of the randomized reverser search.  The target has one
// odd rotation class, so no trial ever succeeds and every trial is paid
// in full.
void bm_search_trials(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  MatH d(n);
  for (int k = 0; k < n; ++k)
    d(k, k) = Quaternion(std::cos(0.4 + 0.3 * k), std::sin(0.4 + 0.3 * k), 0, 0);
  VecH v(n, Quaternion(0.0));
  ReverserConstraints cons;
  cons.involution = true;
  const long trials = 256;
  long done = 0;
  for (auto _ : state) {
    SearchOutcome out =
        brute_reverser_search(d, v, {Family::Sp, false, n}, cons, trials, 15);
    benchmark::DoNotOptimize(out.found);
    done += out.trials_used;
  }
  state.SetItemsProcessed(done);
}
BENCHMARK(bm_search_trials)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
