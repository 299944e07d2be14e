#include <benchmark/benchmark.h>

#include "hdml/axioms.hpp"
#include "hdml/bisim.hpp"
#include "hdml/encodings.hpp"
#include "hdml/filtration.hpp"
#include "hdml/semantics.hpp"

using namespace hdml;

namespace {

Hda sized_model(int per_level, int max_dim = 3) {
  RandomHdaParams p;
  p.max_dim = max_dim;
  p.cells_per_level.assign(static_cast<std::size_t>(max_dim + 1), per_level);
  p.seed = 17;
  p.allow_cycles = false;
  return generate_random(p);
}

void BM_SatSet(benchmark::State& state) {
  const Hda h = sized_model(static_cast<int>(state.range(0)));
  const Formula f = parse("<s>[t](p -> <s><s> q) | [s][s]~p");
  for (auto _ : state) {
    Model m(h);
    Checker c(m);
    benchmark::DoNotOptimize(c.sat(f).count());
  }
  state.counters["cells"] = static_cast<double>(h.size());
}
BENCHMARK(BM_SatSet)->Arg(10)->Arg(40)->Arg(160);

void BM_UntilOnCube(benchmark::State& state) {
  std::vector<std::string> ev;
  for (int k = 0; k < state.range(0); ++k) ev.push_back("e" + std::to_string(k));
  const Hda cube = hypercube(ev);
  const Formula f = Formula::until_l(top(), neg(Formula::after(top())));
  for (auto _ : state) {
    Model m(cube);
    Checker c(m);
    benchmark::DoNotOptimize(c.sat(f).count());
  }
  state.counters["cells"] = static_cast<double>(cube.size());
}
BENCHMARK(BM_UntilOnCube)->DenseRange(2, 6, 2);

void BM_Filtrate(benchmark::State& state) {
  const Hda h = sized_model(static_cast<int>(state.range(0)));
  const Formula f = parse("<s>(p & [t] q) -> <s><t>~p");
  for (auto _ : state) benchmark::DoNotOptimize(filtrate(Model(h), f).quotient.size());
}
BENCHMARK(BM_Filtrate)->Arg(10)->Arg(40);

void BM_SizeBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(size_bound(n, 10).exponent);
}
BENCHMARK(BM_SizeBound)->Arg(2)->Arg(6)->Arg(12);

void BM_SplitBisim(benchmark::State& state) {
  std::vector<std::string> ev;
  for (int k = 0; k < state.range(0); ++k) ev.push_back("e" + std::to_string(k));
  std::map<std::string, std::string> lambda;
  for (const auto& e : ev) lambda[e] = "a";
  const Hda a = hypercube(ev, lambda);
  const Hda b = hypercube(ev, lambda);
  const std::string origin(ev.size(), '0');
  const CellId ra = a.at(origin);
  const CellId rb = b.at(origin);
  for (auto _ : state) benchmark::DoNotOptimize(split_bisimilar(a, ra, b, rb));
}
BENCHMARK(BM_SplitBisim)->DenseRange(2, 5);

void BM_SoundnessSuite(benchmark::State& state) {
  const auto corpus = default_corpus(static_cast<std::size_t>(state.range(0)), 3);
  const auto pool = formula_pool(1);
  for (auto _ : state) benchmark::DoNotOptimize(soundness_suite(corpus, pool).checks);
}
BENCHMARK(BM_SoundnessSuite)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
