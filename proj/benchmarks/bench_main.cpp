#include <benchmark/benchmark.h>

#include <coxkl/diagram.hpp>

using namespace coxkl::diagram;

namespace {

CoxeterSystem path_sys(std::vector<Weight> bonds) {
  std::vector<std::string> gens;
  std::vector<std::tuple<int, int, Weight>> edges;
  for (size_t i = 0; i <= bonds.size(); ++i) gens.push_back("s" + std::to_string(i));
  for (size_t i = 0; i < bonds.size(); ++i)
    edges.emplace_back(static_cast<int>(i), static_cast<int>(i) + 1, bonds[i]);
  return CoxeterSystem(gens, edges);
}

void bm_classify_a2(benchmark::State& state) {
  auto sys = path_sys({3, 3, 4, 3, 3, 3, 3, 3, 4});
  for (auto _ : state) benchmark::DoNotOptimize(classify_a2_finite(sys));
}
BENCHMARK(bm_classify_a2);

}  // namespace

BENCHMARK_MAIN();
