#include <platfloer/branchedcover/differential.hpp>

#include <benchmark/benchmark.h>

using namespace platfloer;

namespace {

struct Fixture {
  cover::HeegaardDiagram H;
  std::unique_ptr<cover::DomainSolver> S;
  std::vector<cover::Tuple> gens;
  std::vector<cover::SpincClass> classes;

  explicit Fixture(const braid::BraidWord& b) {
    fork::ForkDiagram F(b);
    H = cover::build_heegaard(F);
    S = std::make_unique<cover::DomainSolver>(H);
    for (const auto& l : cover::lift_generators(H, F)) gens.push_back(l.vertices);
    classes = cover::spinc_partition(*S, gens);
  }
};

// Nice knots of increasing size: 18, 36 and 242 generators.
const std::vector<std::pair<const char*, int>> kKnots{
    {"s2^3", 4}, {"s1^-1 s3^-1 s2^-1 s4^-1 s3 s5^-1 s2^-1 s3", 6}, {"s3^-1 s2^3 s1^-2 s2^-2 s3^-1", 4}};

Fixture& fixture(int i) {
  static std::vector<std::unique_ptr<Fixture>> cache(kKnots.size());
  if (!cache[i]) cache[i] = std::make_unique<Fixture>(braid::parse_braid(kKnots[i].first, kKnots[i].second));
  return *cache[i];
}

void BM_DifferentialParallel(benchmark::State& state) {
  Fixture& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cover::differential(*f.S, f.gens, f.classes));
  state.SetLabel(std::to_string(f.gens.size()) + " generators");
}

void BM_DifferentialReference(benchmark::State& state) {
  Fixture& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cover::differential_reference(*f.S, f.gens));
  state.SetLabel(std::to_string(f.gens.size()) + " generators");
}

}  // namespace

BENCHMARK(BM_DifferentialParallel)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DifferentialReference)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
