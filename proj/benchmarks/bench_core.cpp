#include <benchmark/benchmark.h>

#include <random>

#include "mono/representability.hpp"
#include "mono/resolvent.hpp"
#include "mono/zoo.hpp"

using namespace mono;

namespace {

Vec v1(double a) {
  Vec v(1);
  v[0] = a;
  return v;
}

SampledGraph make_sign_graph(int n) {
  std::vector<std::pair<Vec, Covec>> pairs;
  for (int i = 1; i <= n / 2; ++i) {
    const double t = 2.0 * i / (n / 2);
    pairs.emplace_back(v1(t), v1(1.0));
    pairs.emplace_back(v1(-t), v1(-1.0));
  }
  pairs.emplace_back(v1(0.0), v1(0.0));
  return SampledGraph(std::move(pairs));
}

void BM_DualityMap(benchmark::State& state) {
  const NormedSpace s(static_cast<int>(state.range(0)), 3.0);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec x(s.dim());
  for (int i = 0; i < s.dim(); ++i) x[i] = u(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.duality_map(x));
  }
}
BENCHMARK(BM_DualityMap)->Arg(4)->Arg(64);

void BM_ResolventAbs(benchmark::State& state) {
  const double p = state.range(0) == 0 ? 1.5 : 2.0;
  const NormedSpace s(2, p);
  const Operator T = zoo::abs(s);
  Vec x(2);
  x << 1.7, -0.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_my_system(T, x, 0.5));
  }
}
BENCHMARK(BM_ResolventAbs)->Arg(0)->Arg(1);

void BM_YosidaBall(benchmark::State& state) {
  const NormedSpace s(2, 2.0);
  const Operator T = zoo::indicator_ball(s, Vec::Zero(2), 1.0);
  Vec x(2);
  x << 1.0, 1e-4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(moreau_yosida(T, 1e-10, x));
  }
}
BENCHMARK(BM_YosidaBall);

void BM_Fitzpatrick(benchmark::State& state) {
  const SampledGraph g = make_sign_graph(static_cast<int>(state.range(0)));
  const Vec x = v1(0.3);
  const Covec xs = v1(0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fitzpatrick_value(g, x, xs));
  }
}
BENCHMARK(BM_Fitzpatrick)->Arg(100)->Arg(1000);

void BM_RepresentativeLP(benchmark::State& state) {
  const SampledGraph g = make_sign_graph(static_cast<int>(state.range(0)));
  const Vec x = v1(0.1);
  const Covec xs = v1(0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(representative_value(g, x, xs));
  }
}
BENCHMARK(BM_RepresentativeLP)->Arg(50)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
