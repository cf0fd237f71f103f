#include <benchmark/benchmark.h>

#include <numbers>
#include <random>
#include <vector>

#include "pwa/circles.hpp"
#include "pwa/map.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<pwa::Vec2> random_points(int n, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(0.001, 0.999);
    std::vector<pwa::Vec2> pts(n);
    for (auto& p : pts) p = {coord(rng), coord(rng)};
    return pts;
}

void BM_Classify(benchmark::State& state) {
    const pwa::MapF map = pwa::build_map(pwa::params_from_theta(kPi / 11.0));
    const auto pts = random_points(1024, 1);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pwa::classify(pts[i++ & 1023], map.partition));
    }
}
BENCHMARK(BM_Classify);

void BM_ApplyF(benchmark::State& state) {
    const pwa::MapF map = pwa::build_map(pwa::params_from_theta(kPi / 11.0));
    pwa::Vec2 cur{0.92, 0.5};
    for (auto _ : state) {
        cur = pwa::apply_F(cur, map);
        benchmark::DoNotOptimize(cur);
    }
}
BENCHMARK(BM_ApplyF);

void BM_ApplyFInv(benchmark::State& state) {
    const pwa::MapF map = pwa::build_map(pwa::params_from_theta(kPi / 11.0));
    pwa::Vec2 cur{0.92, 0.5};
    for (auto _ : state) {
        cur = pwa::apply_F_inv(cur, map);
        benchmark::DoNotOptimize(cur);
    }
}
BENCHMARK(BM_ApplyFInv);

void BM_OrbitWithWinding(benchmark::State& state) {
    const pwa::MapF map = pwa::build_map(pwa::params_from_theta(kPi / 11.0));
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pwa::orbit({0.92, 0.5}, n, map));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_OrbitWithWinding)->Arg(1024)->Arg(16384);

void BM_SolveThetaK(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pwa::solve_theta_K(K));
    }
}
BENCHMARK(BM_SolveThetaK)->Arg(3)->Arg(8);

void BM_BuildGamma(benchmark::State& state) {
    const pwa::Params p = pwa::solve_theta_K(3);
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pwa::build_gamma(p, 3, N));
    }
}
BENCHMARK(BM_BuildGamma)->Arg(0)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
