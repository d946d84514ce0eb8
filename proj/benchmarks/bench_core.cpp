#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "tuned_source/quadrature.hpp"
#include "tuned_source/specfun.hpp"
#include "tuned_source/theorems.hpp"

using namespace tuned_source;

static void BM_BesselJ(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::bessel_j(l, x));
    x = x < 50.0 ? x * 1.37 : 0.1;
  }
}
BENCHMARK(BM_BesselJ)->Arg(1)->Arg(6)->Arg(30);

static void BM_BesselSequence(benchmark::State& state) {
  std::vector<double> out(static_cast<std::size_t>(state.range(0)) + 1);
  for (auto _ : state) {
    specfun::bessel_j_sequence(7.3, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_BesselSequence)->Arg(10)->Arg(100);

static void BM_RadialQuadrature(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0));
  quadrature::QuadratureOptions opts;
  opts.rel_tol = 1e-13;
  opts.wavenumber = alpha;
  for (auto _ : state) {
    const auto r = quadrature::integrate_radial(
        [&](double x) {
          const double j = specfun::bessel_j(3, alpha * x);
          return x * x * j * j;
        },
        1.0, opts);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_RadialQuadrature)->Arg(1)->Arg(10)->Arg(100);

static void BM_BoundednessMargin(benchmark::State& state) {
  const model::Mode mode(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(theorems::boundedness_margin(mode, 2.0, 0.3, 1.0, 3.0).margin);
  }
}
BENCHMARK(BM_BoundednessMargin)->Arg(1)->Arg(2);

static void BM_FiniteDifferenceExpansion(benchmark::State& state) {
  const model::Mode mode(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(theorems::expansion_finite_difference(mode, 1.0, 2.0, 0.5).f2);
  }
}
BENCHMARK(BM_FiniteDifferenceExpansion)->Arg(1)->Arg(2);

BENCHMARK_MAIN();
