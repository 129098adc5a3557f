// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "cayley/group.hpp"
#include "cayley/repr.hpp"
#include "cayley/rng.hpp"
#include "cayley/sampler.hpp"
#include "cayley/spencer.hpp"

namespace {

const cayley::FiniteGroup& group_for(int which) {
  static const cayley::FiniteGroup alt5 = cayley::make_group("alt:5");
  static const cayley::FiniteGroup alt6 = cayley::make_group("alt:6");
  static const cayley::FiniteGroup cyc1024 = cayley::make_group("cyclic:1024");
  switch (which) {
    case 0: return alt5;
    case 1: return alt6;
    default: return cyc1024;
  }
}

template <bool Parallel>
void BM_CayleyApply(benchmark::State& state) {
  const auto& group = group_for(static_cast<int>(state.range(0)));
  const int n = group.order();
  cayley::NormalSampler normal(cayley::Philox4x32(1, 0));
  std::vector<double> coeffs(n);
  for (auto& c : coeffs) c = normal();
  cayley::RealVector u(n), out(n);
  for (int i = 0; i < n; ++i) u(i) = normal();
  for (auto _ : state) {
    if constexpr (Parallel) {
      cayley::cayley_apply<double>(group, coeffs, u, out);
    } else {
      cayley::cayley_apply_serial<double>(group, coeffs, u, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetLabel(group.name());
}
BENCHMARK(BM_CayleyApply<false>)->Arg(0)->Arg(1)->Arg(2);
BENCHMARK(BM_CayleyApply<true>)->Arg(0)->Arg(1)->Arg(2);

template <bool Parallel>
void BM_DirectComplexTrials(benchmark::State& state) {
  const auto& group = group_for(static_cast<int>(state.range(0)));
  const auto series = cayley::GaussianSeries::complex_cayley(group);
  cayley::EstimateOptions options;
  options.parallel = Parallel;
  for (auto _ : state) {
    auto values = cayley::sample_norms(series, 32, cayley::NormMethod::direct_complex, 7, nullptr, options);
    benchmark::DoNotOptimize(values.data());
  }
  state.SetLabel(group.name());
}
BENCHMARK(BM_DirectComplexTrials<false>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DirectComplexTrials<true>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

template <bool Parallel>
void BM_BlockTrials(benchmark::State& state) {
  const auto& group = group_for(static_cast<int>(state.range(0)));
  const auto spectrum = cayley::irrep_degrees(cayley::RegularRep(group), 0);
  const auto series = cayley::GaussianSeries::complex_cayley(group);
  cayley::EstimateOptions options;
  options.parallel = Parallel;
  for (auto _ : state) {
    auto values = cayley::sample_norms(series, 1000, cayley::NormMethod::block, 7, &spectrum, options);
    benchmark::DoNotOptimize(values.data());
  }
  state.SetLabel(group.name());
}
BENCHMARK(BM_BlockTrials<false>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlockTrials<true>)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

template <bool Parallel>
void BM_LocalSearchRestarts(benchmark::State& state) {
  const auto& group = group_for(0);
  for (auto _ : state) {
    auto coloring = cayley::local_search_restarts(group, 4, 3, Parallel);
    benchmark::DoNotOptimize(coloring.norm);
  }
}
BENCHMARK(BM_LocalSearchRestarts<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocalSearchRestarts<true>)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
