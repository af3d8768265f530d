#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "specdet/cylinder.hpp"
#include "specdet/oned_oracle.hpp"
#include "specdet/scattering.hpp"
#include "specdet/special_fn.hpp"
#include "specdet/spectra.hpp"
#include "specdet/zeta_det.hpp"

namespace {

const specdet::CrossSectionSpectrum& circle() {
  static const specdet::CrossSectionSpectrum s = specdet::circle_spectrum(1.0);
  return s;
}

void BM_HeatTrace(benchmark::State& state) {
  const double t = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(specdet::heat_trace(circle(), t));
  }
}
BENCHMARK(BM_HeatTrace)->Arg(1)->Arg(10)->Arg(100);

void BM_ZetaAt(benchmark::State& state) {
  const specdet::SpectralZeta z(circle());
  const double s = 0.25 * static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(z.at(s));
  }
}
BENCHMARK(BM_ZetaAt)->Arg(-6)->Arg(-2)->Arg(3);

void BM_LogDetZeta(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(specdet::log_det_zeta(circle()));
  }
}
BENCHMARK(BM_LogDetZeta);

void BM_XiPrimeZero(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(specdet::xi_prime_zero(circle()));
  }
}
BENCHMARK(BM_XiPrimeZero);

void BM_IncompleteBessel(benchmark::State& state) {
  const double a = 0.1 * static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(specdet::incomplete_bessel(-0.5, a, 25.0));
  }
}
BENCHMARK(BM_IncompleteBessel)->Arg(1)->Arg(10)->Arg(100);

void BM_CylinderClosed(benchmark::State& state) {
  const specdet::CylinderModel m{circle(), 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(specdet::cylinder_det_closed(m));
  }
}
BENCHMARK(BM_CylinderClosed);

void BM_CylinderDirect(benchmark::State& state) {
  const specdet::CylinderModel m{circle(), 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(specdet::cylinder_det_direct(m));
  }
}
BENCHMARK(BM_CylinderDirect);

void BM_ScatteringPair(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const int dim = static_cast<int>(state.range(0));
  std::vector<specdet::InvolutionPair> pairs;
  for (int i = 0; i < 64; ++i) {
    pairs.push_back(specdet::random_involution_pair(rng, dim));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const specdet::InvolutionPair& p = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(specdet::det_S_block(p));
    benchmark::DoNotOptimize(specdet::det_half_id_minus_c12(p));
  }
}
BENCHMARK(BM_ScatteringPair)->Arg(2)->Arg(8);

void BM_GelfandYaglom(benchmark::State& state) {
  specdet::SchrodingerProblem p;
  p.b = 1.0;
  p.shift = 0.3;
  p.kind = specdet::PotentialKind::callable;
  p.w_fn = [](double x) { return 1.0 + x * x; };
  for (auto _ : state) {
    benchmark::DoNotOptimize(specdet::gy_det(p));
  }
}
BENCHMARK(BM_GelfandYaglom);

}  // namespace

BENCHMARK_MAIN();
