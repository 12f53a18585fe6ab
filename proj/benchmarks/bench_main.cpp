#include <benchmark/benchmark.h>

#include "lp2/appendix.hpp"
#include "lp2/mirror_geometry.hpp"
#include "lp2/mirror_map.hpp"
#include "lp2/picard_fuchs.hpp"
#include "lp2/specfun.hpp"

namespace {

using cplx = std::complex<double>;
namespace sf = lp2::specfun;
namespace pf = lp2::picard_fuchs;
namespace mg = lp2::mirror_geometry;
namespace mm = lp2::mirror_map;

void BM_Gamma(benchmark::State& s) {
  cplx z(0.3, 2.1);
  for (auto _ : s) benchmark::DoNotOptimize(sf::gamma(z));
}
BENCHMARK(BM_Gamma);

void BM_Hyp2F1Agm(benchmark::State& s) {
  cplx z(0.4, -0.7);
  for (auto _ : s) benchmark::DoNotOptimize(sf::hyp2f1_half(z));
}
BENCHMARK(BM_Hyp2F1Agm);

void BM_Hyp2F1Series(benchmark::State& s) {
  cplx z(0.4, -0.7);
  for (auto _ : s) benchmark::DoNotOptimize(sf::hyp2f1_half_series(z));
}
BENCHMARK(BM_Hyp2F1Series);

void BM_AppendixExtended(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(sf::verify_appendix(sf::Precision::extended));
}
BENCHMARK(BM_AppendixExtended)->Unit(benchmark::kMillisecond);

void BM_SeriesW2(benchmark::State& s) {
  cplx y(0.01, 0.005);
  const int n = int(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(pf::series_w2(y, n));
}
BENCHMARK(BM_SeriesW2)->Arg(50)->Arg(200);

void BM_ChfExpand(benchmark::State& s) {
  cplx y(0.01, 0.005);
  for (auto _ : s) benchmark::DoNotOptimize(pf::chf_expand(y));
}
BENCHMARK(BM_ChfExpand)->Unit(benchmark::kMicrosecond);

void BM_MellinBarnes(benchmark::State& s) {
  cplx y(0.01, 0.005);
  for (auto _ : s) benchmark::DoNotOptimize(pf::mellin_barnes(y, pf::MellinBarnesKind::digamma));
}
BENCHMARK(BM_MellinBarnes)->Unit(benchmark::kMicrosecond);

void BM_Monodromy(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(pf::monodromy_around_origin());
}
BENCHMARK(BM_Monodromy)->Unit(benchmark::kMillisecond);

void BM_CycleTracker(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(mg::CycleTracker(1, -0.1));
}
BENCHMARK(BM_CycleTracker)->Unit(benchmark::kMillisecond);

void BM_Periods(benchmark::State& s) {
  const double y = double(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(mg::periods(y));
}
BENCHMARK(BM_Periods)->Arg(1000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_TransferMatrix(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(mm::fit_transfer_matrix(std::vector<cplx>{1e3, 2e3, 4e3}));
}
BENCHMARK(BM_TransferMatrix)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
