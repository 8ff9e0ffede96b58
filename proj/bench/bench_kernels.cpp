// Serial reference vs OpenMP kernels.
//   bench_kernels --benchmark_filter=Census

#include <benchmark/benchmark.h>

#include "dynirr/census.hpp"
#include "dynirr/enumr.hpp"
#include "dynirr/multiset.hpp"
#include "dynirr/parallel.hpp"

using namespace dynirr;

namespace {

void BM_CensusSerial(benchmark::State& state) {
  const auto f = ff::Field::create(static_cast<std::uint64_t>(state.range(0)));
  census::CensusOptions o;
  o.keep_list = false;
  for (auto _ : state) benchmark::DoNotOptimize(census::census_monic_serial(f, o).di_star);
  state.counters["q"] = static_cast<double>(f.order());
}

void BM_CensusParallel(benchmark::State& state) {
  const auto f = ff::Field::create(static_cast<std::uint64_t>(state.range(0)));
  census::CensusOptions o;
  o.keep_list = false;
  o.jobs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(census::census_monic(f, o).di_star);
  state.counters["q"] = static_cast<double>(f.order());
  state.counters["jobs"] = static_cast<double>(resolve_jobs(o.jobs));
}

struct GammaInput {
  ff::Field f;
  quad::QuadPoly f1, f2;
};

GammaInput gamma_input(std::uint64_t q) {
  const auto f = ff::Field::create(q);
  const auto di = enumr::all_di_polynomials(f);
  // First non-proportional pair in canonical order.
  for (std::size_t j = 1; j < di.size(); ++j)
    if (!multiset::proportional(f, di[0], di[j])) return {f, di[0], di[j]};
  return {f, di[0], di[1]};
}

void BM_GammaSerial(benchmark::State& state) {
  const auto in = gamma_input(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(multiset::gamma_set_serial(in.f, in.f1, in.f2, 5).gamma_set.size());
}

void BM_GammaParallel(benchmark::State& state) {
  const auto in = gamma_input(static_cast<std::uint64_t>(state.range(0)));
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(multiset::gamma_set(in.f, in.f1, in.f2, 5, jobs).gamma_set.size());
}

void BM_SetTest(benchmark::State& state) {
  const auto f = ff::Field::create(static_cast<std::uint64_t>(state.range(0)));
  std::vector<quad::QuadPoly> fam;
  for (auto a : f.elements())
    if (!a.is_zero() && f.is_nonsquare(a)) fam.push_back(quad::QuadPoly::fixed_point_family(f, a, f.one()));
  for (auto _ : state) benchmark::DoNotOptimize(multiset::di_set_test(f, fam).tests_performed);
}

}  // namespace

BENCHMARK(BM_CensusSerial)->Arg(101)->Arg(401)->Arg(1009)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CensusParallel)
    ->ArgsProduct({{101, 401, 1009}, {1, 0}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GammaSerial)->Arg(401)->Arg(1009)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GammaParallel)->ArgsProduct({{401, 1009}, {1, 0}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SetTest)->Arg(101)->Arg(1009)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
