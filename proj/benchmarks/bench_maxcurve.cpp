#include <benchmark/benchmark.h>

#include <vector>

#include "maxcurve/curve.hpp"
#include "maxcurve/gf.hpp"
#include "maxcurve/linsys.hpp"
#include "maxcurve/semigroup.hpp"
#include "maxcurve/zeta.hpp"

using namespace maxcurve;

static void BM_FieldMultiply(benchmark::State& state) {
  gf::Field f = gf::make_field(3, static_cast<std::uint32_t>(state.range(0)));
  auto a = gf::element_from_index(f, f->size / 2);
  auto b = gf::element_from_index(f, f->size / 3 + 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a = a * b);
  }
}
BENCHMARK(BM_FieldMultiply)->Arg(4)->Arg(8);

static void BM_FieldInverse(benchmark::State& state) {
  gf::Field f = gf::make_field(5, 4);
  auto a = gf::element_from_index(f, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.inverse());
  }
}
BENCHMARK(BM_FieldInverse);

static void BM_EnumeratePoints(benchmark::State& state) {
  auto c = curve::artin_schreier_quotient(5, 5, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(curve::enumerate_points(c, static_cast<std::uint32_t>(state.range(0))));
  }
}
BENCHMARK(BM_EnumeratePoints)->Arg(1)->Arg(2);

static void BM_WronskianOrder(benchmark::State& state) {
  auto c = curve::artin_schreier_quotient(3, 3, 2);
  auto gen = linsys::generic_orders(c, 4);
  curve::PlacePoint P;
  P.at_infinity = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(linsys::wronskian_order_at(c, 4, gen.orders, P));
  }
}
BENCHMARK(BM_WronskianOrder);

static void BM_SVDivisors(benchmark::State& state) {
  auto c = curve::artin_schreier_quotient(3, 3, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(linsys::sv_divisors(c, 4, std::nullopt, 1, true));
  }
}
BENCHMARK(BM_SVDivisors);

static void BM_LPolyFromCounts(benchmark::State& state) {
  auto c = curve::artin_schreier_quotient(5, 5, 3);
  std::vector<zeta::Int> counts;
  for (std::uint32_t i = 1; i <= 4; ++i) counts.push_back(curve::enumerate_points(c, i).count);
  for (auto _ : state) {
    benchmark::DoNotOptimize(zeta::lpoly_from_counts(25, 4, counts));
  }
}
BENCHMARK(BM_LPolyFromCounts);

static void BM_SemigroupSieve(benchmark::State& state) {
  const std::uint64_t q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(semigroup::from_generators({q - 1, q, q + 1}));
  }
}
BENCHMARK(BM_SemigroupSieve)->Arg(13)->Arg(101);

BENCHMARK_MAIN();
