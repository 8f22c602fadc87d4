#include <benchmark/benchmark.h>

#include "brs/cutproject.hpp"
#include "brs/dynamics.hpp"
#include "brs/orbit.hpp"
#include "brs/random.hpp"
#include "brs/region.hpp"

using namespace brs;

namespace {

std::string golden_decimal() {
  Real x = Real::sqrt_ui(5, 400);
  x -= Real::from_long(1, 400);
  x /= Real::from_long(2, 400);
  return x.to_string(60);
}

RotationContext golden_ctx(mpfr_prec_t prec) {
  return RotationContext({golden_decimal()}, prec);
}

RegionGeometry random_region(std::size_t s, int steps, mpfr_prec_t prec) {
  RandomSource rng(99 + s);
  std::vector<std::string> alpha;
  for (std::size_t i = 0; i < s; ++i) alpha.push_back(rng.next_decimal_string(45));
  std::vector<std::size_t> js;
  for (int k = 0; k < steps; ++k) js.push_back(rng.next_below(s));
  return geometry(construct_basis(RotationContext(alpha, prec), js));
}

}  // namespace

static void BM_OrbitScanGolden(benchmark::State& state) {
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(state.range(0));
  RegionGeometry g = geometry(construct_basis(golden_ctx(prec), {0}));
  const long n = 100000;
  for (auto _ : state) {
    OrbitScanner scan(g, RVector{Real(prec)});
    long long visits = 0;
    while (scan.next_visit(Int(n))) ++visits;
    benchmark::DoNotOptimize(visits);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_OrbitScanGolden)->Arg(128)->Arg(256)->Arg(512);

static void BM_OrbitScanRandomS3(benchmark::State& state) {
  RegionGeometry g = random_region(3, 10, 256);
  const long n = 100000;
  for (auto _ : state) {
    OrbitScanner scan(g, RVector(3, Real(256)));
    long long visits = 0;
    while (scan.next_visit(Int(n))) ++visits;
    benchmark::DoNotOptimize(visits);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_OrbitScanRandomS3);

static void BM_ExactMembership(benchmark::State& state) {
  RegionGeometry g = random_region(3, 10, 256);
  RandomSource rng(4);
  std::vector<RVector> points;
  for (int i = 0; i < 256; ++i)
    points.push_back(RVector{rng.next_real(256), rng.next_real(256), rng.next_real(256)});
  std::size_t i = 0;
  for (auto _ : state) {
    auto u = torus_membership(g, points[i++ & 255]);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_ExactMembership);

static void BM_RenormalizedReturns(benchmark::State& state) {
  RegionGeometry g = random_region(2, 6, 256);
  const long long count = 10000;
  for (auto _ : state) {
    ReturnSequence seq = renormalized_returns(g, count);
    benchmark::DoNotOptimize(seq.entries.back().ell);
  }
  state.SetItemsProcessed(state.iterations() * count);
}
BENCHMARK(BM_RenormalizedReturns);

static void BM_ExchangeStep(benchmark::State& state) {
  RotationContext ctx = golden_ctx(256);
  SpecialBasis basis = initial_basis(ctx);
  for (auto _ : state) {
    SpecialBasis next = exchange_step(basis, 0);
    benchmark::DoNotOptimize(next.v[1].n.get_si());
  }
}
BENCHMARK(BM_ExchangeStep);

static void BM_BdPairingColumn(benchmark::State& state) {
  Scheme scheme(3, 2,
                {{Real::sqrt_ui(2, 400).to_string(45)}, {Real::sqrt_ui(3, 400).to_string(45)}},
                256);
  // Shift into [0,1): sqrt(2)-1 drives the rotation after reduction.
  RegionGeometry region = geometry(construct_basis(scheme.rotation(), {0}));
  SectionedScheme ss(scheme, region, RVector{Real(256)});
  for (auto _ : state) {
    BdPairing pr = bd_pairing(ss, {IntRange{Int(0), Int(3)}}, IntRange{Int(-2000), Int(2000)},
                              false);
    benchmark::DoNotOptimize(pr.sup_displacement.to_double());
  }
}
BENCHMARK(BM_BdPairingColumn);

BENCHMARK_MAIN();
