#include <benchmark/benchmark.h>

#include "db/polygeo.hpp"
#include "db/qgeom.hpp"
#include "db/samples.hpp"
#include "db/sampling.hpp"
#include "db/tpois.hpp"
#include "db/vdata.hpp"

using namespace db;

namespace {

const Dims kR3{3, 0, 0};

void BM_Schouten(benchmark::State& state) {
  Rng rng(1);
  const int deg = static_cast<int>(state.range(0));
  auto u = random_multivector(rng, kR3, 2, deg, 4);
  auto v = random_multivector(rng, kR3, 2, deg, 4);
  for (auto _ : state) benchmark::DoNotOptimize(schouten(u, v));
}
BENCHMARK(BM_Schouten)->DenseRange(1, 4);

void BM_SuperBracket(benchmark::State& state) {
  Rng rng(2);
  const int m = static_cast<int>(state.range(0));
  auto f = random_superpoly(rng, m, 3, 2, 4);
  auto g = random_superpoly(rng, m, 3, 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(super_bracket(f, g));
}
BENCHMARK(BM_SuperBracket)->DenseRange(1, 3);

void BM_TPoisVersusOracle(benchmark::State& state) {
  Rng rng(3);
  std::vector<TPois> args{TPois::of_form(random_form(rng, kR3, 2, 2, 3)),
                          TPois::of_mv(random_multivector(rng, kR3, 2, 2, 3)),
                          TPois::of_mv(random_multivector(rng, kR3, 1, 2, 3))};
  const bool oracle = state.range(0) == 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle ? oracle_bracket(std::span<const TPois>(args)) : tpois_bracket(std::span<const TPois>(args)));
  state.SetLabel(oracle ? "oracle" : "closed form");
}
BENCHMARK(BM_TPoisVersusOracle)->Arg(0)->Arg(1);

void BM_RelationsBig(benchmark::State& state) {
  Rng rng(4);
  auto V = nilpotent_vdata(Scalar(1), Scalar(1));
  auto G = big_algebra(V);
  const int n = static_cast<int>(state.range(0));
  std::vector<BigElem<Vec>> args;
  for (int i = 0; i < n; ++i) args.push_back({random_vec(rng, *V.L, 1), V.P(random_vec(rng, *V.L, 0))});
  for (auto _ : state) benchmark::DoNotOptimize(relations_residual(G, std::span<const BigElem<Vec>>(args)));
}
BENCHMARK(BM_RelationsBig)->DenseRange(1, 5);

void BM_RelationsTPois(benchmark::State& state) {
  Rng rng(5);
  auto A = tpois_algebra(3);
  const int n = static_cast<int>(state.range(0));
  std::vector<TPois> args{TPois::of_form(random_form(rng, kR3, n - 1 < 1 ? 1 : n - 1, 2, 2))};
  for (int i = 1; i < n; ++i) args.push_back(TPois::of_mv(random_multivector(rng, kR3, 2, 2, 2)));
  for (auto _ : state) benchmark::DoNotOptimize(relations_residual(A, std::span<const TPois>(args)));
}
BENCHMARK(BM_RelationsTPois)->DenseRange(1, 4);

void BM_MCResidualTPois(benchmark::State& state) {
  Rng rng(6);
  auto p = random_mc_r4(rng, 1);
  auto A = tpois_algebra(4);
  TPois phi{p.H, p.pi};
  for (auto _ : state) benchmark::DoNotOptimize(mc_residual(A, phi));
}
BENCHMARK(BM_MCResidualTPois);

void BM_FlowCurve(benchmark::State& state) {
  Rng rng(7);
  Multivector pi(kR3, poly_const(1), 0b011);
  Form B = Form(kR3, poly_const(1), 0b011) + Form(kR3, random_poly(rng, 0, 3, 2, 2), 0b101);
  Form H(kR3, random_poly(rng, 0, 3, 2, 2), 0b111);
  Multivector X(kR3, poly_const(1), 0b001);
  for (auto _ : state) benchmark::DoNotOptimize(flow_curve(B, X, H, pi));
}
BENCHMARK(BM_FlowCurve);

}  // namespace
BENCHMARK_MAIN();
