#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "pl/field.hpp"

using namespace pl;

namespace {

LoopState two_mode(int N) {
  const auto& D = sl2c();
  RVec6 X, Y;
  X << 0.7, -0.3, 0.5, 0.4, 0.2, -0.6;
  Y << -0.2, 0.5, 0.1, -0.4, 0.6, 0.3;
  LoopState s;
  s.N = N;
  s.bc = Boundary::Periodic;
  s.dx = std::numbers::pi / N;
  for (double x : grid_x(N, s.bc))
    s.k.push_back(expm2(0.3 * std::sin(2 * x) * D.from_coords(X)) * expm2(0.3 * std::cos(2 * x) * D.from_coords(Y)));
  return s;
}

void run_step(benchmark::State& st, bool parallel) {
  FieldModel F = make_field_model(make_preset("modified-principal", "su2-real"));
  LoopState s = two_mode(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    step(F, s, 1e-4, parallel);
    benchmark::DoNotOptimize(s.k.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_StepSerial(benchmark::State& st) { run_step(st, false); }
void BM_StepParallel(benchmark::State& st) { run_step(st, true); }

void BM_Energy(benchmark::State& st) {
  FieldModel F = make_field_model(make_preset("modified-principal", "su2-real"));
  LoopState s = two_mode(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(energy(F, s, st.range(1) != 0));
}

}  // namespace

BENCHMARK(BM_StepSerial)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_StepParallel)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_Energy)->ArgsProduct({{256, 4096}, {0, 1}});

BENCHMARK_MAIN();
