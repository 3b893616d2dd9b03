// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "support/random.hpp"
#include "uip/interpolation.hpp"
#include "uip/parallel.hpp"
#include "uip/parser.hpp"

namespace {

using namespace uip;

std::vector<Sequent> workload(std::size_t n) {
  testing::Random rng(4242);
  std::vector<Sequent> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(rng.sequent(12));
  return out;
}

const std::vector<Sequent>& sequents() {
  static const std::vector<Sequent> s = workload(400);
  return s;
}

void BM_DecideSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(decide_batch_serial(Logic::KT, sequents()));
}
void BM_DecideParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(decide_batch(Logic::KT, sequents()));
}

void BM_CountermodelSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(countermodel_batch_serial(Logic::KD, sequents()));
}
void BM_CountermodelParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(countermodel_batch(Logic::KD, sequents()));
}

struct Scan {
  Formula subject = parse_formula("p & [1]q");
  Formula interpolant = post_interpolant(Logic::K, subject, {"p"});
  std::vector<Formula> candidates = enumerate_candidates({"q"}, {AgentId(1)}, 5, 100000);
};

const Scan& scan() {
  static const Scan s;
  return s;
}

void BM_ScanSerial(benchmark::State& state) {
  const Scan& s = scan();
  for (auto _ : state)
    benchmark::DoNotOptimize(extremality_scan_serial(Logic::K, s.subject, s.interpolant, true, s.candidates));
}
void BM_ScanParallel(benchmark::State& state) {
  const Scan& s = scan();
  for (auto _ : state)
    benchmark::DoNotOptimize(extremality_scan(Logic::K, s.subject, s.interpolant, true, s.candidates));
}

}  // namespace

BENCHMARK(BM_DecideSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecideParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountermodelSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountermodelParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
