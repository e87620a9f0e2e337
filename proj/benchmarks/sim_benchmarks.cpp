// SPDX-License-Identifier: Apache-2.0
#include <string>

#include <benchmark/benchmark.h>

#include "qsplit/qsim.hpp"
#include "qsplit/random.hpp"
#include "qsplit/revlib.hpp"

using namespace qsplit;

namespace {

Circuit load_fixture(const std::string& name) {
  return parse_real_file(std::string(QSPLIT_DATA_DIR) + "/" + name + ".real")
      .circuit;
}

PureState random_state(std::uint32_t m, std::uint64_t seed) {
  Rng rng(seed);
  PureState s;
  s.num_qubits = m;
  s.amps.resize(1ull << m);
  double norm2 = 0.0;
  for (auto& a : s.amps) {
    a = Complex(rng.normal(), rng.normal());
    norm2 += std::norm(a);
  }
  for (auto& a : s.amps) a /= std::sqrt(norm2);
  return s;
}

void BM_Apply(benchmark::State& state, const std::string& name) {
  const Circuit c = load_fixture(name);
  const PureState in = random_state(c.num_qubits, 7);
  for (auto _ : state) benchmark::DoNotOptimize(apply(c, in));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(c.gates.size()));
}
BENCHMARK_CAPTURE(BM_Apply, alu_4q, "alu");
BENCHMARK_CAPTURE(BM_Apply, rd73_9q, "rd73");
BENCHMARK_CAPTURE(BM_Apply, rd84_15q, "rd84");

void BM_ApplyInverse(benchmark::State& state, const std::string& name) {
  const Circuit c = load_fixture(name);
  const PureState in = random_state(c.num_qubits, 9);
  for (auto _ : state) benchmark::DoNotOptimize(apply_inverse(c, in));
}
BENCHMARK_CAPTURE(BM_ApplyInverse, rd84_15q, "rd84");

// Small kept subset: the eigenvalue route over the 2^k-dimensional marginals.
void BM_ReducedFidelitySmallKeep(benchmark::State& state) {
  const std::uint32_t m = static_cast<std::uint32_t>(state.range(0));
  const PureState a = random_state(m, 11);
  const PureState b = random_state(m, 12);
  const std::vector<QubitId> keep = {0, 1, 2};
  for (auto _ : state)
    benchmark::DoNotOptimize(reduced_fidelity(a, keep, b, keep));
}
BENCHMARK(BM_ReducedFidelitySmallKeep)->Arg(8)->Arg(12);

// Large kept subset: the cross-Gram route over the traced-out side.
void BM_ReducedFidelityLargeKeep(benchmark::State& state) {
  const std::uint32_t m = static_cast<std::uint32_t>(state.range(0));
  const PureState a = random_state(m, 13);
  const PureState b = random_state(m, 14);
  std::vector<QubitId> keep;
  for (QubitId q = 0; q + 3 < m; ++q) keep.push_back(q);
  for (auto _ : state)
    benchmark::DoNotOptimize(reduced_fidelity(a, keep, b, keep));
}
BENCHMARK(BM_ReducedFidelityLargeKeep)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
