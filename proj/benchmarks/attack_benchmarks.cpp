// SPDX-License-Identifier: Apache-2.0
#include <string>

#include <benchmark/benchmark.h>

#include "qsplit/oracle.hpp"
#include "qsplit/random.hpp"
#include "qsplit/recover.hpp"
#include "qsplit/revlib.hpp"
#include "qsplit/split.hpp"

using namespace qsplit;

namespace {

Circuit load_fixture(const std::string& name) {
  return parse_real_file(std::string(QSPLIT_DATA_DIR) + "/" + name + ".real")
      .circuit;
}

AttackConfig product_config(std::uint64_t seed) {
  AttackConfig config;
  config.input_distribution = InputDistribution::random_product;
  config.seed = seed;
  return config;
}

void BM_Recover(benchmark::State& state, const std::string& name,
                std::uint32_t n) {
  const Circuit circuit = load_fixture(name);
  const SplitInstance inst = split(circuit, n, 42);
  std::uint64_t queries = 0;
  for (auto _ : state) {
    SimulatedOracle oracle(inst, NoiseModel{});
    const auto result =
        recover(inst.split1, inst.split2, oracle, product_config(3));
    benchmark::DoNotOptimize(result);
    queries = result.queries_used;
  }
  state.counters["queries"] = static_cast<double>(queries);
}
BENCHMARK_CAPTURE(BM_Recover, alu_n2, "alu", 2);
BENCHMARK_CAPTURE(BM_Recover, gt13_n3, "gt13", 3);
BENCHMARK_CAPTURE(BM_Recover, rd73_n4, "rd73", 4);
BENCHMARK_CAPTURE(BM_Recover, sym6_n7, "sym6", 7);

void BM_BruteForce(benchmark::State& state, const std::string& name,
                   std::uint32_t n) {
  const Circuit circuit = load_fixture(name);
  const SplitInstance inst = split(circuit, n, 42);
  std::uint64_t queries = 0;
  for (auto _ : state) {
    SimulatedOracle oracle(inst, NoiseModel{});
    const auto result =
        brute_force(inst.split1, inst.split2, oracle, product_config(3));
    benchmark::DoNotOptimize(result);
    queries = result.queries_used;
  }
  state.counters["queries"] = static_cast<double>(queries);
}
BENCHMARK_CAPTURE(BM_BruteForce, alu_n2, "alu", 2);

void BM_OracleQuery(benchmark::State& state, const std::string& name,
                    std::uint32_t n) {
  const Circuit circuit = load_fixture(name);
  const SplitInstance inst = split(circuit, n, 42);
  SimulatedOracle oracle(inst, NoiseModel{});
  const PureState in = basis_state(circuit.num_qubits, 1);
  for (auto _ : state) benchmark::DoNotOptimize(oracle.query_state(in));
}
BENCHMARK_CAPTURE(BM_OracleQuery, rd84_n7, "rd84", 7);

}  // namespace

BENCHMARK_MAIN();
