// SPDX-License-Identifier: Apache-2.0
#include <set>
#include <sstream>
#include <string>

#include <doctest.h>

#include "helpers/generators.hpp"
#include "qsplit/errors.hpp"
#include "qsplit/oracle.hpp"
#include "qsplit/qsim.hpp"
#include "qsplit/random.hpp"
#include "qsplit/revlib.hpp"
#include "qsplit/split.hpp"

using namespace qsplit;

namespace {

SplitInstance alu_instance(std::uint32_t n, std::uint64_t seed) {
  const Circuit alu =
      parse_real_file(std::string(QSPLIT_DATA_DIR) + "/alu.real").circuit;
  return split(alu, n, seed);
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("noiseless queries equal the recombined circuit") {
  const SplitInstance inst = alu_instance(2, 3);
  SimulatedOracle oracle(inst, NoiseModel{});
  const Circuit full = recombine(inst.split1, inst.hidden, inst.split2);
  for (std::uint64_t idx = 0; idx < 16; ++idx) {
    const PureState in = basis_state(4, idx);
    // Oracle outputs sit on Split-2 local wires, i.e. the recombined
    // circuit's output pushed through the hidden relabeling.
    const PureState expected =
        permute_wires(apply(full, in), inst.hidden.pi);
    CHECK(fidelity_pure(oracle.query_state(in), expected) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(oracle.ledger().t() == 16);
}

TEST_CASE("num_qubits reports the register width") {
  SimulatedOracle oracle(alu_instance(1, 0), NoiseModel{});
  CHECK(oracle.num_qubits() == 4);
}

TEST_CASE("ledger transcript grows by one per query") {
  SimulatedOracle oracle(alu_instance(2, 3), NoiseModel{});
  oracle.query_state(basis_state(4, 1));
  oracle.query_counts(basis_state(4, 2), 50);
  CHECK(oracle.ledger().t() == 2);
  const auto& transcript = oracle.ledger().transcript();
  REQUIRE(transcript.size() == 2);
  CHECK(transcript[0].index == 0);
  CHECK(transcript[1].index == 1);
  CHECK(transcript[0].input_digest != transcript[1].input_digest);
}

TEST_CASE("budget exhaustion throws before the over-limit query") {
  SimulatedOracle oracle(alu_instance(2, 3), NoiseModel{});
  oracle.set_budget(3);
  for (int i = 0; i < 3; ++i) oracle.query_state(basis_state(4, i));
  CHECK_THROWS_AS(oracle.query_state(basis_state(4, 3)), BudgetExhausted);
  CHECK(oracle.ledger().t() == 3);
  try {
    oracle.query_state(basis_state(4, 3));
  } catch (const BudgetExhausted& e) {
    CHECK(e.queries() == 3);
  }
}

TEST_CASE("zero time limit trips on the second query") {
  SimulatedOracle oracle(alu_instance(2, 3), NoiseModel{});
  oracle.set_time_limit(0.0);
  oracle.query_state(basis_state(4, 0));  // stamps the clock
  CHECK_THROWS_AS(oracle.query_state(basis_state(4, 1)), TimeLimitExceeded);
}

TEST_CASE("disturbance keeps a deterministic fidelity floor") {
  const SplitInstance inst = alu_instance(2, 3);
  const Circuit full = recombine(inst.split1, inst.hidden, inst.split2);
  const double p = 0.5;
  SimulatedOracle noisy(inst, NoiseModel{p, 0.0, 77});
  double worst = 1.0, sum = 0.0;
  const int queries = 200;
  for (int i = 0; i < queries; ++i) {
    const PureState in = basis_state(4, i % 16);
    const PureState clean = permute_wires(apply(full, in), inst.hidden.pi);
    const double f = fidelity_pure(noisy.query_state(in), clean);
    worst = std::min(worst, f);
    sum += f;
  }
  CHECK(worst >= 1.0 - p - 1e-9);
  CHECK(sum / queries < 1.0 - 1e-6);  // kicks do land
}

TEST_CASE("p = 0 reproduces the noiseless channel exactly") {
  const SplitInstance inst = alu_instance(1, 5);
  SimulatedOracle a(inst, NoiseModel{0.0, 0.0, 1});
  SimulatedOracle b(inst, NoiseModel{0.0, 0.0, 2});
  for (int i = 0; i < 8; ++i) {
    const PureState in = basis_state(4, i);
    CHECK(fidelity_pure(a.query_state(in), b.query_state(in)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("noise is reproducible under a fixed seed") {
  const SplitInstance inst = alu_instance(2, 3);
  SimulatedOracle a(inst, NoiseModel{0.7, 0.0, 42});
  SimulatedOracle b(inst, NoiseModel{0.7, 0.0, 42});
  for (int i = 0; i < 10; ++i) {
    const PureState in = basis_state(4, i);
    CHECK(fidelity_pure(a.query_state(in), b.query_state(in)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(a.ledger().transcript().back().output_digest ==
        b.ledger().transcript().back().output_digest);
}

TEST_CASE("full readout error complements every sampled label") {
  const SplitInstance inst = alu_instance(2, 3);
  SimulatedOracle clean(inst, NoiseModel{0.0, 0.0, 9});
  SimulatedOracle flipped(inst, NoiseModel{0.0, 1.0, 9});
  const PureState in = basis_state(4, 6);
  const SampleCounts a = clean.query_counts(in, 64);
  const SampleCounts b = flipped.query_counts(in, 64);
  REQUIRE(a.counts.size() == 1);  // classical circuit, basis input
  REQUIRE(b.counts.size() == 1);
  const std::string label = a.counts.begin()->first;
  std::string complement = label;
  for (char& ch : complement) ch = ch == '0' ? '1' : '0';
  CHECK(b.counts.begin()->first == complement);
  CHECK(b.counts.begin()->second == 64);
}

TEST_CASE("query_counts validates shots") {
  SimulatedOracle oracle(alu_instance(1, 0), NoiseModel{});
  CHECK_THROWS_AS(oracle.query_counts(basis_state(4, 0), 0),
                  std::invalid_argument);
}

TEST_CASE("constructor rejects out-of-range noise rates") {
  CHECK_THROWS_AS(SimulatedOracle(alu_instance(1, 0), NoiseModel{1.5, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SimulatedOracle(alu_instance(1, 0), NoiseModel{0, -0.1, 0}),
                  std::invalid_argument);
}

TEST_CASE("ledger serializes as JSON lines") {
  SimulatedOracle oracle(alu_instance(2, 3), NoiseModel{});
  oracle.query_state(basis_state(4, 0));
  oracle.query_state(basis_state(4, 1));
  std::ostringstream out;
  oracle.ledger().write_jsonl(out);
  std::istringstream in(out.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    CHECK(line.find("\"index\":" + std::to_string(lines)) !=
          std::string::npos);
    CHECK(line.find("\"t\":" + std::to_string(lines + 1)) !=
          std::string::npos);
    CHECK(line.find("\"input\":") != std::string::npos);
    CHECK(line.find("\"output\":") != std::string::npos);
    ++lines;
  }
  CHECK(lines == 2);
}

TEST_CASE("state digests separate distinct states") {
  std::set<std::uint64_t> digests;
  for (int i = 0; i < 16; ++i) digests.insert(state_digest(basis_state(4, i)));
  CHECK(digests.size() == 16);
  CHECK(state_digest(basis_state(4, 3)) == state_digest(basis_state(4, 3)));
}

TEST_CASE("default budget saturates instead of overflowing") {
  CHECK(default_budget(4) == 240);
  CHECK(default_budget(3) == 60);
  CHECK(default_budget(30) == UINT64_MAX);
  CHECK(default_budget(25) == UINT64_MAX);
  CHECK(default_budget(12) > default_budget(10));
}

}  // TEST_SUITE
