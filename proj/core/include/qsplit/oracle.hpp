// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "qsplit/qsim.hpp"
#include "qsplit/random.hpp"
#include "qsplit/split.hpp"

namespace qsplit {

struct NoiseModel {
  double p = 0.0;          // per-query chance of a state perturbation
  double readout_q = 0.0;  // per-qubit flip rate, measurement mode only
  std::uint64_t seed = 0;
};

struct QueryRecord {
  std::uint64_t index = 0;  // 0-based query number
  std::uint64_t input_digest = 0;
  std::uint64_t output_digest = 0;
};

class QueryLedger {
 public:
  std::uint64_t t() const noexcept { return transcript_.size(); }
  const std::vector<QueryRecord>& transcript() const noexcept {
    return transcript_;
  }
  std::optional<std::uint64_t> budget;
  std::optional<double> time_limit_seconds;

  void record(std::uint64_t input_digest, std::uint64_t output_digest);

  // One JSON object per line: {"index":i,"input":...,"output":...,"t":i+1}.
  void write_jsonl(std::ostream& out) const;

 private:
  std::vector<QueryRecord> transcript_;
};

std::uint64_t state_digest(const PureState& s);

// The attacker-facing surface: prepared-input queries and ledger reads only.
class AttackOracle {
 public:
  virtual ~AttackOracle() = default;
  virtual std::uint32_t num_qubits() const = 0;
  virtual PureState query_state(const PureState& input) = 0;
  virtual SampleCounts query_counts(const PureState& input,
                                    std::uint64_t shots) = 0;
  virtual const QueryLedger& ledger() const = 0;
};

// Saturating 10 * m! default query budget.
std::uint64_t default_budget(std::uint32_t m);

// Simulates the deployed device: Split 1, the hidden rewiring, then Split 2.
// Every query runs through the ledger; budget (default 10 * m!) and wall
// clock (default 300 s, counted from the first query) are enforced before
// the circuit is evaluated.
class SimulatedOracle : public AttackOracle {
 public:
  SimulatedOracle(SplitInstance instance, NoiseModel noise);

  std::uint32_t num_qubits() const override;
  PureState query_state(const PureState& input) override;
  SampleCounts query_counts(const PureState& input,
                            std::uint64_t shots) override;
  const QueryLedger& ledger() const override { return ledger_; }

  void set_budget(std::optional<std::uint64_t> budget);
  void set_time_limit(std::optional<double> seconds);

 private:
  PureState evaluate(const PureState& input, Rng& rng);
  void enforce_limits();

  SplitInstance instance_;
  NoiseModel noise_;
  QueryLedger ledger_;
  std::optional<std::chrono::steady_clock::time_point> first_query_;
};

}  // namespace qsplit
