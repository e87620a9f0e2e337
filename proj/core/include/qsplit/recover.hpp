// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "qsplit/circuit.hpp"
#include "qsplit/oracle.hpp"
#include "qsplit/qsim.hpp"
#include "qsplit/random.hpp"

namespace qsplit {

enum class InputDistribution { random_basis, random_product };

struct AttackConfig {
  double epsilon = 0.03;
  std::uint32_t sensitization_repeats = 1;    // r: pairs per candidate set
  std::uint32_t permutation_check_inputs = 1; // k: queries per arrangement
  InputDistribution input_distribution = InputDistribution::random_basis;
  bool backtracking = true;
  std::uint64_t seed = 0;
};

enum class BlockStatus { untested, set_confirmed, fully_mapped, exhausted };

struct BlockAssignment {
  QubitBlock block;                    // Split-2 local wires, ascending
  std::vector<QubitId> candidate_set;  // A: Split-1 wires, ascending
  // assignment[i] is the Split-1 wire mapped onto block.qubits[i]; empty
  // until a permutation is accepted.
  std::vector<QubitId> assignment;
  BlockStatus status = BlockStatus::untested;
};

enum class AttackOutcome { recovered, timeout, budget_exhausted, exhausted };

std::string_view to_string(AttackOutcome outcome);
std::string_view to_string(BlockStatus status);

struct RecoveredMapping {
  std::vector<std::uint32_t> pi_hat;  // meaningful only when recovered
  std::vector<BlockAssignment> per_block;
  std::uint64_t queries_used = 0;
  AttackOutcome outcome = AttackOutcome::exhausted;
};

// JSON-lines attack trace: one event per candidate decision.
class TraceSink {
 public:
  explicit TraceSink(std::ostream& out) : out_(out) {}
  void event(std::string_view decision, std::uint32_t block_id,
             const std::vector<QubitId>& candidate, std::uint64_t t_after);

 private:
  std::ostream& out_;
};

// Boundary targets Phi/Phi' differing on exactly the wires in A, and the
// circuit inputs I/I' that steer Split 1 onto them.
struct SensitizationPair {
  PureState input_a, input_b;    // |I>, |I'>
  PureState target_a, target_b;  // |Phi>, |Phi'>
};

// A must be non-empty and disjoint from `assigned`.
SensitizationPair sensitization_pair(const Circuit& split1,
                                     const std::vector<QubitId>& A,
                                     const std::vector<QubitId>& assigned,
                                     Rng& rng);

// Two oracle queries; true iff the outputs agree (fidelity >= 1 - epsilon)
// once the block's wires are traced out.
bool test_block_candidate(AttackOracle& oracle, const Circuit& split2,
                          const QubitBlock& block,
                          const SensitizationPair& pair, double epsilon);

// Tries every arrangement of A onto block.qubits in lexicographic order,
// checking each with k fresh oracle queries against a simulation of Split 1
// plus the block's gates rewired through the arrangement. Returns the first
// arrangement all of whose checks pass (assignment[i] -> block.qubits[i]);
// throws AllPermutationsRejected when none does.
std::vector<QubitId> prune_permutations(AttackOracle& oracle,
                                        const Circuit& split1,
                                        const Circuit& split2,
                                        const QubitBlock& block,
                                        const std::vector<QubitId>& A,
                                        const AttackConfig& config, Rng& rng,
                                        TraceSink* trace = nullptr);

// Hierarchical recovery: blocks in ascending size, candidate sets in
// lexicographic order over unassigned wires, permutation pruning per
// confirmed set, depth-first backtracking on all-permutations-rejected.
RecoveredMapping recover(const Circuit& split1, const Circuit& split2,
                         AttackOracle& oracle, const AttackConfig& config,
                         TraceSink* trace = nullptr);

// Baseline: walk all m! wire mappings lexicographically, one fresh query
// each, then confirm the first survivor with k more queries.
RecoveredMapping brute_force(const Circuit& split1, const Circuit& split2,
                             AttackOracle& oracle, const AttackConfig& config,
                             TraceSink* trace = nullptr);

// Worst-case ledger ceiling for recover under the enumeration orders above:
// sum over blocks (ascending size) of 2r * C(unassigned, b) + k * b!.
std::uint64_t query_upper_bound(const std::vector<QubitBlock>& blocks,
                                std::uint32_t m, std::uint32_t r = 1,
                                std::uint32_t k = 1);

}  // namespace qsplit
