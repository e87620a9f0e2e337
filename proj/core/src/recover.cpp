// SPDX-License-Identifier: Apache-2.0
#include "qsplit/recover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsplit/errors.hpp"
#include "qsplit/split.hpp"

namespace qsplit {

std::string_view to_string(AttackOutcome outcome) {
  switch (outcome) {
    case AttackOutcome::recovered: return "recovered";
    case AttackOutcome::timeout: return "timeout";
    case AttackOutcome::budget_exhausted: return "budget_exhausted";
    case AttackOutcome::exhausted: return "exhausted";
  }
  return "?";
}

std::string_view to_string(BlockStatus status) {
  switch (status) {
    case BlockStatus::untested: return "untested";
    case BlockStatus::set_confirmed: return "set_confirmed";
    case BlockStatus::fully_mapped: return "fully_mapped";
    case BlockStatus::exhausted: return "exhausted";
  }
  return "?";
}

void TraceSink::event(std::string_view decision, std::uint32_t block_id,
                      const std::vector<QubitId>& candidate,
                      std::uint64_t t_after) {
  out_ << "{\"decision\":\"" << decision << "\",\"block\":" << block_id
       << ",\"candidate\":[";
  for (std::size_t i = 0; i < candidate.size(); ++i)
    out_ << (i ? "," : "") << candidate[i];
  out_ << "],\"t\":" << t_after << "}\n";
}

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

std::array<Complex, 2> haar_qubit(Rng& rng) {
  const double z = 1.0 - 2.0 * rng.next_double();
  const double az = kTau * rng.next_double();
  const double theta = std::acos(std::clamp(z, -1.0, 1.0));
  return {Complex(std::cos(theta / 2), 0.0),
          std::polar(std::sin(theta / 2), az)};
}

// Point i of an N-point Fibonacci-lattice constellation on the Bloch
// sphere; pairwise fidelities stay at or below 0.9 for N <= 15.
std::array<Complex, 2> constellation_point(std::size_t i, std::size_t N) {
  const double golden_angle = 2.39996322972865332;
  const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) /
                             static_cast<double>(N);
  const double az = golden_angle * static_cast<double>(i);
  const double theta = std::acos(std::clamp(z, -1.0, 1.0));
  return {Complex(std::cos(theta / 2), 0.0),
          std::polar(std::sin(theta / 2), az)};
}

struct Su2 {
  Complex a, b;  // columns (a, b) and (-conj(b), conj(a))
};

Su2 haar_su2(Rng& rng) {
  Complex a, b;
  double r2 = 0.0;
  do {
    a = Complex(rng.normal(), rng.normal());
    b = Complex(rng.normal(), rng.normal());
    r2 = std::norm(a) + std::norm(b);
  } while (r2 <= 1e-12);
  const double inv = 1.0 / std::sqrt(r2);
  return Su2{a * inv, b * inv};
}

std::array<Complex, 2> rotate(const Su2& u, const std::array<Complex, 2>& v) {
  return {u.a * v[0] - std::conj(u.b) * v[1],
          u.b * v[0] + std::conj(u.a) * v[1]};
}

std::uint64_t random_bits(std::uint32_t m, Rng& rng) {
  return m == 64 ? rng.next_u64() : rng.bounded(1ull << m);
}

// Boundary probe for one arrangement check. With random_basis, wire A[i]
// carries bit j of i (so positions get distinct bit codes across the k
// inputs) and every other wire a random bit. With random_product, wire A[i]
// carries constellation point i under a fresh common rotation and every
// other wire a fresh Haar state.
PureState prune_target(std::uint32_t m, const std::vector<QubitId>& A,
                       InputDistribution dist, std::uint32_t input_index,
                       Rng& rng) {
  if (dist == InputDistribution::random_basis) {
    std::uint64_t bits = random_bits(m, rng);
    for (std::size_t i = 0; i < A.size(); ++i) {
      const std::uint64_t mask = wire_mask(m, A[i]);
      if ((i >> input_index) & 1)
        bits |= mask;
      else
        bits &= ~mask;
    }
    return basis_state(m, bits);
  }
  const Su2 u = haar_su2(rng);
  std::vector<std::array<Complex, 2>> factors(m);
  for (std::uint32_t q = 0; q < m; ++q) factors[q] = haar_qubit(rng);
  for (std::size_t i = 0; i < A.size(); ++i)
    factors[A[i]] = rotate(u, constellation_point(i, A.size()));
  return product_state(factors);
}

std::vector<QubitId> complement_of(std::uint32_t m,
                                   const std::vector<QubitId>& subset) {
  std::vector<bool> in(m, false);
  for (QubitId q : subset) in[q] = true;
  std::vector<QubitId> out;
  for (std::uint32_t q = 0; q < m; ++q)
    if (!in[q]) out.push_back(q);
  return out;
}

// Every Split-2 gate whose wires all lie inside the block.
Circuit block_subcircuit(const Circuit& split2, const QubitBlock& block) {
  std::vector<bool> in(split2.num_qubits, false);
  for (QubitId q : block.qubits) in[q] = true;
  Circuit out;
  out.num_qubits = split2.num_qubits;
  for (const Gate& g : split2.gates) {
    bool inside = true;
    for (QubitId q : gate_qubits(g)) inside = inside && in[q];
    if (inside) out.gates.push_back(g);
  }
  return out;
}

}  // namespace

SensitizationPair sensitization_pair(const Circuit& split1,
                                     const std::vector<QubitId>& A,
                                     const std::vector<QubitId>& assigned,
                                     Rng& rng) {
  if (A.empty()) throw std::invalid_argument("candidate set is empty");
  const std::uint32_t m = split1.num_qubits;
  std::uint64_t amask = 0;
  for (QubitId q : A) {
    if (q >= m) throw std::invalid_argument("candidate wire out of range");
    if (std::find(assigned.begin(), assigned.end(), q) != assigned.end())
      throw std::invalid_argument("candidate set overlaps assigned wires");
    amask |= wire_mask(m, q);
  }
  const std::uint64_t bits = random_bits(m, rng);
  SensitizationPair pair;
  pair.target_a = basis_state(m, bits);
  pair.target_b = basis_state(m, bits ^ amask);
  pair.input_a = apply_inverse(split1, pair.target_a);
  pair.input_b = apply_inverse(split1, pair.target_b);
  return pair;
}

bool test_block_candidate(AttackOracle& oracle, const Circuit& split2,
                          const QubitBlock& block,
                          const SensitizationPair& pair, double epsilon) {
  const PureState out_a = oracle.query_state(pair.input_a);
  const PureState out_b = oracle.query_state(pair.input_b);
  const std::vector<QubitId> keep =
      complement_of(split2.num_qubits, block.qubits);
  if (keep.empty()) return true;  // the block is the whole register
  return reduced_fidelity(out_a, keep, out_b, keep) >= 1.0 - epsilon;
}

std::vector<QubitId> prune_permutations(AttackOracle& oracle,
                                        const Circuit& split1,
                                        const Circuit& split2,
                                        const QubitBlock& block,
                                        const std::vector<QubitId>& A,
                                        const AttackConfig& config, Rng& rng,
                                        TraceSink* trace) {
  if (A.size() != block.size())
    throw std::invalid_argument("candidate set size does not match block");
  const std::uint32_t m = split1.num_qubits;
  const Circuit block_gates = block_subcircuit(split2, block);

  std::vector<QubitId> arrangement = A;
  std::sort(arrangement.begin(), arrangement.end());
  do {
    // Candidate circuit: Split 1, then the block's gates pulled back onto
    // the Split-1 wires the arrangement assigns them to.
    std::vector<std::uint32_t> pullback(m);
    for (std::uint32_t q = 0; q < m; ++q) pullback[q] = q;
    for (std::size_t i = 0; i < block.qubits.size(); ++i)
      pullback[block.qubits[i]] = arrangement[i];
    Circuit candidate = split1;
    const Circuit rewired = relabel_wires(block_gates, pullback);
    candidate.gates.insert(candidate.gates.end(), rewired.gates.begin(),
                           rewired.gates.end());

    bool all_passed = true;
    for (std::uint32_t j = 0; j < config.permutation_check_inputs; ++j) {
      const PureState target =
          prune_target(m, A, config.input_distribution, j, rng);
      const PureState input = apply_inverse(split1, target);
      const PureState observed = oracle.query_state(input);
      const PureState predicted = apply(candidate, input);
      const double f =
          reduced_fidelity(observed, block.qubits, predicted, arrangement);
      if (f < 1.0 - config.epsilon) {
        all_passed = false;
        break;
      }
    }
    if (trace)
      trace->event(all_passed ? "perm_accepted" : "perm_rejected", block.id,
                   arrangement, oracle.ledger().t());
    if (all_passed) return arrangement;
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));

  throw AllPermutationsRejected(
      "every arrangement of the confirmed set was rejected");
}

namespace {

// Lexicographic b-combinations out of a fixed ascending pool.
struct CombinationCursor {
  std::vector<std::size_t> idx;
  std::size_t pool_size = 0;
  bool started = false;

  bool next(std::size_t b) {
    if (!started) {
      started = true;
      if (b > pool_size) return false;
      idx.resize(b);
      for (std::size_t i = 0; i < b; ++i) idx[i] = i;
      return true;
    }
    const std::size_t b_now = idx.size();
    std::size_t i = b_now;
    while (i > 0) {
      --i;
      if (idx[i] != i + pool_size - b_now) {
        ++idx[i];
        for (std::size_t j = i + 1; j < b_now; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  }
};

struct Frame {
  BlockAssignment ba;
  std::vector<QubitId> pool;  // unassigned wires at frame entry, ascending
  CombinationCursor cursor;
};

Frame make_frame(const QubitBlock& block, const std::vector<bool>& assigned) {
  Frame f;
  f.ba.block = block;
  for (std::uint32_t q = 0; q < assigned.size(); ++q)
    if (!assigned[q]) f.pool.push_back(q);
  f.cursor.pool_size = f.pool.size();
  return f;
}

std::vector<QubitId> assigned_list(const std::vector<bool>& assigned) {
  std::vector<QubitId> out;
  for (std::uint32_t q = 0; q < assigned.size(); ++q)
    if (assigned[q]) out.push_back(q);
  return out;
}

std::vector<QubitBlock> blocks_in_processing_order(const Circuit& split2) {
  std::vector<QubitBlock> blocks = interaction_components(split2);
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const QubitBlock& a, const QubitBlock& b) {
                     return a.size() < b.size();
                   });
  return blocks;
}

RecoveredMapping finish(AttackOutcome outcome, std::vector<Frame>& frames,
                        const std::vector<QubitBlock>& blocks,
                        std::uint64_t queries) {
  RecoveredMapping out;
  out.outcome = outcome;
  out.queries_used = queries;
  for (const Frame& f : frames) out.per_block.push_back(f.ba);
  for (std::size_t i = frames.size(); i < blocks.size(); ++i)
    out.per_block.push_back(BlockAssignment{blocks[i], {}, {}, BlockStatus::untested});
  return out;
}

}  // namespace

RecoveredMapping recover(const Circuit& split1, const Circuit& split2,
                         AttackOracle& oracle, const AttackConfig& config,
                         TraceSink* trace) {
  if (split1.num_qubits != split2.num_qubits)
    throw std::invalid_argument("split halves disagree on qubit count");
  const std::uint32_t m = split1.num_qubits;
  const std::vector<QubitBlock> blocks = blocks_in_processing_order(split2);
  const std::uint64_t t0 = oracle.ledger().t();
  Rng rng(config.seed);

  std::vector<bool> assigned(m, false);
  std::vector<Frame> frames;
  frames.push_back(make_frame(blocks[0], assigned));

  try {
    while (true) {
      Frame& cur = frames.back();
      if (!cur.cursor.next(cur.ba.block.size())) {
        cur.ba.status = BlockStatus::exhausted;
        cur.ba.candidate_set.clear();
        cur.ba.assignment.clear();
        if (trace)
          trace->event("block_exhausted", cur.ba.block.id, {},
                       oracle.ledger().t());
        if (!config.backtracking || frames.size() == 1)
          return finish(AttackOutcome::exhausted, frames, blocks,
                        oracle.ledger().t() - t0);
        frames.pop_back();
        Frame& prev = frames.back();
        for (QubitId q : prev.ba.candidate_set) assigned[q] = false;
        prev.ba.candidate_set.clear();
        prev.ba.assignment.clear();
        prev.ba.status = BlockStatus::untested;
        if (trace)
          trace->event("backtrack", prev.ba.block.id, {}, oracle.ledger().t());
        continue;
      }

      std::vector<QubitId> A;
      A.reserve(cur.ba.block.size());
      for (std::size_t i : cur.cursor.idx) A.push_back(cur.pool[i]);
      cur.ba.candidate_set = A;
      cur.ba.status = BlockStatus::untested;

      bool confirmed = true;
      const std::vector<QubitId> assigned_now = assigned_list(assigned);
      for (std::uint32_t rep = 0; rep < config.sensitization_repeats; ++rep) {
        const SensitizationPair pair =
            sensitization_pair(split1, A, assigned_now, rng);
        if (!test_block_candidate(oracle, split2, cur.ba.block, pair,
                                  config.epsilon)) {
          confirmed = false;
          break;
        }
      }
      if (trace)
        trace->event(confirmed ? "set_accepted" : "set_rejected",
                     cur.ba.block.id, A, oracle.ledger().t());
      if (!confirmed) continue;
      cur.ba.status = BlockStatus::set_confirmed;

      try {
        cur.ba.assignment = prune_permutations(
            oracle, split1, split2, cur.ba.block, A, config, rng, trace);
      } catch (const AllPermutationsRejected&) {
        if (trace)
          trace->event("set_discarded", cur.ba.block.id, A,
                       oracle.ledger().t());
        continue;
      }
      cur.ba.status = BlockStatus::fully_mapped;
      for (QubitId q : A) assigned[q] = true;
      if (trace)
        trace->event("block_mapped", cur.ba.block.id, cur.ba.assignment,
                     oracle.ledger().t());

      if (frames.size() == blocks.size()) {
        RecoveredMapping out = finish(AttackOutcome::recovered, frames, blocks,
                                      oracle.ledger().t() - t0);
        out.pi_hat.assign(m, 0);
        for (const BlockAssignment& ba : out.per_block)
          for (std::size_t i = 0; i < ba.block.qubits.size(); ++i)
            out.pi_hat[ba.assignment[i]] = ba.block.qubits[i];
        return out;
      }
      frames.push_back(make_frame(blocks[frames.size()], assigned));
    }
  } catch (const BudgetExhausted&) {
    return finish(AttackOutcome::budget_exhausted, frames, blocks,
                  oracle.ledger().t() - t0);
  } catch (const TimeLimitExceeded&) {
    return finish(AttackOutcome::timeout, frames, blocks,
                  oracle.ledger().t() - t0);
  }
}

RecoveredMapping brute_force(const Circuit& split1, const Circuit& split2,
                             AttackOracle& oracle, const AttackConfig& config,
                             TraceSink* trace) {
  if (split1.num_qubits != split2.num_qubits)
    throw std::invalid_argument("split halves disagree on qubit count");
  const std::uint32_t m = split1.num_qubits;
  const std::uint64_t t0 = oracle.ledger().t();
  Rng rng(config.seed);

  const auto fresh_input = [&]() {
    if (config.input_distribution == InputDistribution::random_basis)
      return basis_state(m, random_bits(m, rng));
    std::vector<std::array<Complex, 2>> factors(m);
    for (std::uint32_t q = 0; q < m; ++q) factors[q] = haar_qubit(rng);
    return product_state(factors);
  };
  const auto matches = [&](const std::vector<std::uint32_t>& sigma) {
    const PureState input = fresh_input();
    const PureState observed = oracle.query_state(input);
    const PureState predicted =
        apply(split2, permute_wires(apply(split1, input), sigma));
    return fidelity_pure(predicted, observed) >= 1.0 - config.epsilon;
  };

  RecoveredMapping out;
  try {
    std::vector<std::vector<std::uint32_t>> survivors;
    std::vector<std::uint32_t> sigma(m);
    for (std::uint32_t j = 0; j < m; ++j) sigma[j] = j;
    do {
      if (matches(sigma)) {
        survivors.push_back(sigma);
        if (trace)
          trace->event("mapping_survived", 0, sigma, oracle.ledger().t());
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    for (const std::vector<std::uint32_t>& cand : survivors) {
      bool ok = true;
      for (std::uint32_t j = 0; ok && j < config.permutation_check_inputs; ++j)
        ok = matches(cand);
      if (trace)
        trace->event(ok ? "mapping_confirmed" : "mapping_dropped", 0, cand,
                     oracle.ledger().t());
      if (ok) {
        out.pi_hat = cand;
        out.outcome = AttackOutcome::recovered;
        out.queries_used = oracle.ledger().t() - t0;
        return out;
      }
    }
    out.outcome = AttackOutcome::exhausted;
  } catch (const BudgetExhausted&) {
    out.outcome = AttackOutcome::budget_exhausted;
  } catch (const TimeLimitExceeded&) {
    out.outcome = AttackOutcome::timeout;
  }
  out.queries_used = oracle.ledger().t() - t0;
  return out;
}

std::uint64_t query_upper_bound(const std::vector<QubitBlock>& blocks,
                                std::uint32_t m, std::uint32_t r,
                                std::uint32_t k) {
  std::vector<bool> seen(m, false);
  std::size_t covered = 0;
  for (const QubitBlock& b : blocks) {
    for (QubitId q : b.qubits) {
      if (q >= m || seen[q])
        throw std::invalid_argument("blocks do not partition the wires");
      seen[q] = true;
      ++covered;
    }
  }
  if (covered != m)
    throw std::invalid_argument("blocks do not partition the wires");

  std::vector<std::size_t> sizes;
  for (const QubitBlock& b : blocks) sizes.push_back(b.size());
  std::sort(sizes.begin(), sizes.end());

  const auto choose = [](std::uint64_t n, std::uint64_t b) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 1; i <= b; ++i) out = out * (n - b + i) / i;
    return out;
  };
  const auto factorial = [](std::uint64_t b) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 2; i <= b; ++i) out *= i;
    return out;
  };

  std::uint64_t total = 0;
  std::uint64_t unassigned = m;
  for (std::size_t b : sizes) {
    total += 2ull * r * choose(unassigned, b) + k * factorial(b);
    unassigned -= b;
  }
  return total;
}

}  // namespace qsplit
