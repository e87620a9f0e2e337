// SPDX-License-Identifier: Apache-2.0
#include "qsplit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "qsplit/errors.hpp"

namespace qsplit {

void QueryLedger::record(std::uint64_t input_digest,
                         std::uint64_t output_digest) {
  transcript_.push_back(QueryRecord{t(), input_digest, output_digest});
}

void QueryLedger::write_jsonl(std::ostream& out) const {
  for (const QueryRecord& r : transcript_) {
    out << "{\"index\":" << r.index << ",\"input\":" << r.input_digest
        << ",\"output\":" << r.output_digest << ",\"t\":" << r.index + 1
        << "}\n";
  }
}

std::uint64_t state_digest(const PureState& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const Complex& a : s.amps) {
    unsigned char bytes[sizeof(Complex)];
    std::memcpy(bytes, &a, sizeof(Complex));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

std::uint64_t default_budget(std::uint32_t m) {
  std::uint64_t f = 1;
  for (std::uint32_t i = 2; i <= m; ++i) {
    if (f > UINT64_MAX / i) return UINT64_MAX;
    f *= i;
  }
  if (f > UINT64_MAX / 10) return UINT64_MAX;
  return 10 * f;
}

SimulatedOracle::SimulatedOracle(SplitInstance instance, NoiseModel noise)
    : instance_(std::move(instance)), noise_(noise) {
  if (noise_.p < 0.0 || noise_.p > 1.0 || noise_.readout_q < 0.0 ||
      noise_.readout_q > 1.0)
    throw std::invalid_argument("noise rates must lie in [0, 1]");
  ledger_.budget = default_budget(instance_.split1.num_qubits);
  ledger_.time_limit_seconds = 300.0;
}

std::uint32_t SimulatedOracle::num_qubits() const {
  return instance_.split1.num_qubits;
}

void SimulatedOracle::set_budget(std::optional<std::uint64_t> budget) {
  ledger_.budget = budget;
}

void SimulatedOracle::set_time_limit(std::optional<double> seconds) {
  ledger_.time_limit_seconds = seconds;
}

void SimulatedOracle::enforce_limits() {
  if (ledger_.budget && ledger_.t() >= *ledger_.budget)
    throw BudgetExhausted(ledger_.t());
  if (ledger_.time_limit_seconds && first_query_) {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      *first_query_)
            .count();
    if (elapsed > *ledger_.time_limit_seconds)
      throw TimeLimitExceeded(ledger_.t());
  }
  if (!first_query_) first_query_ = std::chrono::steady_clock::now();
}

PureState SimulatedOracle::evaluate(const PureState& input, Rng& rng) {
  if (input.num_qubits != num_qubits())
    throw std::invalid_argument("query state has the wrong qubit count");
  PureState out = apply(instance_.split1, input);
  out = permute_wires(out, instance_.hidden.pi);
  out = apply(instance_.split2, out);
  if (noise_.p > 0.0 && rng.bernoulli(noise_.p)) {
    // One uniformly chosen qubit is rotated about a Haar-random axis by an
    // angle with sin^2(theta/2) = p, so a perturbed output never drops below
    // fidelity 1-p against the ideal output.
    const QubitId q = static_cast<QubitId>(rng.bounded(out.num_qubits));
    const double z = 1.0 - 2.0 * rng.next_double();
    const double phi = 2.0 * 3.14159265358979323846 * rng.next_double();
    const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double nx = rxy * std::cos(phi), ny = rxy * std::sin(phi), nz = z;
    const double s = std::sqrt(noise_.p);
    const double c = std::sqrt(1.0 - noise_.p);
    const Complex u[2][2] = {
        {Complex(c, -s * nz), Complex(-s * ny, -s * nx)},
        {Complex(s * ny, -s * nx), Complex(c, s * nz)}};
    const std::uint64_t tmask = wire_mask(out.num_qubits, q);
    for (std::uint64_t i = 0; i < out.amps.size(); ++i) {
      if (i & tmask) continue;
      const Complex a0 = out.amps[i];
      const Complex a1 = out.amps[i | tmask];
      out.amps[i] = u[0][0] * a0 + u[0][1] * a1;
      out.amps[i | tmask] = u[1][0] * a0 + u[1][1] * a1;
    }
  }
  return out;
}

PureState SimulatedOracle::query_state(const PureState& input) {
  enforce_limits();
  Rng rng(mix_seed(noise_.seed, ledger_.t()));
  PureState out = evaluate(input, rng);
  ledger_.record(state_digest(input), state_digest(out));
  return out;
}

SampleCounts SimulatedOracle::query_counts(const PureState& input,
                                           std::uint64_t shots) {
  if (shots == 0) throw std::invalid_argument("zero shots");
  enforce_limits();
  Rng rng(mix_seed(noise_.seed, ledger_.t()));
  PureState out = evaluate(input, rng);

  std::vector<double> cdf(out.amps.size());
  double acc = 0.0;
  for (std::uint64_t i = 0; i < out.amps.size(); ++i) {
    acc += std::norm(out.amps[i]);
    cdf[i] = acc;
  }
  SampleCounts counts;
  counts.shots = shots;
  for (std::uint64_t n = 0; n < shots; ++n) {
    const double u = rng.next_double() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::uint64_t idx = static_cast<std::uint64_t>(it - cdf.begin());
    if (idx >= out.amps.size()) idx = out.amps.size() - 1;
    if (noise_.readout_q > 0.0) {
      for (std::uint32_t q = 0; q < out.num_qubits; ++q)
        if (rng.bernoulli(noise_.readout_q)) idx ^= wire_mask(out.num_qubits, q);
    }
    ++counts.counts[basis_label(out.num_qubits, idx)];
  }
  ledger_.record(state_digest(input), state_digest(out));
  return counts;
}

}  // namespace qsplit
