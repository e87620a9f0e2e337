// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsplit/circuit.hpp"

namespace qsplit {

using Complex = std::complex<double>;

// Statevector over m qubits, 2^m amplitudes. Qubit 0 is the top wire and the
// leftmost character of a basis label, so it owns the most significant bit of
// the amplitude index.
struct PureState {
  std::uint32_t num_qubits = 0;
  std::vector<Complex> amps;
};

inline std::uint64_t wire_mask(std::uint32_t m, QubitId q) {
  return 1ull << (m - 1 - q);
}

PureState basis_state(std::uint32_t m, std::uint64_t index);

// Tensor product of per-qubit states, factors[q] = (amp of |0>, amp of |1>).
PureState product_state(const std::vector<std::array<Complex, 2>>& factors);

std::string basis_label(std::uint32_t m, std::uint64_t index);

void apply_in_place(const Gate& g, PureState& s);
PureState apply(const Circuit& c, const PureState& s);

// apply(inverse(c), s), without materializing the inverse circuit.
PureState apply_inverse(const Circuit& c, const PureState& s);

// Basis-index propagation through a classical-reversible circuit, O(|gates|).
// Throws std::invalid_argument when the circuit has non-classical gates.
std::uint64_t apply_classical(const Circuit& c, std::uint64_t index);

// Moves the content of wire q to wire pi[q]; pi must be a bijection on wires.
PureState permute_wires(const PureState& s, const std::vector<std::uint32_t>& pi);

double fidelity_pure(const PureState& a, const PureState& b);

// Density matrix of a qubit subset; rho rows/cols are indexed with qubits[0]
// as the most significant bit.
struct ReducedState {
  std::vector<QubitId> qubits;
  Eigen::MatrixXcd rho;
};

// Partial trace over the complement of keep.
ReducedState reduced(const PureState& s, const std::vector<QubitId>& keep);

// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity_mixed(const ReducedState& a, const ReducedState& b);

// Uhlmann fidelity of the two marginals reduced(a, keep_a) and
// reduced(b, keep_b), identifying wire keep_a[i] with keep_b[i]. Never forms
// a density matrix bigger than the smaller of the kept and traced sides, so
// it stays cheap even when keep covers most of the register.
double reduced_fidelity(const PureState& a, const std::vector<QubitId>& keep_a,
                        const PureState& b, const std::vector<QubitId>& keep_b);

struct SampleCounts {
  std::uint64_t shots = 0;
  std::map<std::string, std::uint64_t> counts;
};

// Multinomial draw from |amplitude|^2, deterministic under fixed seed.
SampleCounts sample(const PureState& s, std::uint64_t shots,
                    std::uint64_t seed);

}  // namespace qsplit
