// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qsplit {

using QubitId = std::uint32_t;

// Gate families. Mcx covers X (0 controls), CX, CCX and higher; Fredkin is a
// controlled SWAP with one or more controls. Peres gates are expanded to
// [CCX, CX] at construction and have no kind of their own.
enum class GateKind {
  Mcx,
  Swap,
  Fredkin,
  V,
  Vdag,
  H,
  S,
  Sdag,
  T,
  Tdag,
  Rx,
  Ry,
  Rz,
};

struct Gate {
  GateKind kind = GateKind::Mcx;
  std::vector<QubitId> controls;
  std::vector<QubitId> targets;
  double angle = 0.0;  // rotations only

  static Gate mcx(std::vector<QubitId> controls, QubitId target);
  static Gate x(QubitId target);
  static Gate cx(QubitId control, QubitId target);
  static Gate ccx(QubitId c0, QubitId c1, QubitId target);
  static Gate swap(QubitId a, QubitId b);
  static Gate fredkin(std::vector<QubitId> controls, QubitId a, QubitId b);
  static Gate v(std::vector<QubitId> controls, QubitId target);
  static Gate vdag(std::vector<QubitId> controls, QubitId target);
  static Gate h(QubitId target);
  static Gate s(QubitId target);
  static Gate sdag(QubitId target);
  static Gate t(QubitId target);
  static Gate tdag(QubitId target);
  static Gate rx(QubitId target, double angle);
  static Gate ry(QubitId target, double angle);
  static Gate rz(QubitId target, double angle);
};

bool operator==(const Gate& a, const Gate& b);

// Peres(a, b, c) acts as CCX(a, b; c) followed by CX(a; b).
std::array<Gate, 2> peres_expansion(QubitId a, QubitId b, QubitId c);

// All wires a gate touches: controls then targets.
std::vector<QubitId> gate_qubits(const Gate& g);

struct Circuit {
  std::uint32_t num_qubits = 0;
  std::vector<Gate> gates;
  std::string name;
};

// Throws std::invalid_argument when a gate has the wrong arity for its kind,
// repeats an operand, or references a wire outside [0, num_qubits).
void validate(const Circuit& c);

// ASAP greedy layering: each gate lands in the earliest layer after every
// earlier gate that shares a wire with it. Returns gate indices per layer.
std::vector<std::vector<std::size_t>> layers(const Circuit& c);

std::size_t depth(const Circuit& c);

Gate adjoint(const Gate& g);

// Reversed gate order with each gate replaced by its adjoint.
Circuit inverse(const Circuit& c);

// One connected component of the qubit interaction graph. Components are
// ordered by smallest member wire and partition [0, num_qubits).
struct QubitBlock {
  std::uint32_t id = 0;
  std::vector<QubitId> qubits;  // ascending

  std::size_t size() const { return qubits.size(); }
};

bool operator==(const QubitBlock& a, const QubitBlock& b);

// Connected components of the graph joining every pair of wires that
// co-occur in a multi-qubit gate; untouched wires come back as singletons.
std::vector<QubitBlock> interaction_components(const Circuit& c);

// True when every gate is a basis-state permutation (Mcx/Swap/Fredkin).
bool is_classical(const Circuit& c);

}  // namespace qsplit
