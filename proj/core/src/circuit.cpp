// SPDX-License-Identifier: Apache-2.0
#include "qsplit/circuit.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qsplit {

Gate Gate::mcx(std::vector<QubitId> controls, QubitId target) {
  return Gate{GateKind::Mcx, std::move(controls), {target}, 0.0};
}
Gate Gate::x(QubitId target) { return mcx({}, target); }
Gate Gate::cx(QubitId control, QubitId target) { return mcx({control}, target); }
Gate Gate::ccx(QubitId c0, QubitId c1, QubitId target) {
  return mcx({c0, c1}, target);
}
Gate Gate::swap(QubitId a, QubitId b) {
  return Gate{GateKind::Swap, {}, {a, b}, 0.0};
}
Gate Gate::fredkin(std::vector<QubitId> controls, QubitId a, QubitId b) {
  return Gate{GateKind::Fredkin, std::move(controls), {a, b}, 0.0};
}
Gate Gate::v(std::vector<QubitId> controls, QubitId target) {
  return Gate{GateKind::V, std::move(controls), {target}, 0.0};
}
Gate Gate::vdag(std::vector<QubitId> controls, QubitId target) {
  return Gate{GateKind::Vdag, std::move(controls), {target}, 0.0};
}
Gate Gate::h(QubitId target) { return Gate{GateKind::H, {}, {target}, 0.0}; }
Gate Gate::s(QubitId target) { return Gate{GateKind::S, {}, {target}, 0.0}; }
Gate Gate::sdag(QubitId target) {
  return Gate{GateKind::Sdag, {}, {target}, 0.0};
}
Gate Gate::t(QubitId target) { return Gate{GateKind::T, {}, {target}, 0.0}; }
Gate Gate::tdag(QubitId target) {
  return Gate{GateKind::Tdag, {}, {target}, 0.0};
}
Gate Gate::rx(QubitId target, double angle) {
  return Gate{GateKind::Rx, {}, {target}, angle};
}
Gate Gate::ry(QubitId target, double angle) {
  return Gate{GateKind::Ry, {}, {target}, angle};
}
Gate Gate::rz(QubitId target, double angle) {
  return Gate{GateKind::Rz, {}, {target}, angle};
}

bool operator==(const Gate& a, const Gate& b) {
  return a.kind == b.kind && a.controls == b.controls &&
         a.targets == b.targets && a.angle == b.angle;
}

std::array<Gate, 2> peres_expansion(QubitId a, QubitId b, QubitId c) {
  return {Gate::ccx(a, b, c), Gate::cx(a, b)};
}

std::vector<QubitId> gate_qubits(const Gate& g) {
  std::vector<QubitId> q = g.controls;
  q.insert(q.end(), g.targets.begin(), g.targets.end());
  return q;
}

bool operator==(const QubitBlock& a, const QubitBlock& b) {
  return a.id == b.id && a.qubits == b.qubits;
}

namespace {

void validate_gate(const Gate& g, std::uint32_t m) {
  std::size_t nt = g.targets.size();
  std::size_t nc = g.controls.size();
  switch (g.kind) {
    case GateKind::Mcx:
      if (nt != 1) throw std::invalid_argument("mcx gate needs 1 target");
      break;
    case GateKind::Swap:
      if (nt != 2 || nc != 0)
        throw std::invalid_argument("swap gate needs 2 targets, 0 controls");
      break;
    case GateKind::Fredkin:
      if (nt != 2 || nc < 1)
        throw std::invalid_argument(
            "fredkin gate needs 2 targets and at least 1 control");
      break;
    case GateKind::V:
    case GateKind::Vdag:
      if (nt != 1) throw std::invalid_argument("v gate needs 1 target");
      break;
    case GateKind::H:
    case GateKind::S:
    case GateKind::Sdag:
    case GateKind::T:
    case GateKind::Tdag:
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
      if (nt != 1 || nc != 0)
        throw std::invalid_argument(
            "single-qubit gate needs 1 target, 0 controls");
      break;
  }
  std::vector<QubitId> qs = gate_qubits(g);
  for (QubitId q : qs) {
    if (q >= m)
      throw std::invalid_argument("gate references wire " + std::to_string(q) +
                                  " outside [0, " + std::to_string(m) + ")");
  }
  std::sort(qs.begin(), qs.end());
  if (std::adjacent_find(qs.begin(), qs.end()) != qs.end())
    throw std::invalid_argument("gate repeats an operand");
}

}  // namespace

void validate(const Circuit& c) {
  for (const Gate& g : c.gates) validate_gate(g, c.num_qubits);
}

std::vector<std::vector<std::size_t>> layers(const Circuit& c) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::ptrdiff_t> last(c.num_qubits, -1);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    std::ptrdiff_t layer = 0;
    for (QubitId q : gate_qubits(c.gates[i]))
      layer = std::max(layer, last[q] + 1);
    if (static_cast<std::size_t>(layer) == out.size()) out.emplace_back();
    out[static_cast<std::size_t>(layer)].push_back(i);
    for (QubitId q : gate_qubits(c.gates[i]))
      last[q] = layer;
  }
  return out;
}

std::size_t depth(const Circuit& c) { return layers(c).size(); }

Gate adjoint(const Gate& g) {
  Gate out = g;
  switch (g.kind) {
    case GateKind::Mcx:
    case GateKind::Swap:
    case GateKind::Fredkin:
    case GateKind::H:
      break;
    case GateKind::V:
      out.kind = GateKind::Vdag;
      break;
    case GateKind::Vdag:
      out.kind = GateKind::V;
      break;
    case GateKind::S:
      out.kind = GateKind::Sdag;
      break;
    case GateKind::Sdag:
      out.kind = GateKind::S;
      break;
    case GateKind::T:
      out.kind = GateKind::Tdag;
      break;
    case GateKind::Tdag:
      out.kind = GateKind::T;
      break;
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
      out.angle = -g.angle;
      break;
  }
  return out;
}

Circuit inverse(const Circuit& c) {
  Circuit out;
  out.num_qubits = c.num_qubits;
  out.name = c.name.empty() ? std::string() : c.name + "_inv";
  out.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it)
    out.gates.push_back(adjoint(*it));
  return out;
}

namespace {

struct Dsu {
  std::vector<std::uint32_t> parent;
  explicit Dsu(std::uint32_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<QubitBlock> interaction_components(const Circuit& c) {
  Dsu dsu(c.num_qubits);
  for (const Gate& g : c.gates) {
    std::vector<QubitId> qs = gate_qubits(g);
    if (qs.size() < 2) continue;
    for (std::size_t i = 1; i < qs.size(); ++i) dsu.unite(qs[0], qs[i]);
  }
  std::vector<QubitBlock> blocks;
  std::vector<std::ptrdiff_t> index_of_root(c.num_qubits, -1);
  for (std::uint32_t q = 0; q < c.num_qubits; ++q) {
    std::uint32_t root = dsu.find(q);
    if (index_of_root[root] < 0) {
      index_of_root[root] = static_cast<std::ptrdiff_t>(blocks.size());
      blocks.push_back(QubitBlock{static_cast<std::uint32_t>(blocks.size()), {}});
    }
    blocks[static_cast<std::size_t>(index_of_root[root])].qubits.push_back(q);
  }
  return blocks;
}

bool is_classical(const Circuit& c) {
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::Mcx:
      case GateKind::Swap:
      case GateKind::Fredkin:
        break;
      default:
        return false;
    }
  }
  return true;
}

}  // namespace qsplit
