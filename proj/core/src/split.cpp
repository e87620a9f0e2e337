// SPDX-License-Identifier: Apache-2.0
#include "qsplit/split.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "qsplit/random.hpp"

namespace qsplit {

bool is_permutation(const std::vector<std::uint32_t>& pi) {
  std::vector<bool> seen(pi.size(), false);
  for (std::uint32_t v : pi) {
    if (v >= pi.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::vector<std::uint32_t> inverse_permutation(
    const std::vector<std::uint32_t>& pi) {
  if (!is_permutation(pi))
    throw std::invalid_argument("wire map is not a permutation");
  std::vector<std::uint32_t> inv(pi.size());
  for (std::uint32_t j = 0; j < pi.size(); ++j) inv[pi[j]] = j;
  return inv;
}

Circuit relabel_wires(const Circuit& c, const std::vector<std::uint32_t>& map) {
  if (map.size() != c.num_qubits)
    throw std::invalid_argument("wire map size does not match qubit count");
  Circuit out = c;
  for (Gate& g : out.gates) {
    for (QubitId& q : g.controls) q = map[q];
    for (QubitId& q : g.targets) q = map[q];
  }
  return out;
}

namespace {

// Gate indices of the first L-n layers and the last n layers, each in
// original gate order.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> cut_indices(
    const Circuit& circuit, std::uint32_t n) {
  validate(circuit);
  const auto packed = layers(circuit);
  const std::size_t L = packed.size();
  if (L < 2)
    throw std::invalid_argument("cannot split a circuit with fewer than 2 layers");
  if (n < 1 || n > L - 1)
    throw std::invalid_argument("split depth n must be in [1, L-1], got " +
                                std::to_string(n));
  std::vector<std::size_t> head, tail;
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t idx : packed[l])
      (l < L - n ? head : tail).push_back(idx);
  std::sort(head.begin(), head.end());
  std::sort(tail.begin(), tail.end());
  return {std::move(head), std::move(tail)};
}

Circuit gather(const Circuit& circuit, const std::vector<std::size_t>& indices,
               const std::string& suffix) {
  Circuit out;
  out.num_qubits = circuit.num_qubits;
  out.name = circuit.name.empty() ? std::string() : circuit.name + suffix;
  out.gates.reserve(indices.size());
  for (std::size_t idx : indices) out.gates.push_back(circuit.gates[idx]);
  return out;
}

}  // namespace

SplitInstance split_with_mapping(const Circuit& circuit, std::uint32_t n,
                                 HiddenMapping mapping) {
  if (mapping.pi.size() != circuit.num_qubits || !is_permutation(mapping.pi))
    throw std::invalid_argument("hidden mapping is not a permutation of the wires");
  auto [head, tail] = cut_indices(circuit, n);
  SplitInstance out;
  out.split1 = gather(circuit, head, ".split1");
  out.split2 = relabel_wires(gather(circuit, tail, ".split2"), mapping.pi);
  out.hidden = std::move(mapping);
  out.n = n;
  out.source_name = circuit.name;
  return out;
}

SplitInstance split(const Circuit& circuit, std::uint32_t n,
                    std::uint64_t seed) {
  Rng rng(seed);
  return split_with_mapping(circuit, n,
                            HiddenMapping{rng.permutation(circuit.num_qubits)});
}

Circuit recombine(const Circuit& split1, const HiddenMapping& mapping,
                  const Circuit& split2) {
  if (split1.num_qubits != split2.num_qubits)
    throw std::invalid_argument("split halves disagree on qubit count");
  const std::vector<std::uint32_t> inv = inverse_permutation(mapping.pi);
  if (inv.size() != split1.num_qubits)
    throw std::invalid_argument("mapping size does not match qubit count");
  Circuit out;
  out.num_qubits = split1.num_qubits;
  out.name = "reconstructed";
  out.gates = split1.gates;
  const Circuit rewired = relabel_wires(split2, inv);
  out.gates.insert(out.gates.end(), rewired.gates.begin(), rewired.gates.end());
  return out;
}

namespace {

using nlohmann::json;

const char* kind_token(GateKind kind) {
  switch (kind) {
    case GateKind::Mcx: return "mcx";
    case GateKind::Swap: return "swap";
    case GateKind::Fredkin: return "fredkin";
    case GateKind::V: return "v";
    case GateKind::Vdag: return "vdag";
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::Sdag: return "sdag";
    case GateKind::T: return "t";
    case GateKind::Tdag: return "tdag";
    case GateKind::Rx: return "rx";
    case GateKind::Ry: return "ry";
    case GateKind::Rz: return "rz";
  }
  return "?";
}

GateKind kind_from_token(const std::string& token) {
  static const std::pair<const char*, GateKind> table[] = {
      {"mcx", GateKind::Mcx},     {"swap", GateKind::Swap},
      {"fredkin", GateKind::Fredkin}, {"v", GateKind::V},
      {"vdag", GateKind::Vdag},   {"h", GateKind::H},
      {"s", GateKind::S},         {"sdag", GateKind::Sdag},
      {"t", GateKind::T},         {"tdag", GateKind::Tdag},
      {"rx", GateKind::Rx},       {"ry", GateKind::Ry},
      {"rz", GateKind::Rz},
  };
  for (const auto& [name, kind] : table)
    if (token == name) return kind;
  throw std::invalid_argument("unknown gate kind '" + token + "'");
}

json circuit_to_json(const Circuit& c) {
  json gates = json::array();
  for (const Gate& g : c.gates) {
    json item{{"kind", kind_token(g.kind)},
              {"controls", g.controls},
              {"targets", g.targets}};
    if (g.kind == GateKind::Rx || g.kind == GateKind::Ry ||
        g.kind == GateKind::Rz)
      item["angle"] = g.angle;
    gates.push_back(std::move(item));
  }
  return json{{"num_qubits", c.num_qubits}, {"name", c.name}, {"gates", gates}};
}

Circuit circuit_from_json(const json& j) {
  Circuit c;
  c.num_qubits = j.at("num_qubits").get<std::uint32_t>();
  c.name = j.value("name", std::string());
  for (const json& item : j.at("gates")) {
    Gate g;
    g.kind = kind_from_token(item.at("kind").get<std::string>());
    g.controls = item.at("controls").get<std::vector<QubitId>>();
    g.targets = item.at("targets").get<std::vector<QubitId>>();
    g.angle = item.value("angle", 0.0);
    c.gates.push_back(std::move(g));
  }
  validate(c);
  return c;
}

}  // namespace

std::string to_json(const SplitInstance& instance) {
  json doc{{"source", instance.source_name},
           {"num_qubits", instance.split1.num_qubits},
           {"n", instance.n},
           {"split1", circuit_to_json(instance.split1)},
           {"split2", circuit_to_json(instance.split2)},
           {"secret", json{{"pi", instance.hidden.pi}}}};
  return doc.dump(2) + "\n";
}

SplitInstance split_instance_from_json(const std::string& text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded())
    throw std::invalid_argument("split instance document is not valid JSON");
  SplitInstance out;
  try {
    out.source_name = doc.value("source", std::string());
    out.n = doc.at("n").get<std::uint32_t>();
    out.split1 = circuit_from_json(doc.at("split1"));
    out.split2 = circuit_from_json(doc.at("split2"));
    out.hidden.pi =
        doc.at("secret").at("pi").get<std::vector<std::uint32_t>>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(
        std::string("split instance document: ") + e.what());
  }
  if (out.split1.num_qubits != out.split2.num_qubits ||
      !is_permutation(out.hidden.pi) ||
      out.hidden.pi.size() != out.split1.num_qubits)
    throw std::invalid_argument("split instance document is inconsistent");
  return out;
}

}  // namespace qsplit
