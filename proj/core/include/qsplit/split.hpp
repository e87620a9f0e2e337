// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsplit/circuit.hpp"

namespace qsplit {

// pi[j] = Split-2 local input wire that receives Split-1 output wire j.
struct HiddenMapping {
  std::vector<std::uint32_t> pi;
};

bool is_permutation(const std::vector<std::uint32_t>& pi);
std::vector<std::uint32_t> inverse_permutation(const std::vector<std::uint32_t>& pi);

// Copy of c with every gate wire w rewritten to map[w].
Circuit relabel_wires(const Circuit& c, const std::vector<std::uint32_t>& map);

struct SplitInstance {
  Circuit split1;       // layers 1..L-n, original wire labels
  Circuit split2;       // layers L-n+1..L, local wire labels
  HiddenMapping hidden;
  std::uint32_t n = 0;  // requested Split-2 layer count
  std::string source_name;
};

// Cuts the circuit at the layer boundary L-n and hides the boundary wiring
// behind a seed-deterministic uniformly random permutation.
SplitInstance split(const Circuit& circuit, std::uint32_t n, std::uint64_t seed);

// Same cut with a caller-chosen mapping.
SplitInstance split_with_mapping(const Circuit& circuit, std::uint32_t n,
                                 HiddenMapping mapping);

// Split 1, then Split 2 with every local wire q rewritten to the Split-1
// wire feeding it (the preimage of q under the mapping).
Circuit recombine(const Circuit& split1, const HiddenMapping& mapping,
                  const Circuit& split2);

// JSON document with the public view at the top level and the mapping under
// the "secret" key, so harness code can withhold it from the attacker path.
std::string to_json(const SplitInstance& instance);
SplitInstance split_instance_from_json(const std::string& text);

}  // namespace qsplit
