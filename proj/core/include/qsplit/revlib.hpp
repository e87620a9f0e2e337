// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "qsplit/circuit.hpp"

namespace qsplit {

// Header block of a RevLib .real file.
struct RealHeader {
  std::string version;
  std::uint32_t numvars = 0;
  std::vector<std::string> variables;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string constants;
  std::string garbage;
  std::vector<std::string> warnings;  // one note per skipped unknown directive
};

struct ParsedReal {
  Circuit circuit;
  RealHeader header;
};

// Parses the .real dialect: '.'-directives, '#' comments, and gate lines
// between .begin and .end. Supported gate families: t<n> (multi-controlled
// X, last operand is the target), f<n> (controlled SWAP, last two operands
// swap), v / v+ (controlled V / V-dagger, control then target), and p
// (Peres, stored as its two-gate expansion). Throws ParseError with the
// offending line number; negative controls ('-' prefix) are rejected.
ParsedReal parse_real(const std::string& text);
ParsedReal parse_real(std::istream& in);

// Reads and parses the file at `path`; the circuit name is the file stem.
ParsedReal parse_real_file(const std::string& path);

// Inverse of parse_real for circuits made of Mcx, Swap, Fredkin, and
// singly-controlled V/Vdag gates. Throws SerializationError for any gate
// with no .real encoding or when header.variables does not cover the
// circuit's wires.
std::string serialize_real(const Circuit& circuit, const RealHeader& header);

}  // namespace qsplit
