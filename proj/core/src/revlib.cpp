// SPDX-License-Identifier: Apache-2.0
#include "qsplit/revlib.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "qsplit/errors.hpp"

namespace qsplit {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : line) {
    if (ch == '#') break;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::string join(const std::vector<std::string>& tokens, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < tokens.size(); ++i) {
    if (i > from) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

struct RealParser {
  RealHeader header;
  Circuit circuit;
  std::unordered_map<std::string, QubitId> var_ids;
  bool saw_numvars = false;
  bool saw_variables = false;
  bool in_gates = false;
  bool saw_end = false;
  std::size_t lineno = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(lineno, msg);
  }

  void declare_variables(const std::vector<std::string>& names) {
    header.variables = names;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!var_ids.emplace(names[i], static_cast<QubitId>(i)).second)
        fail("duplicate variable name '" + names[i] + "'");
    }
    saw_variables = true;
  }

  void require_numvars(const std::string& where) {
    if (!saw_numvars)
      fail("missing .numvars directive (required before " + where + ")");
  }

  void begin_gates() {
    require_numvars(".begin");
    if (!saw_variables) {
      std::vector<std::string> names;
      names.reserve(header.numvars);
      for (std::uint32_t i = 0; i < header.numvars; ++i)
        names.push_back("x" + std::to_string(i));
      declare_variables(names);
    }
    circuit.num_qubits = header.numvars;
    in_gates = true;
  }

  void directive(const std::vector<std::string>& tokens) {
    const std::string& d = tokens[0];
    if (d == ".version") {
      header.version = join(tokens, 1);
    } else if (d == ".numvars") {
      if (tokens.size() != 2) fail(".numvars needs exactly one number");
      try {
        header.numvars = static_cast<std::uint32_t>(std::stoul(tokens[1]));
      } catch (const std::exception&) {
        fail(".numvars operand '" + tokens[1] + "' is not a number");
      }
      saw_numvars = true;
    } else if (d == ".variables") {
      require_numvars(".variables");
      if (tokens.size() - 1 != header.numvars)
        fail(".variables lists " + std::to_string(tokens.size() - 1) +
             " names, .numvars says " + std::to_string(header.numvars));
      declare_variables({tokens.begin() + 1, tokens.end()});
    } else if (d == ".inputs") {
      header.inputs.assign(tokens.begin() + 1, tokens.end());
    } else if (d == ".outputs") {
      header.outputs.assign(tokens.begin() + 1, tokens.end());
    } else if (d == ".constants") {
      header.constants = tokens.size() > 1 ? tokens[1] : "";
      if (saw_numvars && header.constants.size() != header.numvars)
        fail(".constants string length " +
             std::to_string(header.constants.size()) + " does not match " +
             std::to_string(header.numvars) + " variables");
    } else if (d == ".garbage") {
      header.garbage = tokens.size() > 1 ? tokens[1] : "";
      if (saw_numvars && header.garbage.size() != header.numvars)
        fail(".garbage string length " + std::to_string(header.garbage.size()) +
             " does not match " + std::to_string(header.numvars) +
             " variables");
    } else if (d == ".begin") {
      begin_gates();
    } else if (d == ".end") {
      in_gates = false;
      saw_end = true;
    } else {
      header.warnings.push_back("line " + std::to_string(lineno) +
                                ": skipped unknown directive " + d);
    }
  }

  QubitId wire(const std::string& name) {
    if (!name.empty() && name[0] == '-')
      fail("negative controls are not supported ('" + name + "')");
    auto it = var_ids.find(name);
    if (it == var_ids.end()) fail("undeclared variable '" + name + "'");
    return it->second;
  }

  void check_distinct(const std::vector<QubitId>& qs) {
    std::vector<QubitId> sorted = qs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail("duplicate operand in gate");
  }

  void gate_line(const std::vector<std::string>& tokens) {
    const std::string& mnemonic = tokens[0];
    std::vector<QubitId> operands;
    operands.reserve(tokens.size() - 1);
    for (std::size_t i = 1; i < tokens.size(); ++i)
      operands.push_back(wire(tokens[i]));
    check_distinct(operands);

    if (mnemonic == "v" || mnemonic == "v+") {
      if (operands.size() != 2)
        fail("'" + mnemonic + "' takes a control and a target, got " +
             std::to_string(operands.size()) + " operands");
      Gate g = mnemonic == "v" ? Gate::v({operands[0]}, operands[1])
                               : Gate::vdag({operands[0]}, operands[1]);
      circuit.gates.push_back(std::move(g));
      return;
    }
    if (mnemonic == "p") {
      if (operands.size() != 3)
        fail("'p' takes 3 operands, got " + std::to_string(operands.size()));
      for (const Gate& g :
           peres_expansion(operands[0], operands[1], operands[2]))
        circuit.gates.push_back(g);
      return;
    }

    char family = mnemonic[0];
    if ((family != 't' && family != 'f') || mnemonic.size() < 2 ||
        !std::all_of(mnemonic.begin() + 1, mnemonic.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c)) != 0;
        }))
      fail("unknown gate mnemonic '" + mnemonic + "'");
    std::size_t arity = std::stoul(mnemonic.substr(1));
    if (arity != operands.size())
      fail("'" + mnemonic + "' expects " + std::to_string(arity) +
           " operands, got " + std::to_string(operands.size()));

    if (family == 't') {
      if (arity < 1) fail("'t0' is not a gate");
      QubitId target = operands.back();
      operands.pop_back();
      circuit.gates.push_back(Gate::mcx(std::move(operands), target));
    } else {
      if (arity < 2)
        fail("'" + mnemonic + "' needs at least two operands to swap");
      QubitId b = operands.back();
      operands.pop_back();
      QubitId a = operands.back();
      operands.pop_back();
      if (arity == 2)
        circuit.gates.push_back(Gate::swap(a, b));
      else
        circuit.gates.push_back(Gate::fredkin(std::move(operands), a, b));
    }
  }

  void line(const std::string& raw) {
    ++lineno;
    std::vector<std::string> tokens = tokenize(raw);
    if (tokens.empty()) return;
    if (tokens[0][0] == '.') {
      directive(tokens);
      return;
    }
    if (saw_end) fail("gate line after .end");
    if (!in_gates) fail("gate line outside .begin/.end");
    gate_line(tokens);
  }

  ParsedReal finish() {
    ++lineno;
    if (!saw_numvars) fail("missing .numvars directive");
    if (in_gates) fail("missing .end directive");
    circuit.num_qubits = header.numvars;
    validate(circuit);
    return ParsedReal{std::move(circuit), std::move(header)};
  }
};

}  // namespace

ParsedReal parse_real(std::istream& in) {
  RealParser parser;
  std::string raw;
  while (std::getline(in, raw)) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    parser.line(raw);
  }
  return parser.finish();
}

ParsedReal parse_real(const std::string& text) {
  std::istringstream in(text);
  return parse_real(in);
}

ParsedReal parse_real_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  ParsedReal parsed = parse_real(in);
  parsed.circuit.name = std::filesystem::path(path).stem().string();
  return parsed;
}

namespace {

void append_operands(std::string& out, const Gate& g,
                     const std::vector<std::string>& names) {
  for (QubitId q : g.controls) out += " " + names[q];
  for (QubitId q : g.targets) out += " " + names[q];
}

const char* kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::Mcx: return "mcx";
    case GateKind::Swap: return "swap";
    case GateKind::Fredkin: return "fredkin";
    case GateKind::V: return "v";
    case GateKind::Vdag: return "v+";
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::Sdag: return "s+";
    case GateKind::T: return "t";
    case GateKind::Tdag: return "t+";
    case GateKind::Rx: return "rx";
    case GateKind::Ry: return "ry";
    case GateKind::Rz: return "rz";
  }
  return "?";
}

}  // namespace

std::string serialize_real(const Circuit& circuit, const RealHeader& header) {
  std::vector<std::string> names = header.variables;
  if (names.empty())
    for (std::uint32_t i = 0; i < circuit.num_qubits; ++i)
      names.push_back("x" + std::to_string(i));
  if (names.size() != circuit.num_qubits)
    throw SerializationError("header lists " + std::to_string(names.size()) +
                             " variables for a " +
                             std::to_string(circuit.num_qubits) +
                             "-qubit circuit");

  std::string out;
  if (!header.version.empty()) out += ".version " + header.version + "\n";
  out += ".numvars " + std::to_string(circuit.num_qubits) + "\n";
  out += ".variables";
  for (const std::string& n : names) out += " " + n;
  out += "\n";
  auto name_list = [&out](const char* directive,
                          const std::vector<std::string>& items) {
    if (items.empty()) return;
    out += directive;
    for (const std::string& n : items) out += " " + n;
    out += "\n";
  };
  name_list(".inputs", header.inputs);
  name_list(".outputs", header.outputs);
  if (!header.constants.empty()) out += ".constants " + header.constants + "\n";
  if (!header.garbage.empty()) out += ".garbage " + header.garbage + "\n";
  out += ".begin\n";

  for (const Gate& g : circuit.gates) {
    std::string line;
    switch (g.kind) {
      case GateKind::Mcx:
        line = "t" + std::to_string(g.controls.size() + 1);
        break;
      case GateKind::Swap:
        line = "f2";
        break;
      case GateKind::Fredkin:
        line = "f" + std::to_string(g.controls.size() + 2);
        break;
      case GateKind::V:
      case GateKind::Vdag:
        if (g.controls.size() != 1)
          throw SerializationError(
              "no .real encoding for a v gate with " +
              std::to_string(g.controls.size()) + " controls");
        line = g.kind == GateKind::V ? "v" : "v+";
        break;
      default:
        throw SerializationError(std::string("no .real encoding for ") +
                                 kind_name(g.kind) + " gates");
    }
    append_operands(line, g, names);
    out += line + "\n";
  }
  out += ".end\n";
  return out;
}

}  // namespace qsplit
