// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: parse/split/attack/sweep/chart.
//
// Exit codes: 0 success, 2 input parse or I/O failure, 3 attack finished
// without a confirmed-equivalent mapping, 4 bad flags or config.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsplit/circuit.hpp"
#include "qsplit/equiv.hpp"
#include "qsplit/errors.hpp"
#include "qsplit/oracle.hpp"
#include "qsplit/random.hpp"
#include "qsplit/recover.hpp"
#include "qsplit/revlib.hpp"
#include "qsplit/split.hpp"
#include "qsplit/sweep.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kAttackFailed = 3;
constexpr int kUsageError = 4;

struct ParseOptions {
  std::string file;
  std::optional<std::uint32_t> n;
};

struct SplitOptions {
  std::string file;
  std::uint32_t n = 1;
  std::uint64_t seed = 0;
  std::string output;
};

struct AttackOptions {
  std::string instance_file;
  std::string attack = "hier";
  double epsilon = 0.03;
  double noise_p = 0.0;
  double readout_q = 0.0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> budget;
  std::optional<double> time_limit;
  std::uint32_t repeats = 1;
  std::uint32_t perm_inputs = 1;
  std::string distribution = "random_basis";
  bool no_backtracking = false;
  std::string trace_file;
  std::string transcript_file;
};

struct SweepOptions {
  std::string config_file;
  std::string output_dir;
};

struct ChartOptions {
  std::string csv_file;
  std::string output;
};

std::vector<qsplit::QubitBlock> ordered_blocks(const qsplit::Circuit& tail) {
  auto blocks = qsplit::interaction_components(tail);
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const qsplit::QubitBlock& a, const qsplit::QubitBlock& b) {
                     return a.size() < b.size();
                   });
  return blocks;
}

void print_blocks(std::uint32_t n, const qsplit::Circuit& circuit,
                  const std::vector<std::string>& names) {
  qsplit::HiddenMapping identity;
  identity.pi.resize(circuit.num_qubits);
  std::iota(identity.pi.begin(), identity.pi.end(), 0u);
  const auto instance = qsplit::split_with_mapping(circuit, n, identity);
  std::cout << "n = " << n << ":";
  for (const auto& block : ordered_blocks(instance.split2)) {
    std::cout << " {";
    for (std::size_t i = 0; i < block.qubits.size(); ++i)
      std::cout << (i ? " " : "") << names[block.qubits[i]];
    std::cout << "}";
  }
  std::cout << '\n';
}

int run_parse(const ParseOptions& opt) {
  qsplit::ParsedReal parsed;
  try {
    parsed = qsplit::parse_real_file(opt.file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << opt.file << ": " << e.what() << '\n';
    return kInputError;
  }
  const qsplit::Circuit& circuit = parsed.circuit;
  const std::size_t L = qsplit::depth(circuit);
  std::cout << "m = " << circuit.num_qubits << '\n';
  std::cout << "L = " << L << '\n';
  std::cout << "gates = " << circuit.gates.size() << '\n';
  for (const std::string& w : parsed.header.warnings)
    std::cerr << "warning: " << w << '\n';
  if (L < 2) return kOk;
  if (opt.n) {
    if (*opt.n < 1 || *opt.n >= L) {
      std::cerr << "error: --n must lie in [1, " << L - 1 << "]\n";
      return kUsageError;
    }
    print_blocks(*opt.n, circuit, parsed.header.variables);
  } else {
    for (std::uint32_t n = 1; n < L; ++n)
      print_blocks(n, circuit, parsed.header.variables);
  }
  return kOk;
}

int run_split(const SplitOptions& opt) {
  qsplit::ParsedReal parsed;
  try {
    parsed = qsplit::parse_real_file(opt.file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << opt.file << ": " << e.what() << '\n';
    return kInputError;
  }
  qsplit::SplitInstance instance;
  try {
    instance = qsplit::split(parsed.circuit, opt.n, opt.seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  const std::string doc = qsplit::to_json(instance);
  if (opt.output.empty()) {
    std::cout << doc;
  } else {
    std::ofstream out(opt.output);
    if (!out) {
      std::cerr << "error: cannot write " << opt.output << '\n';
      return kInputError;
    }
    out << doc;
  }
  return kOk;
}

std::string format_mapping(const std::vector<std::uint32_t>& pi) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < pi.size(); ++i) out << (i ? ", " : "") << pi[i];
  out << ']';
  return out.str();
}

int run_attack(const AttackOptions& opt) {
  std::ifstream in(opt.instance_file);
  if (!in) {
    std::cerr << "error: cannot open " << opt.instance_file << '\n';
    return kInputError;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  qsplit::SplitInstance instance;
  try {
    instance = qsplit::split_instance_from_json(buf.str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << opt.instance_file << ": " << e.what() << '\n';
    return kInputError;
  }

  qsplit::NoiseModel noise{opt.noise_p, opt.readout_q,
                           qsplit::mix_seed(opt.seed, 1)};
  qsplit::SimulatedOracle oracle(instance, noise);
  oracle.set_budget(opt.budget);
  oracle.set_time_limit(opt.time_limit);

  qsplit::AttackConfig config;
  config.epsilon = opt.epsilon;
  config.sensitization_repeats = opt.repeats;
  config.permutation_check_inputs = opt.perm_inputs;
  config.input_distribution = opt.distribution == "random_product"
                                  ? qsplit::InputDistribution::random_product
                                  : qsplit::InputDistribution::random_basis;
  config.backtracking = !opt.no_backtracking;
  config.seed = qsplit::mix_seed(opt.seed, 2);

  std::ofstream trace_stream;
  std::optional<qsplit::TraceSink> trace;
  if (!opt.trace_file.empty()) {
    trace_stream.open(opt.trace_file);
    if (!trace_stream) {
      std::cerr << "error: cannot write " << opt.trace_file << '\n';
      return kInputError;
    }
    trace.emplace(trace_stream);
  }

  const qsplit::RecoveredMapping result =
      opt.attack == "brute"
          ? qsplit::brute_force(instance.split1, instance.split2, oracle,
                                config, trace ? &*trace : nullptr)
          : qsplit::recover(instance.split1, instance.split2, oracle, config,
                            trace ? &*trace : nullptr);

  if (!opt.transcript_file.empty()) {
    std::ofstream transcript(opt.transcript_file);
    if (!transcript) {
      std::cerr << "error: cannot write " << opt.transcript_file << '\n';
      return kInputError;
    }
    oracle.ledger().write_jsonl(transcript);
  }

  std::cout << "outcome = " << qsplit::to_string(result.outcome) << '\n';
  std::cout << "queries = " << result.queries_used << '\n';
  if (result.outcome != qsplit::AttackOutcome::recovered) return kAttackFailed;

  std::cout << "pi_hat = " << format_mapping(result.pi_hat) << '\n';
  const qsplit::Circuit truth =
      qsplit::recombine(instance.split1, instance.hidden, instance.split2);
  const qsplit::Circuit guess = qsplit::recombine(
      instance.split1, qsplit::HiddenMapping{result.pi_hat}, instance.split2);
  const bool equivalent = qsplit::circuits_equivalent(guess, truth, opt.seed);
  std::cout << "equivalent = " << (equivalent ? "yes" : "no") << '\n';
  return equivalent ? kOk : kAttackFailed;
}

int run_sweep_command(const SweepOptions& opt) {
  qsplit::SweepConfig config;
  try {
    config = qsplit::sweep_config_from_file(opt.config_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << opt.config_file << ": " << e.what() << '\n';
    return kUsageError;
  }
  if (!opt.output_dir.empty()) config.output_dir = opt.output_dir;
  const auto records = qsplit::run_sweep(config, &std::cerr);
  if (config.output_dir.empty()) {
    qsplit::write_records_csv(std::cout, records);
  } else {
    const auto path =
        std::filesystem::path(config.output_dir) / "records.csv";
    std::cout << "wrote " << records.size() << " records to " << path.string()
              << '\n';
  }
  return kOk;
}

int run_chart(const ChartOptions& opt) {
  std::ifstream in(opt.csv_file);
  if (!in) {
    std::cerr << "error: cannot open " << opt.csv_file << '\n';
    return kInputError;
  }
  try {
    const auto records = qsplit::read_records_csv(in);
    qsplit::emit_chart(records, opt.output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  std::filesystem::path points(opt.output);
  points.replace_extension();
  points += ".points.csv";
  std::cout << "wrote " << opt.output << " and " << points.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-compilation attack toolkit for reversible netlists"};
  app.require_subcommand(1);

  ParseOptions parse_opt;
  auto* parse_cmd = app.add_subcommand(
      "parse", "Validate a .real netlist and print its split structure");
  parse_cmd->add_option("file", parse_opt.file, "netlist path")->required();
  parse_cmd->add_option("--n", parse_opt.n,
                        "show blocks for this Split-2 layer count only");

  SplitOptions split_opt;
  auto* split_cmd = app.add_subcommand(
      "split", "Cut a netlist and emit a split instance as JSON");
  split_cmd->add_option("file", split_opt.file, "netlist path")->required();
  split_cmd->add_option("--n", split_opt.n, "layers in Split 2")->required();
  split_cmd->add_option("--seed", split_opt.seed, "hidden mapping seed");
  split_cmd->add_option("--output", split_opt.output,
                        "instance JSON path (stdout when omitted)");

  AttackOptions attack_opt;
  auto* attack_cmd = app.add_subcommand(
      "attack", "Recover the hidden mapping of a split instance");
  attack_cmd->add_option("instance", attack_opt.instance_file,
                         "instance JSON path")
      ->required();
  attack_cmd->add_option("--attack", attack_opt.attack, "attack strategy")
      ->check(CLI::IsMember({"hier", "brute"}));
  attack_cmd->add_option("--epsilon", attack_opt.epsilon,
                         "fidelity mismatch threshold");
  attack_cmd->add_option("--noise-p", attack_opt.noise_p,
                         "oracle disturbance rate per query");
  attack_cmd->add_option("--readout-q", attack_opt.readout_q,
                         "per-qubit readout flip rate for sampled queries");
  attack_cmd->add_option("--seed", attack_opt.seed, "run seed");
  attack_cmd->add_option("--budget", attack_opt.budget,
                         "oracle query budget (default 10 * m!)");
  attack_cmd->add_option("--time-limit", attack_opt.time_limit,
                         "oracle wall-clock limit in seconds");
  attack_cmd->add_option("--repeats", attack_opt.repeats,
                         "sensitization pairs per candidate set");
  attack_cmd->add_option("--perm-inputs", attack_opt.perm_inputs,
                         "confirmation inputs per arrangement");
  attack_cmd->add_option("--distribution", attack_opt.distribution,
                         "probe input family")
      ->check(CLI::IsMember({"random_basis", "random_product"}));
  attack_cmd->add_flag("--no-backtracking", attack_opt.no_backtracking,
                       "fail instead of revisiting confirmed sets");
  attack_cmd->add_option("--trace", attack_opt.trace_file,
                         "write JSON-lines decision trace here");
  attack_cmd->add_option("--transcript", attack_opt.transcript_file,
                         "write the oracle query ledger here");

  SweepOptions sweep_opt;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Run the benchmark sweep described by a JSON config");
  sweep_cmd->add_option("config", sweep_opt.config_file, "config JSON path")
      ->required();
  sweep_cmd->add_option("--output-dir", sweep_opt.output_dir,
                        "override the config's output directory");

  ChartOptions chart_opt;
  auto* chart_cmd = app.add_subcommand(
      "chart", "Plot median query counts from a sweep records CSV");
  chart_cmd->add_option("csv", chart_opt.csv_file, "records CSV path")
      ->required();
  chart_cmd->add_option("--output", chart_opt.output, "SVG output path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (*parse_cmd) return run_parse(parse_opt);
  if (*split_cmd) return run_split(split_opt);
  if (*attack_cmd) return run_attack(attack_opt);
  if (*sweep_cmd) return run_sweep_command(sweep_opt);
  return run_chart(chart_opt);
}
