// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qsplit {

struct SweepConfig {
  std::vector<std::string> corpus;  // .real file paths
  std::optional<std::uint32_t> n_min;
  std::optional<std::uint32_t> n_max;
  std::uint32_t seeds_per_cell = 5;
  std::vector<std::string> attacks = {"hierarchical"};
  double epsilon = 0.03;
  double noise_p = 0.0;
  double readout_q = 0.0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> budget;           // oracle default when unset
  std::optional<double> time_limit_seconds;      // oracle default when unset
  std::uint32_t repeats = 1;                     // r
  std::uint32_t perm_inputs = 1;                 // k
  std::string distribution = "random_basis";
  bool backtracking = true;
  bool record_wall_time = true;  // off: wall_ms = 0 for byte-stable output
  std::string output_dir;        // when set, records stream to records.csv
};

SweepConfig sweep_config_from_json(const std::string& text);
SweepConfig sweep_config_from_file(const std::string& path);

struct ExperimentRecord {
  std::string benchmark;
  std::uint32_t m = 0;
  std::uint32_t L = 0;
  std::uint32_t n = 0;
  std::uint32_t seed = 0;  // seed index within the cell
  std::string attack;      // "hierarchical" or "brute_force"
  std::uint64_t t = 0;
  std::string outcome;
  double wall_ms = 0.0;
  double epsilon = 0.0;
  double noise_p = 0.0;
};

// One cell per benchmark x n x seed x attack, in that nesting order. Cells
// are seeded from (config.seed, benchmark name, n, seed index) only, so a
// rerun of the same config reproduces every record; records stream to
// <output_dir>/records.csv as they finish. Parse failures skip the
// benchmark with a note to `log`; attack timeouts become records.
std::vector<ExperimentRecord> run_sweep(const SweepConfig& config,
                                        std::ostream* log = nullptr);

void write_records_csv(std::ostream& out,
                       const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> read_records_csv(std::istream& in);

// Fig-style query-count chart: one polyline per (benchmark, attack) of
// median t against n, SVG written to `svg_path` and the plotted points to
// `<svg_path minus extension>.points.csv`. Throws on an empty record set.
void emit_chart(const std::vector<ExperimentRecord>& records,
                const std::string& svg_path);

double median(std::vector<double> values);

// Spearman rank correlation with average ranks on ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qsplit
