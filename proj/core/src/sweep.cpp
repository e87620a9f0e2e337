// SPDX-License-Identifier: Apache-2.0
#include "qsplit/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qsplit/equiv.hpp"
#include "qsplit/oracle.hpp"
#include "qsplit/random.hpp"
#include "qsplit/recover.hpp"
#include "qsplit/revlib.hpp"
#include "qsplit/split.hpp"

namespace qsplit {

namespace {

using nlohmann::json;

InputDistribution distribution_from_name(const std::string& name) {
  if (name == "random_basis") return InputDistribution::random_basis;
  if (name == "random_product") return InputDistribution::random_product;
  throw std::invalid_argument("unknown input distribution '" + name + "'");
}

void check_attack_name(const std::string& name) {
  if (name != "hierarchical" && name != "brute_force")
    throw std::invalid_argument("unknown attack '" + name + "'");
}

}  // namespace

SweepConfig sweep_config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  SweepConfig cfg;
  try {
    cfg.corpus = doc.at("corpus").get<std::vector<std::string>>();
    if (doc.contains("n_min")) cfg.n_min = doc["n_min"].get<std::uint32_t>();
    if (doc.contains("n_max")) cfg.n_max = doc["n_max"].get<std::uint32_t>();
    cfg.seeds_per_cell = doc.value("seeds_per_cell", cfg.seeds_per_cell);
    if (doc.contains("attacks"))
      cfg.attacks = doc["attacks"].get<std::vector<std::string>>();
    cfg.epsilon = doc.value("epsilon", cfg.epsilon);
    cfg.noise_p = doc.value("noise_p", cfg.noise_p);
    cfg.readout_q = doc.value("readout_q", cfg.readout_q);
    cfg.seed = doc.value("seed", cfg.seed);
    if (doc.contains("budget")) cfg.budget = doc["budget"].get<std::uint64_t>();
    if (doc.contains("time_limit_seconds"))
      cfg.time_limit_seconds = doc["time_limit_seconds"].get<double>();
    cfg.repeats = doc.value("repeats", cfg.repeats);
    cfg.perm_inputs = doc.value("perm_inputs", cfg.perm_inputs);
    cfg.distribution = doc.value("distribution", cfg.distribution);
    cfg.backtracking = doc.value("backtracking", cfg.backtracking);
    cfg.record_wall_time = doc.value("record_wall_time", cfg.record_wall_time);
    cfg.output_dir = doc.value("output_dir", cfg.output_dir);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad config field: ") + e.what());
  }
  if (cfg.corpus.empty())
    throw std::invalid_argument("config lists no corpus files");
  if (cfg.seeds_per_cell < 1)
    throw std::invalid_argument("seeds_per_cell must be at least 1");
  if (cfg.attacks.empty())
    throw std::invalid_argument("config lists no attacks");
  for (const std::string& a : cfg.attacks) check_attack_name(a);
  distribution_from_name(cfg.distribution);
  if (cfg.repeats < 1 || cfg.perm_inputs < 1)
    throw std::invalid_argument("repeats and perm_inputs must be at least 1");
  return cfg;
}

SweepConfig sweep_config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  SweepConfig cfg = sweep_config_from_json(buf.str());
  const auto base = std::filesystem::path(path).parent_path();
  for (std::string& entry : cfg.corpus) {
    std::filesystem::path p(entry);
    if (p.is_relative()) entry = (base / p).lexically_normal().string();
  }
  return cfg;
}

namespace {

void write_record_row(std::ostream& out, const ExperimentRecord& r) {
  out << r.benchmark << ',' << r.m << ',' << r.L << ',' << r.n << ','
      << r.seed << ',' << r.attack << ',' << r.t << ',' << r.outcome << ','
      << r.wall_ms << ',' << r.epsilon << ',' << r.noise_p << '\n';
}

constexpr const char* kCsvHeader =
    "benchmark,m,L,n,seed,attack,t,outcome,wall_ms,epsilon,noise_p";

}  // namespace

void write_records_csv(std::ostream& out,
                       const std::vector<ExperimentRecord>& records) {
  out << kCsvHeader << '\n';
  for (const ExperimentRecord& r : records) write_record_row(out, r);
}

std::vector<ExperimentRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw std::invalid_argument("unexpected CSV header: " + line);
  std::vector<ExperimentRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    fields.push_back(cur);
    if (fields.size() != 11)
      throw std::invalid_argument("CSV line " + std::to_string(lineno) +
                                  " has " + std::to_string(fields.size()) +
                                  " fields, expected 11");
    try {
      ExperimentRecord r;
      r.benchmark = fields[0];
      r.m = static_cast<std::uint32_t>(std::stoul(fields[1]));
      r.L = static_cast<std::uint32_t>(std::stoul(fields[2]));
      r.n = static_cast<std::uint32_t>(std::stoul(fields[3]));
      r.seed = static_cast<std::uint32_t>(std::stoul(fields[4]));
      r.attack = fields[5];
      r.t = std::stoull(fields[6]);
      r.outcome = fields[7];
      r.wall_ms = std::stod(fields[8]);
      r.epsilon = std::stod(fields[9]);
      r.noise_p = std::stod(fields[10]);
      records.push_back(std::move(r));
    } catch (const std::exception&) {
      throw std::invalid_argument("CSV line " + std::to_string(lineno) +
                                  " does not parse");
    }
  }
  return records;
}

std::vector<ExperimentRecord> run_sweep(const SweepConfig& config,
                                        std::ostream* log) {
  std::vector<ExperimentRecord> records;
  std::ofstream csv;
  if (!config.output_dir.empty()) {
    std::filesystem::create_directories(config.output_dir);
    const auto path =
        std::filesystem::path(config.output_dir) / "records.csv";
    csv.open(path);
    if (!csv) throw std::runtime_error("cannot write " + path.string());
    csv << kCsvHeader << '\n';
  }

  for (const std::string& path : config.corpus) {
    Circuit circuit;
    try {
      circuit = parse_real_file(path).circuit;
      validate(circuit);
    } catch (const std::exception& e) {
      if (log)
        *log << "[sweep] skipping " << path << ": " << e.what() << '\n';
      continue;
    }
    const std::uint32_t L = static_cast<std::uint32_t>(depth(circuit));
    if (L < 2) {
      if (log)
        *log << "[sweep] skipping " << path << ": fewer than 2 layers\n";
      continue;
    }
    const std::uint32_t n_lo = std::max<std::uint32_t>(1, config.n_min.value_or(1));
    const std::uint32_t n_hi =
        std::min<std::uint32_t>(L - 1, config.n_max.value_or(L - 1));

    for (std::uint32_t n = n_lo; n <= n_hi; ++n) {
      for (std::uint32_t seed_idx = 0; seed_idx < config.seeds_per_cell;
           ++seed_idx) {
        const std::uint64_t cell_seed = mix_seed(
            mix_seed(mix_seed(config.seed, hash_string(circuit.name)), n),
            seed_idx);
        const SplitInstance instance =
            split(circuit, n, mix_seed(cell_seed, 0));

        for (const std::string& attack : config.attacks) {
          NoiseModel noise{config.noise_p, config.readout_q,
                           mix_seed(cell_seed, 1)};
          SimulatedOracle oracle(instance, noise);
          if (config.budget) oracle.set_budget(config.budget);
          if (config.time_limit_seconds)
            oracle.set_time_limit(config.time_limit_seconds);

          AttackConfig attack_config;
          attack_config.epsilon = config.epsilon;
          attack_config.sensitization_repeats = config.repeats;
          attack_config.permutation_check_inputs = config.perm_inputs;
          attack_config.input_distribution =
              distribution_from_name(config.distribution);
          attack_config.backtracking = config.backtracking;
          attack_config.seed = mix_seed(cell_seed, 2);

          const auto started = std::chrono::steady_clock::now();
          const RecoveredMapping result =
              attack == "hierarchical"
                  ? recover(instance.split1, instance.split2, oracle,
                            attack_config)
                  : brute_force(instance.split1, instance.split2, oracle,
                                attack_config);
          double wall_ms = 0.0;
          if (config.record_wall_time)
            wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - started)
                          .count();

          ExperimentRecord record;
          record.benchmark = circuit.name;
          record.m = circuit.num_qubits;
          record.L = L;
          record.n = n;
          record.seed = seed_idx;
          record.attack = attack;
          record.t = result.queries_used;
          record.outcome = std::string(to_string(result.outcome));
          record.wall_ms = wall_ms;
          record.epsilon = config.epsilon;
          record.noise_p = config.noise_p;
          if (csv.is_open()) {
            write_record_row(csv, record);
            csv.flush();
          }
          records.push_back(std::move(record));
        }
      }
    }
  }
  return records;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t h = values.size() / 2;
  return values.size() % 2 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("spearman needs two equal series of size >= 2");
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

namespace {

struct Series {
  std::string benchmark;
  std::string attack;
  std::uint32_t m = 0;
  std::vector<std::pair<std::uint32_t, double>> points;  // (n, median t)
  std::map<std::uint32_t, std::size_t> runs;
};

std::vector<Series> build_series(const std::vector<ExperimentRecord>& records) {
  std::vector<Series> series;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::map<std::pair<std::string, std::string>,
           std::map<std::uint32_t, std::vector<double>>>
      samples;
  for (const ExperimentRecord& r : records) {
    const auto key = std::make_pair(r.benchmark, r.attack);
    if (index.find(key) == index.end()) {
      index[key] = series.size();
      series.push_back(Series{r.benchmark, r.attack, r.m, {}, {}});
    }
    samples[key][r.n].push_back(static_cast<double>(r.t));
  }
  for (auto& s : series) {
    const auto key = std::make_pair(s.benchmark, s.attack);
    for (const auto& [n, ts] : samples[key]) {
      s.points.emplace_back(n, median(ts));
      s.runs[n] = ts.size();
    }
  }
  return series;
}

std::string format_number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

void emit_chart(const std::vector<ExperimentRecord>& records,
                const std::string& svg_path) {
  if (records.empty())
    throw std::invalid_argument("no records to chart");
  const std::vector<Series> series = build_series(records);

  std::uint32_t n_lo = UINT32_MAX, n_hi = 0;
  double t_hi = 0.0;
  for (const Series& s : series)
    for (const auto& [n, t] : s.points) {
      n_lo = std::min(n_lo, n);
      n_hi = std::max(n_hi, n);
      t_hi = std::max(t_hi, t);
    }
  if (t_hi <= 0.0) t_hi = 1.0;

  const double width = 960, height = 560;
  const double ml = 70, mr = 250, mt = 40, mb = 60;
  const double plot_w = width - ml - mr, plot_h = height - mt - mb;
  const double n_span = n_hi > n_lo ? static_cast<double>(n_hi - n_lo) : 1.0;
  const auto x_of = [&](double n) {
    return ml + (n - static_cast<double>(n_lo)) / n_span * plot_w;
  };
  const auto y_of = [&](double t) { return mt + (1.0 - t / t_hi) * plot_h; };

  static const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759",
                                   "#76b7b2", "#59a14f", "#edc948",
                                   "#b07aa1", "#9c755f"};
  constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"13\">\n";

  svg << "<line x1=\"" << ml << "\" y1=\"" << mt + plot_h << "\" x2=\""
      << ml + plot_w << "\" y2=\"" << mt + plot_h
      << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << mt + plot_h
      << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";

  const std::uint32_t x_step =
      std::max<std::uint32_t>(1, (n_hi - n_lo + 1) / 12 + ((n_hi - n_lo + 1) % 12 ? 1 : 0));
  for (std::uint32_t n = n_lo; n <= n_hi; n += x_step) {
    const double x = x_of(n);
    svg << "<line x1=\"" << x << "\" y1=\"" << mt + plot_h << "\" x2=\"" << x
        << "\" y2=\"" << mt + plot_h + 5
        << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << mt + plot_h + 20
        << "\" text-anchor=\"middle\">" << n << "</text>\n";
  }
  for (int tick = 0; tick <= 5; ++tick) {
    const double t = t_hi * tick / 5.0;
    const double y = y_of(t);
    svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << y << "\" x2=\"" << ml
        << "\" y2=\"" << y << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << ml + plot_w
        << "\" y2=\"" << y
        << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
    svg << "<text x=\"" << ml - 10 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\">" << format_number(t) << "</text>\n";
  }
  svg << "<text x=\"" << ml + plot_w / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\">layers in Split 2 (n)</text>\n";
  svg << "<text x=\"20\" y=\"" << mt + plot_h / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << mt + plot_h / 2 << ")\">oracle queries t (median)</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = kPalette[si % kPaletteSize];
    if (s.points.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"2\" points=\"";
      for (const auto& [n, t] : s.points)
        svg << x_of(n) << "," << y_of(t) << " ";
      svg << "\"/>\n";
    }
    for (const auto& [n, t] : s.points)
      svg << "<circle cx=\"" << x_of(n) << "\" cy=\"" << y_of(t)
          << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";

    const double ly = mt + 10 + 22 * static_cast<double>(si);
    svg << "<line x1=\"" << ml + plot_w + 20 << "\" y1=\"" << ly << "\" x2=\""
        << ml + plot_w + 44 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<circle cx=\"" << ml + plot_w + 32 << "\" cy=\"" << ly
        << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << ml + plot_w + 52 << "\" y=\"" << ly + 4 << "\">"
        << s.benchmark << " (" << s.m << " qubits)"
        << (s.attack == "brute_force" ? ", brute force" : "") << "</text>\n";
  }
  svg << "</g>\n</svg>\n";

  std::ofstream out(svg_path);
  if (!out) throw std::runtime_error("cannot write " + svg_path);
  out << svg.str();

  std::filesystem::path points_path(svg_path);
  points_path.replace_extension();
  points_path += ".points.csv";
  std::ofstream pts(points_path);
  if (!pts) throw std::runtime_error("cannot write " + points_path.string());
  pts << "benchmark,attack,m,n,median_t,runs\n";
  for (const Series& s : series)
    for (const auto& [n, t] : s.points)
      pts << s.benchmark << ',' << s.attack << ',' << s.m << ',' << n << ','
          << t << ',' << s.runs.at(n) << '\n';
}

}  // namespace qsplit
