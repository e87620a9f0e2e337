// SPDX-License-Identifier: Apache-2.0
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "qsplit/sweep.hpp"

using namespace qsplit;

namespace {

const std::string kDataDir = QSPLIT_DATA_DIR;

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("qsplit_sweep_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

SweepConfig alu_config(const std::string& output_dir) {
  SweepConfig cfg;
  cfg.corpus = {kDataDir + "/alu.real"};
  cfg.seeds_per_cell = 1;
  cfg.attacks = {"hierarchical", "brute_force"};
  cfg.distribution = "random_product";
  cfg.seed = 5;
  cfg.record_wall_time = false;
  cfg.output_dir = output_dir;
  return cfg;
}

std::vector<ExperimentRecord> tiny_records() {
  std::vector<ExperimentRecord> records;
  for (std::uint32_t n = 1; n <= 3; ++n)
    for (std::uint32_t seed = 0; seed < 2; ++seed) {
      ExperimentRecord r;
      r.benchmark = "alu";
      r.m = 4;
      r.L = 6;
      r.n = n;
      r.seed = seed;
      r.attack = "hierarchical";
      r.t = 10 * n + seed;
      r.outcome = "recovered";
      r.epsilon = 0.03;
      records.push_back(r);
    }
  return records;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("config JSON fills fields and applies defaults") {
  const SweepConfig cfg = sweep_config_from_json(R"({
    "corpus": ["a.real", "b.real"],
    "seeds_per_cell": 3,
    "attacks": ["hierarchical", "brute_force"],
    "epsilon": 0.05,
    "noise_p": 0.01,
    "seed": 9,
    "n_min": 2,
    "n_max": 4,
    "budget": 1000,
    "distribution": "random_product",
    "record_wall_time": false
  })");
  CHECK(cfg.corpus.size() == 2);
  CHECK(cfg.seeds_per_cell == 3);
  CHECK(cfg.attacks == std::vector<std::string>{"hierarchical", "brute_force"});
  CHECK(cfg.epsilon == doctest::Approx(0.05));
  CHECK(cfg.noise_p == doctest::Approx(0.01));
  CHECK(cfg.seed == 9);
  CHECK(cfg.n_min.value() == 2);
  CHECK(cfg.n_max.value() == 4);
  CHECK(cfg.budget.value() == 1000);
  CHECK(cfg.distribution == "random_product");
  CHECK_FALSE(cfg.record_wall_time);

  const SweepConfig defaults =
      sweep_config_from_json(R"({"corpus": ["x.real"]})");
  CHECK(defaults.seeds_per_cell == 5);
  CHECK(defaults.attacks == std::vector<std::string>{"hierarchical"});
  CHECK(defaults.epsilon == doctest::Approx(0.03));
  CHECK_FALSE(defaults.n_min.has_value());
  CHECK(defaults.record_wall_time);
}

TEST_CASE("config JSON rejects bad documents") {
  CHECK_THROWS_AS(sweep_config_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(sweep_config_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(sweep_config_from_json(R"({"corpus": []})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      sweep_config_from_json(R"({"corpus": ["x"], "seeds_per_cell": 0})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      sweep_config_from_json(R"({"corpus": ["x"], "attacks": ["nope"]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      sweep_config_from_json(R"({"corpus": ["x"], "distribution": "bad"})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      sweep_config_from_json(R"({"corpus": ["x"], "repeats": 0})"),
      std::invalid_argument);
}

TEST_CASE("config files resolve corpus paths relative to themselves") {
  TempDir dir;
  {
    std::ofstream out(dir.path / "cfg.json");
    out << R"({"corpus": ["data/foo.real", "/abs/bar.real"]})";
  }
  const SweepConfig cfg =
      sweep_config_from_file((dir.path / "cfg.json").string());
  CHECK(cfg.corpus[0] == (dir.path / "data/foo.real").lexically_normal().string());
  CHECK(cfg.corpus[1] == "/abs/bar.real");
  CHECK_THROWS_AS(sweep_config_from_file("/nonexistent/cfg.json"),
                  std::invalid_argument);
}

TEST_CASE("run_sweep covers benchmark x n x seed x attack") {
  TempDir dir;
  const SweepConfig cfg = alu_config((dir.path / "out").string());
  const auto records = run_sweep(cfg);
  REQUIRE(records.size() == 10);  // 5 cuts x 1 seed x 2 attacks

  std::map<std::pair<std::uint32_t, std::string>, std::uint64_t> t_of;
  for (const auto& r : records) {
    CHECK(r.benchmark == "alu");
    CHECK(r.m == 4);
    CHECK(r.L == 6);
    CHECK(r.outcome == "recovered");
    CHECK(r.wall_ms == 0.0);
    t_of[{r.n, r.attack}] = r.t;
  }
  for (std::uint32_t n = 1; n <= 5; ++n) {
    REQUIRE(t_of.count({n, "hierarchical"}));
    REQUIRE(t_of.count({n, "brute_force"}));
    CHECK(t_of[{n, "hierarchical"}] < t_of[{n, "brute_force"}]);
  }

  // The streamed CSV holds the same records.
  std::ifstream in(dir.path / "out" / "records.csv");
  REQUIRE(in.good());
  const auto from_csv = read_records_csv(in);
  REQUIRE(from_csv.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(from_csv[i].benchmark == records[i].benchmark);
    CHECK(from_csv[i].n == records[i].n);
    CHECK(from_csv[i].attack == records[i].attack);
    CHECK(from_csv[i].t == records[i].t);
    CHECK(from_csv[i].outcome == records[i].outcome);
  }
}

TEST_CASE("run_sweep is deterministic") {
  SweepConfig cfg = alu_config("");
  cfg.attacks = {"hierarchical"};
  const auto a = run_sweep(cfg);
  const auto b = run_sweep(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].t == b[i].t);
    CHECK(a[i].outcome == b[i].outcome);
  }
}

TEST_CASE("run_sweep clamps the cut range") {
  SweepConfig cfg = alu_config("");
  cfg.attacks = {"hierarchical"};
  cfg.n_min = 2;
  cfg.n_max = 100;
  const auto records = run_sweep(cfg);
  REQUIRE(records.size() == 4);  // n in 2..5
  CHECK(records.front().n == 2);
  CHECK(records.back().n == 5);
}

TEST_CASE("run_sweep skips unparseable corpus entries with a note") {
  SweepConfig cfg = alu_config("");
  cfg.attacks = {"hierarchical"};
  cfg.corpus.insert(cfg.corpus.begin(), "/nonexistent/qqq.real");
  std::ostringstream log;
  const auto records = run_sweep(cfg, &log);
  CHECK(records.size() == 5);
  CHECK(log.str().find("skipping") != std::string::npos);
  CHECK(log.str().find("qqq.real") != std::string::npos);
}

TEST_CASE("records CSV round-trips including failure outcomes") {
  std::vector<ExperimentRecord> records = tiny_records();
  records[1].outcome = "timeout";
  records[2].outcome = "budget_exhausted";
  records[3].wall_ms = 12.5;
  records[4].noise_p = 0.01;

  std::ostringstream out;
  write_records_csv(out, records);
  std::istringstream in(out.str());
  const auto back = read_records_csv(in);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(back[i].benchmark == records[i].benchmark);
    CHECK(back[i].m == records[i].m);
    CHECK(back[i].L == records[i].L);
    CHECK(back[i].n == records[i].n);
    CHECK(back[i].seed == records[i].seed);
    CHECK(back[i].attack == records[i].attack);
    CHECK(back[i].t == records[i].t);
    CHECK(back[i].outcome == records[i].outcome);
    CHECK(back[i].wall_ms == doctest::Approx(records[i].wall_ms));
    CHECK(back[i].epsilon == doctest::Approx(records[i].epsilon));
    CHECK(back[i].noise_p == doctest::Approx(records[i].noise_p));
  }
}

TEST_CASE("records CSV rejects malformed input") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_records_csv(empty), std::invalid_argument);

  std::istringstream bad_header("a,b,c\n");
  CHECK_THROWS_AS(read_records_csv(bad_header), std::invalid_argument);

  std::istringstream short_row(
      "benchmark,m,L,n,seed,attack,t,outcome,wall_ms,epsilon,noise_p\n"
      "alu,4,6\n");
  CHECK_THROWS_AS(read_records_csv(short_row), std::invalid_argument);

  std::istringstream bad_number(
      "benchmark,m,L,n,seed,attack,t,outcome,wall_ms,epsilon,noise_p\n"
      "alu,four,6,1,0,hierarchical,9,recovered,0,0.03,0\n");
  CHECK_THROWS_AS(read_records_csv(bad_number), std::invalid_argument);
}

TEST_CASE("median and spearman match hand-computed values") {
  CHECK(median({3.0}) == doctest::Approx(3.0));
  CHECK(median({1.0, 2.0}) == doctest::Approx(1.5));
  CHECK(median({9.0, 1.0, 5.0}) == doctest::Approx(5.0));
  CHECK(median({4.0, 1.0, 3.0, 2.0}) == doctest::Approx(2.5));
  CHECK_THROWS_AS(median({}), std::invalid_argument);

  CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {8, 6, 4, 2}) == doctest::Approx(-1.0));
  // No ties: 1 - 6 * sum(d^2) / (n(n^2-1)) with d = rank differences.
  CHECK(spearman({1, 2, 3, 4}, {1, 3, 2, 4}) == doctest::Approx(0.8));
  // Ties get average ranks; a co-monotone tie still correlates perfectly.
  CHECK(spearman({1, 2, 2, 3}, {10, 20, 20, 30}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(spearman({1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(spearman({1, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("emit_chart writes an SVG polyline per series") {
  TempDir dir;
  auto records = tiny_records();
  for (auto& r : tiny_records()) {
    ExperimentRecord b = r;
    b.attack = "brute_force";
    b.t += 100;
    records.push_back(b);
  }
  const std::string svg_path = (dir.path / "chart.svg").string();
  emit_chart(records, svg_path);

  std::ifstream in(svg_path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string svg = buf.str();
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("alu (4 qubits)") != std::string::npos);
  CHECK(svg.find("alu (4 qubits), brute force") != std::string::npos);
  std::size_t polylines = 0;
  for (std::size_t at = svg.find("<polyline"); at != std::string::npos;
       at = svg.find("<polyline", at + 1))
    ++polylines;
  CHECK(polylines == 2);

  std::ifstream pts(dir.path / "chart.points.csv");
  REQUIRE(pts.good());
  std::string line;
  std::getline(pts, line);
  CHECK(line == "benchmark,attack,m,n,median_t,runs");
  std::size_t rows = 0;
  while (std::getline(pts, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 6);  // 2 series x 3 cuts
}

TEST_CASE("emit_chart guards its inputs") {
  CHECK_THROWS_AS(emit_chart({}, "/tmp/never.svg"), std::invalid_argument);

  TempDir dir;
  std::vector<ExperimentRecord> one = {tiny_records()[0]};
  const std::string svg_path = (dir.path / "single.svg").string();
  emit_chart(one, svg_path);  // single point: marker only, no polyline
  std::ifstream in(svg_path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str().find("<polyline") == std::string::npos);
  CHECK(buf.str().find("<circle") != std::string::npos);
}

}  // TEST_SUITE
