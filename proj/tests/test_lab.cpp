#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spectra/error.hpp"
#include "spectra/io.hpp"
#include "spectra/lab.hpp"
#include "support.hpp"

using namespace spectra;
using namespace spectra::lab;
namespace fs = std::filesystem;

namespace {
std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("spectra-test-" + name);
  fs::remove_all(dir);
  return dir;
}
}  // namespace

TEST_CASE("registry lists every experiment once") {
  const std::vector<std::string> want{"thm1-convergence", "matching-lln",   "exp-spacing",   "ginibre-intensity",
                                      "poisson-limit",    "spherical-count", "product-symmetry", "real-eig",
                                      "walsh-clusters",   "discrepancy"};
  CHECK(registry().size() == want.size());
  for (const auto& n : want) CHECK(find_experiment(n).name == n);
  CHECK_THROWS_AS(find_experiment("nope"), Error);
}

TEST_CASE("golden CSV headers") {
  std::ifstream in(SPECTRA_GOLDEN_DIR "/csv_headers.txt");
  REQUIRE(in.good());
  std::string line;
  int checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = split(line, '|');
    REQUIRE(f.size() == 3);
    ExperimentConfig cfg;
    cfg.name = f[0];
    cfg.trials = 1;
    for (const auto& kv : split(f[1], ',')) {
      if (kv.empty()) continue;
      const auto eq = kv.find('=');
      cfg.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    const auto r = run_experiment(cfg);
    CAPTURE(cfg.name);
    CHECK(r.csv.substr(0, r.csv.find('\n')) == f[2]);
    ++checked;
  }
  CHECK(checked == static_cast<int>(registry().size()));
}

TEST_CASE("run_experiment writes one row per trial and a summary") {
  ExperimentConfig cfg;
  cfg.name = "exp-spacing";
  cfg.trials = 1;
  cfg.params = {{"n", "100"}};
  cfg.output_dir = scratch("one").string();
  const auto r = run_experiment(cfg);
  const auto csv = slurp(fs::path(cfg.output_dir) / "trials.csv");
  CHECK(csv == r.csv);
  CHECK(testsupport::count_substr(csv, "\n") == 2);
  const auto summary = nlohmann::json::parse(slurp(fs::path(cfg.output_dir) / "summary.json"));
  CHECK(summary.contains("median_left_stat"));
  CHECK(summary["experiment"] == "exp-spacing");
  CHECK(!fs::exists(fs::path(cfg.output_dir) / "scatter.svg"));
}

TEST_CASE("exp-spacing summary schema at the documented configuration") {
  ExperimentConfig cfg;
  cfg.name = "exp-spacing";
  cfg.trials = 200;
  cfg.seed = 42;
  cfg.params = {{"n", "2000"}};
  const auto r = run_experiment(cfg);
  CHECK(r.summary.contains("median_left_stat"));
  CHECK(r.summary.contains("median_right_stat"));
  CHECK(r.trials.size() == 200);
}

TEST_CASE("identical configs give byte-identical CSV regardless of thread count") {
  ExperimentConfig cfg;
  cfg.name = "matching-lln";
  cfg.trials = 12;
  cfg.seed = 7;
  cfg.params = {{"n", "30"}};
  cfg.threads = 1;
  const auto a = run_experiment(cfg);
  cfg.threads = 4;
  const auto b = run_experiment(cfg);
  CHECK(a.csv == b.csv);
  CHECK(a.summary["csv_fnv1a64"] == b.summary["csv_fnv1a64"]);
  cfg.seed = 8;
  CHECK(run_experiment(cfg).csv != a.csv);
}

TEST_CASE("rows are ordered by trial index and carry the stream derivation") {
  ExperimentConfig cfg;
  cfg.name = "exp-spacing";
  cfg.trials = 5;
  cfg.params = {{"n", "20"}};
  cfg.threads = 3;
  const auto r = run_experiment(cfg);
  for (long t = 0; t < 5; ++t) {
    CHECK(r.trials[static_cast<std::size_t>(t)].trial == t);
    CHECK(r.trials[static_cast<std::size_t>(t)].stream_id == (randgen::fnv1a64("exp-spacing") ^ static_cast<std::uint64_t>(t)));
  }
  CHECK(stream_for("x", 3) == (randgen::fnv1a64("x") ^ 3ULL));
}

TEST_CASE("configuration errors") {
  ExperimentConfig cfg;
  cfg.name = "exp-spacing";
  cfg.params = {{"bogus", "1"}};
  try {
    run_experiment(cfg);
    FAIL("expected BadParams");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadParams);
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
  cfg.params = {{"n", "abc"}};
  CHECK_THROWS_AS(run_experiment(cfg), Error);
  cfg.params.clear();
  cfg.trials = 0;
  CHECK_THROWS_AS(run_experiment(cfg), Error);
  cfg.name = "missing";
  cfg.trials = 1;
  try {
    run_experiment(cfg);
    FAIL("expected UnknownExperiment");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownExperiment);
  }
}

TEST_CASE("config text parsing") {
  const auto cfg = parse_config_text("# comment\nexperiment = real-eig\nseed=9\ntrials=3\n\nout=/tmp/x\nk=2\n");
  CHECK(cfg.name == "real-eig");
  CHECK(cfg.seed == 9);
  CHECK(cfg.trials == 3);
  CHECK(cfg.output_dir == "/tmp/x");
  CHECK(cfg.params.at("k") == "2");
  CHECK_THROWS_AS(parse_config_text("no equals sign"), Error);
}

TEST_CASE("default seed honours SPECTRA_SEED") {
  ::setenv("SPECTRA_SEED", "1234", 1);
  CHECK(default_seed() == 1234);
  ::unsetenv("SPECTRA_SEED");
  CHECK(default_seed() == 42);
}

TEST_CASE("statistics helpers") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  CHECK(mean({1, 2, 3}) == 2.0);
  CHECK(sample_variance({1, 2, 3}) == doctest::Approx(1.0));
  CHECK(correlation({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
  CHECK(ks_two_sample({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(ks_two_sample({0, 0}, {1, 1}) == 1.0);
}

TEST_CASE("scatter SVG") {
  const PointCloud pts{0.0, cplx(1, 1), cplx(-2, 0.5)};
  const auto svg = io::scatter_svg(pts);
  CHECK(testsupport::count_substr(svg, "<circle") == 3);
  CHECK(svg.find("<svg") == 0);
  CHECK(io::scatter_svg(pts) == svg);
  // auto range: x in [-2, 1] and y in [0, 1], each widened by 5% of its span
  CHECK(svg.find("cx=\"27.273\" cy=\"300.000\"") != std::string::npos);
  io::Axis axis;
  axis.xmin = -10;
  axis.xmax = 10;
  axis.ymin = -10;
  axis.ymax = 10;
  CHECK(io::scatter_svg(pts, axis) != svg);
  CHECK_THROWS_AS(io::scatter_svg(PointCloud{}), Error);
  const auto dir = scratch("svg");
  CHECK_THROWS_AS(io::emit_scatter_svg(pts, (dir / "missing" / "x.svg").string()), Error);
  fs::create_directories(dir);
  io::emit_scatter_svg(pts, (dir / "x.svg").string());
  CHECK(slurp(dir / "x.svg") == svg);
}

TEST_CASE("svg=1 writes a scatter plot") {
  ExperimentConfig cfg;
  cfg.name = "ginibre-intensity";
  cfg.trials = 1;
  cfg.params = {{"n", "16"}, {"svg", "1"}};
  cfg.output_dir = scratch("scatter").string();
  run_experiment(cfg);
  const auto svg = slurp(fs::path(cfg.output_dir) / "scatter.svg");
  CHECK(testsupport::count_substr(svg, "<circle") == 16);
}

TEST_CASE("number formatting round-trips") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(std::nan("")) == "nan");
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(io::csv_line({"a", "b"}) == "a,b\n");
}

TEST_CASE("numerical and configuration errors are told apart") {
  CHECK(Error(ErrorCode::NoConvergence, "x").is_numerical());
  CHECK(Error(ErrorCode::ResampleLimit, "x").is_numerical());
  CHECK(!Error(ErrorCode::BadParams, "x").is_numerical());
  CHECK(!Error(ErrorCode::UnknownExperiment, "x").is_numerical());
  CHECK(std::string(Error(ErrorCode::BadParams, "key 'n'").what()) == "BadParams: key 'n'");
}
