#ifndef SPECTRA_LAB_HPP
#define SPECTRA_LAB_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spectra/pointcloud.hpp"
#include "spectra/randgen.hpp"

namespace spectra::lab {

using ParamMap = std::map<std::string, std::string>;

struct ExperimentConfig {
  std::string name;
  std::uint64_t seed = 42;
  long trials = 1;
  ParamMap params;
  std::string output_dir;  // empty: nothing is written
  int threads = 0;         // 0: hardware concurrency
};

// Parses "key=value" lines; '#' starts a comment, blank lines are skipped.
// Keys name, seed, trials, out and threads fill the config fields, any other
// key becomes a parameter.
ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

// Default seed: SPECTRA_SEED when set, else 42.
std::uint64_t default_seed();

// Typed view of the merged parameters; every lookup must name a declared key.
class Params {
 public:
  Params(const std::string& experiment, ParamMap defaults, const ParamMap& given);

  double num(const std::string& key) const;
  long integer(const std::string& key) const;
  const std::string& str(const std::string& key) const;
  std::vector<double> num_list(const std::string& key) const;
  std::vector<int> int_list(const std::string& key) const;
  const ParamMap& all() const noexcept { return values_; }

 private:
  std::string experiment_;
  ParamMap values_;
};

// Per-trial output. `samples` carries raw values for the summary only.
struct TrialOutput {
  std::vector<std::pair<std::string, double>> metrics;
  std::map<std::string, std::vector<double>> samples;
};

struct TrialReport {
  std::string experiment;
  long trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::vector<std::pair<std::string, double>> metrics;
  std::map<std::string, std::vector<double>> samples;
  double wall_ms = 0.0;
};

struct Experiment {
  std::string name;
  std::string description;
  ParamMap defaults;
  std::function<TrialOutput(const Params&, randgen::RngStream&, long trial)> run_trial;
  std::function<nlohmann::json(const Params&, const std::vector<TrialReport>&)> summarize;
  // Optional point set drawn from the trial-0 stream for the SVG output.
  std::function<PointCloud(const Params&, randgen::RngStream&)> scatter;
};

const std::vector<Experiment>& registry();
const Experiment& find_experiment(const std::string& name);

std::uint64_t stream_for(const std::string& experiment, long trial);

struct RunResult {
  nlohmann::json summary;
  std::vector<TrialReport> trials;
  std::string csv;
};

// Runs trials on a worker pool; rows are ordered by trial index so equal
// configs produce byte-identical CSV. With output_dir set, writes
// trials.csv, summary.json and, when the parameter svg=1, scatter.svg.
RunResult run_experiment(const ExperimentConfig& cfg);

std::string trials_csv(const std::vector<TrialReport>& trials);

// Helpers shared with the acceptance suite.
double median(std::vector<double> v);
double mean(const std::vector<double>& v);
double sample_variance(const std::vector<double>& v);
double correlation(const std::vector<double>& a, const std::vector<double>& b);
double ks_two_sample(std::vector<double> a, std::vector<double> b);
std::vector<double> metric_column(const std::vector<TrialReport>& trials, const std::string& key);
std::vector<double> pooled_samples(const std::vector<TrialReport>& trials, const std::string& key);

}  // namespace spectra::lab

#endif
