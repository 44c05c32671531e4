#include "spectra/lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "spectra/error.hpp"
#include "spectra/io.hpp"
#include "spectra/summation.hpp"

namespace spectra::lab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream is(text);
  T v{};
  is >> v;
  if (!is || !is.eof()) fail(ErrorCode::BadParams, "parameter '" + key + "': cannot parse '" + text + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) out.push_back(trim(cur));
  return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::BadParams, "config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(ErrorCode::BadParams, "config line " + std::to_string(lineno) + ": empty key");
    if (key == "name" || key == "experiment") {
      base.name = value;
    } else if (key == "seed") {
      base.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "trials") {
      base.trials = parse_number<long>(key, value);
    } else if (key == "out") {
      base.output_dir = value;
    } else if (key == "threads") {
      base.threads = parse_number<int>(key, value);
    } else {
      base.params[key] = value;
    }
  }
  return base;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::IoError, "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("SPECTRA_SEED")) {
    return parse_number<std::uint64_t>("SPECTRA_SEED", trim(s));
  }
  return 42;
}

Params::Params(const std::string& experiment, ParamMap defaults, const ParamMap& given)
    : experiment_(experiment), values_(std::move(defaults)) {
  values_.emplace("svg", "0");
  for (const auto& [k, v] : given) {
    auto it = values_.find(k);
    if (it == values_.end()) {
      fail(ErrorCode::BadParams, "unknown parameter '" + k + "' for experiment " + experiment_);
    }
    it->second = v;
  }
}

const std::string& Params::str(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) fail(ErrorCode::BadParams, "undeclared parameter '" + key + "'");
  return it->second;
}

double Params::num(const std::string& key) const { return parse_number<double>(key, str(key)); }

long Params::integer(const std::string& key) const { return parse_number<long>(key, str(key)); }

std::vector<double> Params::num_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& s : split_list(str(key))) out.push_back(parse_number<double>(key, s));
  if (out.empty()) fail(ErrorCode::BadParams, "parameter '" + key + "' is empty");
  return out;
}

std::vector<int> Params::int_list(const std::string& key) const {
  std::vector<int> out;
  for (const auto& s : split_list(str(key))) out.push_back(parse_number<int>(key, s));
  if (out.empty()) fail(ErrorCode::BadParams, "parameter '" + key + "' is empty");
  return out;
}

const Experiment& find_experiment(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.name == name) return e;
  }
  fail(ErrorCode::UnknownExperiment, "no experiment named '" + name + "'");
}

std::uint64_t stream_for(const std::string& experiment, long trial) {
  return randgen::fnv1a64(experiment) ^ static_cast<std::uint64_t>(trial);
}

std::string trials_csv(const std::vector<TrialReport>& trials) {
  if (trials.empty()) return "";
  std::vector<std::string> header{"trial", "seed"};
  for (const auto& [k, v] : trials.front().metrics) header.push_back(k);
  std::string out = io::csv_line(header);
  for (const auto& t : trials) {
    if (t.metrics.size() + 2 != header.size()) {
      fail(ErrorCode::BadParams, "experiment produced a varying metric set");
    }
    std::vector<std::string> row{std::to_string(t.trial), std::to_string(t.seed)};
    for (std::size_t i = 0; i < t.metrics.size(); ++i) {
      if (t.metrics[i].first != header[i + 2]) fail(ErrorCode::BadParams, "metric keys changed between trials");
      row.push_back(io::format_double(t.metrics[i].second));
    }
    out += io::csv_line(row);
  }
  return out;
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  const Experiment& exp = find_experiment(cfg.name);
  if (cfg.trials < 1) fail(ErrorCode::BadParams, "parameter 'trials' must be >= 1");
  const Params params(exp.name, exp.defaults, cfg.params);

  const auto start = std::chrono::steady_clock::now();
  std::vector<TrialReport> reports(static_cast<std::size_t>(cfg.trials));
  unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<long>(workers, cfg.trials));

  std::atomic<long> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto work = [&]() {
    for (;;) {
      const long t = next.fetch_add(1);
      if (t >= cfg.trials) return;
      {
        std::lock_guard<std::mutex> lk(error_mu);
        if (first_error) return;
      }
      try {
        TrialReport& r = reports[static_cast<std::size_t>(t)];
        r.experiment = exp.name;
        r.trial = t;
        r.seed = cfg.seed;
        r.stream_id = stream_for(exp.name, t);
        randgen::RngStream rng(cfg.seed, r.stream_id);
        const auto t0 = std::chrono::steady_clock::now();
        TrialOutput out = exp.run_trial(params, rng, t);
        r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        r.metrics = std::move(out.metrics);
        r.samples = std::move(out.samples);
      } catch (...) {
        std::lock_guard<std::mutex> lk(error_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  RunResult res;
  res.csv = trials_csv(reports);
  nlohmann::json summary = exp.summarize ? exp.summarize(params, reports) : nlohmann::json::object();
  summary["experiment"] = exp.name;
  summary["seed"] = cfg.seed;
  summary["trials"] = cfg.trials;
  summary["params"] = params.all();
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(randgen::fnv1a64(res.csv)));
  summary["csv_fnv1a64"] = hex;
  summary["wall_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  res.summary = std::move(summary);
  res.trials = std::move(reports);

  if (!cfg.output_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) fail(ErrorCode::IoError, "cannot create '" + cfg.output_dir + "': " + ec.message());
    const std::filesystem::path dir(cfg.output_dir);
    io::write_text((dir / "trials.csv").string(), res.csv);
    io::write_text((dir / "summary.json").string(), res.summary.dump(2) + "\n");
    if (params.str("svg") == "1" && exp.scatter) {
      randgen::RngStream rng(cfg.seed, stream_for(exp.name, 0));
      io::emit_scatter_svg(exp.scatter(params, rng), (dir / "scatter.svg").string());
    }
  }
  return res;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  CompensatedSum s;
  for (double x : v) s.add(x);
  return s.value() / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
  if (v.size() < 2) return std::nan("");
  const double m = mean(v);
  CompensatedSum s;
  for (double x : v) s.add((x - m) * (x - m));
  return s.value() / static_cast<double>(v.size() - 1);
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) return std::nan("");
  const double ma = mean(a), mb = mean(b);
  CompensatedSum sab, saa, sbb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab.add((a[i] - ma) * (b[i] - mb));
    saa.add((a[i] - ma) * (a[i] - ma));
    sbb.add((b[i] - mb) * (b[i] - mb));
  }
  const double den = std::sqrt(saa.value() * sbb.value());
  return den > 0.0 ? sab.value() / den : std::nan("");
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) return std::nan("");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

std::vector<double> metric_column(const std::vector<TrialReport>& trials, const std::string& key) {
  std::vector<double> out;
  out.reserve(trials.size());
  for (const auto& t : trials) {
    for (const auto& [k, v] : t.metrics) {
      if (k == key) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

std::vector<double> pooled_samples(const std::vector<TrialReport>& trials, const std::string& key) {
  std::vector<double> out;
  for (const auto& t : trials) {
    auto it = t.samples.find(key);
    if (it != t.samples.end()) out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

}  // namespace spectra::lab
