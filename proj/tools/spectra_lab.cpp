// spectra-lab: run registered experiments, list them, or run the acceptance suite.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "spectra/acceptance.hpp"
#include "spectra/error.hpp"
#include "spectra/lab.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// Splits "k=v"; a missing '=' is a configuration error.
std::pair<std::string, std::string> split_kv(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0)
    spectra::fail(spectra::ErrorCode::BadParams, "expected key=value, got '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

// Leftover "--key value" or "--key=value" pairs become parameters.
void absorb_extras(const std::vector<std::string>& extras, spectra::lab::ParamMap& params) {
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& a = extras[i];
    if (a.rfind("--", 0) != 0) spectra::fail(spectra::ErrorCode::BadParams, "unexpected argument '" + a + "'");
    const std::string body = a.substr(2);
    if (body.find('=') != std::string::npos) {
      params.insert_or_assign(split_kv(body).first, split_kv(body).second);
    } else {
      if (i + 1 >= extras.size()) spectra::fail(spectra::ErrorCode::BadParams, "missing value for '" + a + "'");
      params.insert_or_assign(body, extras[++i]);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded experiments on zeros, critical points and random spectra"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one experiment and write trials.csv and summary.json");
  std::string experiment, config_file, out_dir;
  std::uint64_t seed = 0;
  long trials = 0;
  int threads = -1;
  std::vector<std::string> kv;
  run->add_option("--experiment,-e", experiment, "registered experiment name");
  run->add_option("--seed,-s", seed, "master seed (default: SPECTRA_SEED or 42)");
  run->add_option("--trials,-t", trials, "number of trials");
  run->add_option("--param,-p", kv, "experiment parameter key=value (repeatable)");
  run->add_option("--config,-c", config_file, "key=value config file; flags override it");
  run->add_option("--out,-o", out_dir, "output directory");
  run->add_option("--threads", threads, "worker threads (0: all cores)");
  run->allow_extras();

  auto* list = app.add_subcommand("list", "list registered experiments and their defaults");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  std::uint64_t verify_seed = 0;
  verify->add_option("--seed,-s", verify_seed, "master seed (default: SPECTRA_SEED or 42)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (list->parsed()) {
      for (const auto& ex : spectra::lab::registry()) {
        std::cout << ex.name << "  " << ex.description << "\n";
        for (const auto& [k, v] : ex.defaults) std::cout << "    " << k << " = " << v << "\n";
      }
      return 0;
    }

    if (verify->parsed()) {
      const std::uint64_t s = verify->count("--seed") ? verify_seed : spectra::lab::default_seed();
      const auto results = spectra::acceptance::run_all(s, [](const spectra::acceptance::CriterionResult& r) {
        std::cout << spectra::acceptance::format_result(r) << std::endl;
      });
      int failed = 0;
      for (const auto& r : results) failed += r.passed ? 0 : 1;
      std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
      return failed == 0 ? 0 : 1;
    }

    spectra::lab::ExperimentConfig cfg;
    cfg.seed = spectra::lab::default_seed();
    if (!config_file.empty()) cfg = spectra::lab::load_config_file(config_file, cfg);
    if (!experiment.empty()) cfg.name = experiment;
    if (run->count("--seed")) cfg.seed = seed;
    if (run->count("--trials")) cfg.trials = trials;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (threads >= 0) cfg.threads = threads;
    for (const auto& s : kv) {
      auto [k, v] = split_kv(s);
      cfg.params.insert_or_assign(k, v);
    }
    absorb_extras(run->remaining(), cfg.params);
    if (cfg.name.empty()) spectra::fail(spectra::ErrorCode::UnknownExperiment, "no --experiment given");

    const auto result = spectra::lab::run_experiment(cfg);
    std::cout << result.summary.dump(2) << "\n";
    return 0;
  } catch (const spectra::Error& e) {
    std::cerr << "spectra-lab: " << e.what() << "\n";
    return e.is_numerical() ? kExitNumerical : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "spectra-lab: " << e.what() << "\n";
    return kExitConfig;
  }
}
