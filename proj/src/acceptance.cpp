#include "spectra/acceptance.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "spectra/error.hpp"
#include "spectra/lab.hpp"
#include "spectra/matching.hpp"
#include "spectra/measures.hpp"
#include "spectra/rmt.hpp"
#include "spectra/rootsolve.hpp"

namespace spectra::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

randgen::RngStream stream(std::uint64_t seed, int id) {
  return randgen::RngStream(seed, randgen::fnv1a64("acceptance-" + std::to_string(id)));
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

lab::RunResult run_lab(const std::string& name, std::uint64_t seed, long trials, lab::ParamMap params = {}) {
  lab::ExperimentConfig cfg;
  cfg.name = name;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.params = std::move(params);
  return lab::run_experiment(cfg);
}

int uniform_int(randgen::RngStream& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.uniform() * (hi - lo + 1));
}

struct Outcome {
  bool ok;
  std::string detail;
};

Outcome c1_matching_oracle(std::uint64_t seed) {
  auto rng = stream(seed, 1);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = uniform_int(rng, 1, 8);
    const auto x = randgen::sample_normal(rng, static_cast<std::size_t>(n));
    const auto y = randgen::sample_normal(rng, static_cast<std::size_t>(n));
    if (matching::sorted_l1(x, y).distance != matching::brute_force_l1(x, y).distance) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " of 1000 instances differ"};
}

Outcome c2_mean_law(std::uint64_t seed) {
  auto rng = stream(seed, 2);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const int n = uniform_int(rng, 1, 60);
    auto x = randgen::sample_exponential(rng, static_cast<std::size_t>(n), 1.0);
    const double d = matching::zero_critical_distance(polycore::from_real_roots(x));
    worst = std::max(worst, std::abs(d - lab::mean(x)));
  }
  return {worst <= 1e-8, "max |d1 - mean| = " + fmt("%.3e", worst)};
}

Outcome c3_vieta(std::uint64_t seed) {
  auto rng = stream(seed, 3);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const int n = uniform_int(rng, 2, 40);
    polycore::RootPoly p;
    p.roots = randgen::sample_complex_gaussian(rng, static_cast<std::size_t>(n), 1.0);
    const auto cp = rootsolve::critical_points(p);
    cplx sc{0, 0}, sr{0, 0};
    double scale = 0.0;
    for (const auto& z : cp.roots) sc += z;
    for (const auto& z : p.roots) {
      sr += z;
      scale += std::abs(z);
    }
    const double f = (n - 1.0) / n;
    worst = std::max(worst, std::abs(sc - f * sr) / (f * scale));
  }
  return {worst <= 1e-8, "max relative error (scale (n-1)/n sum|x|) = " + fmt("%.3e", worst)};
}

Outcome c4_spacing(std::uint64_t seed) {
  const auto r = run_lab("exp-spacing", seed, 200, {{"n", "2000"}});
  const double ml = r.summary["median_left_stat"];
  const double mr = r.summary["median_right_stat"];
  const bool ok = ml >= 0.8 && ml <= 1.25 && mr >= 0.8 && mr <= 1.25;
  return {ok, "median left " + fmt("%.4f", ml) + ", median right " + fmt("%.4f", mr) + " (band [0.8, 1.25])"};
}

Outcome c5_intensity(std::uint64_t seed) {
  const auto r = run_lab("ginibre-intensity", seed, 2000, {{"n", "64"}});
  const double e = r.summary["max_relative_error"];
  return {e <= 0.07, "max relative bin error " + fmt("%.4f", e)};
}

Outcome c6_poisson(std::uint64_t seed) {
  const auto r = run_lab("poisson-limit", seed, 2000, {{"n", "64"}});
  const double m = r.summary["mean_count"];
  const double v = r.summary["variance_over_mean"];
  const double ex = r.summary["expected_count_finite_n"];
  const bool ok = std::abs(m - 1.0) <= 0.1 && v >= 0.8 && v <= 1.25;
  return {ok, "mean count " + fmt("%.4f", m) + " (target 1 +- 0.1; exact at n=64: " + fmt("%.4f", ex) +
                  "), variance/mean " + fmt("%.4f", v)};
}

Outcome c7_cross_term(std::uint64_t) {
  const int ns[] = {1, 4, 16, 64, 256};
  double prev = INFINITY;
  bool dec = true;
  std::ostringstream os;
  for (int n : ns) {
    const double v = rmt::cross_term(n, 1.0, 1.0);
    dec = dec && v < prev;
    prev = v;
    os << "n=" << n << ":" << fmt("%.5g", v) << " ";
  }
  return {dec && prev < 0.002, os.str()};
}

Outcome c8_spherical(std::uint64_t seed) {
  const auto r = run_lab("spherical-count", seed, 500, {{"n", "32"}, {"eps", "-1,1"}});
  const double m = r.summary["mean_count"];
  return {std::abs(m - 16.0) <= 0.5, "mean count " + fmt("%.4f", m) + " (target 16 +- 0.5)"};
}

Outcome c9_symmetry(std::uint64_t seed) {
  const auto r = run_lab("product-symmetry", seed, 500,
                         {{"n", "16"}, {"pattern_a", "-1,1,1"}, {"pattern_b", "1,1,-1"}});
  const double ks = r.summary["ks_statistic"];
  return {ks < 0.05, "KS " + fmt("%.4f", ks) + " for (-1,+1,+1) vs (+1,+1,-1)"};
}

Outcome c10_schur(std::uint64_t seed) {
  auto rng = stream(seed, 10);
  double worst_rec = 0.0, worst_eig = 0.0;
  int redraws = 0;
  for (int t = 0; t < 200; ++t) {
    const int k = uniform_int(rng, 1, 4);
    const int n = uniform_int(rng, 1, 10);
    for (;;) {
      std::vector<rmt::DenseMatrix> chain;
      for (int l = 0; l < k; ++l) chain.push_back(rmt::sample_ginibre(rng, n, 1.0));
      try {
        const auto s = rmt::generalized_schur(chain);
        worst_rec = std::max(worst_rec, rmt::schur_reconstruction_error(chain, s));
        rmt::CMatrix prod = chain[0].matrix();
        for (int l = 1; l < k; ++l) prod = prod * chain[static_cast<std::size_t>(l)].matrix();
        Eigen::ComplexEigenSolver<rmt::CMatrix> es(prod, false);
        std::vector<cplx> oracle(es.eigenvalues().data(), es.eigenvalues().data() + n);
        std::vector<cplx> diag(static_cast<std::size_t>(n), cplx{1, 0});
        for (int l = 0; l < k; ++l)
          for (int i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] *= s.Z[static_cast<std::size_t>(l)](i, i);
        // pair each diagonal product with its nearest oracle eigenvalue
        double scale = 1.0;
        for (const auto& z : oracle) scale = std::max(scale, std::abs(z));
        double lo = 0.0, hi = 1.0;
        if (!multiset_close(diag, oracle, hi * scale)) {
          worst_eig = INFINITY;
        } else {
          for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (multiset_close(diag, oracle, mid * scale)) hi = mid; else lo = mid;
          }
          worst_eig = std::max(worst_eig, hi);
        }
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateSpectrum) throw;
        ++redraws;
      }
    }
  }
  const bool ok = worst_rec <= 1e-9 && worst_eig <= 1e-8;
  return {ok, "max reconstruction " + fmt("%.3e", worst_rec) + ", max eigenvalue mismatch / max(1,|lambda|) " +
                  fmt("%.3e", worst_eig) + ", degenerate redraws " + std::to_string(redraws)};
}

Outcome c11_real_eig(std::uint64_t seed) {
  auto rng = stream(seed, 11);
  const int factors[] = {1, 2, 4, 8};
  const long trials = 10000;
  std::ostringstream os;
  bool ok = true;
  double prev_p = 0.0, prev_se = 0.0;
  bool first = true;
  const randgen::RealSampler gauss = [](randgen::RngStream& r) { return r.normal(); };
  os << "gaussian:";
  for (int f : factors) {
    const auto e = rmt::real_eig_probability(rng, 2, f, gauss, trials);
    ok = ok && e.p_hat >= 0.5 - 3.0 * e.stderr_;
    if (!first) ok = ok && e.p_hat >= prev_p - 2.0 * std::hypot(e.stderr_, prev_se);
    first = false;
    prev_p = e.p_hat;
    prev_se = e.stderr_;
    os << " f" << f << "=" << fmt("%.4f", e.p_hat);
  }
  // Atom mass q = 1/2 on a 2x2 matrix: all-equal factor has probability q^4.
  const randgen::RealSampler bern = [](randgen::RngStream& r) { return r.uniform() < 0.5 ? 1.0 : 0.0; };
  os << "; bernoulli:";
  for (int f : factors) {
    const auto e = rmt::real_eig_probability(rng, 2, f, bern, trials);
    const double stated = 1.0 - std::pow(1.0 - std::pow(2.0, -16), f);
    const double atom = 1.0 - std::pow(1.0 - std::pow(0.5, 4), f);
    ok = ok && e.p_hat >= stated - 3.0 * e.stderr_ && e.p_hat >= atom - 3.0 * e.stderr_;
    os << " f" << f << "=" << fmt("%.4f", e.p_hat) << " (q^4 bound " << fmt("%.4f", atom) << ")";
  }
  return {ok, os.str()};
}

Outcome c12_two_sequence(std::uint64_t seed) {
  const auto r = run_lab("thm1-convergence", seed, 50, {{"n_small", "100"}, {"n_large", "1600"}});
  const double f = r.summary["fraction_improved"];
  return {f >= 0.9, "W1 at n=1600 below n=100 in " + fmt("%.0f", f * 50) + " of 50 trials"};
}

Outcome c13_walsh(std::uint64_t seed) {
  const auto r = run_lab("walsh-clusters", seed, 100);
  const long v = r.summary["violations"];
  const double d = r.summary["max_deficiency"];
  return {v == 0, std::to_string(v) + " violations in 100 instances; largest deficiency " + fmt("%.0f", d)};
}

Outcome c14_gauss_lucas(std::uint64_t seed) {
  auto rng = stream(seed, 14);
  int hull_fail = 0, interlace_fail = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = uniform_int(rng, 2, 40);
    polycore::RootPoly p;
    p.roots = randgen::sample_complex_gaussian(rng, static_cast<std::size_t>(n), 1.0);
    const auto cp = rootsolve::critical_points(p);
    const auto in = measures::convex_hull_contains(PointCloud(p.roots), cp.roots, 1e-9);
    if (std::find(in.begin(), in.end(), false) != in.end()) ++hull_fail;
  }
  for (int t = 0; t < 500; ++t) {
    const int n = uniform_int(rng, 2, 40);
    auto x = randgen::sample_normal(rng, static_cast<std::size_t>(n));
    std::sort(x.begin(), x.end());
    const auto eta = rootsolve::real_interlaced_critical_points(x);
    bool ok = eta.size() == x.size() - 1;
    for (std::size_t i = 0; ok && i < eta.size(); ++i) ok = x[i] <= eta[i] && eta[i] <= x[i + 1];
    if (!ok) ++interlace_fail;
  }
  return {hull_fail == 0 && interlace_fail == 0,
          "hull failures " + std::to_string(hull_fail) + "/500, interlacing failures " +
              std::to_string(interlace_fail) + "/500"};
}

struct CriterionDef {
  int id;
  const char* name;
  double budget;
  Outcome (*fn)(std::uint64_t);
};

const CriterionDef kCriteria[] = {
    {1, "matching oracle", 5, c1_matching_oracle},
    {2, "exact mean law", 30, c2_mean_law},
    {3, "Vieta identity", 30, c3_vieta},
    {4, "exponential spacing", 300, c4_spacing},
    {5, "Ginibre intensity", 300, c5_intensity},
    {6, "Poisson limit", 300, c6_poisson},
    {7, "cross-term decay", 1, c7_cross_term},
    {8, "spherical count", 180, c8_spherical},
    {9, "product symmetry", 180, c9_symmetry},
    {10, "generalized Schur", 30, c10_schur},
    {11, "real eigenvalues", 300, c11_real_eig},
    {12, "two-sequence convergence", 600, c12_two_sequence},
    {13, "Walsh clusters", 120, c13_walsh},
    {14, "Gauss-Lucas and interlacing", 60, c14_gauss_lucas},
};

}  // namespace

std::string format_result(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s [%d] %s (%.1fs / %.0fs): ", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.budget_seconds);
  return head + r.detail;
}

std::vector<CriterionResult> run_all(std::uint64_t seed,
                                     const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (const auto& c : kCriteria) {
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.budget_seconds = c.budget;
    const auto t0 = Clock::now();
    try {
      const Outcome o = c.fn(seed);
      r.passed = o.ok;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (r.seconds > r.budget_seconds) {
      r.passed = false;
      r.detail += " [over time budget]";
    }
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace spectra::acceptance
