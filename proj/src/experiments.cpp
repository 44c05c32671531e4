#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spectra/error.hpp"
#include "spectra/lab.hpp"
#include "spectra/matching.hpp"
#include "spectra/measures.hpp"
#include "spectra/rmt.hpp"
#include "spectra/rootsolve.hpp"

namespace spectra::lab {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

// Composite Simpson rule on [a, b] with 2m panels.
template <class F>
double simpson(F f, double a, double b, int m = 1000) {
  const double h = (b - a) / (2 * m);
  double s = f(a) + f(b);
  for (int i = 1; i < 2 * m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

std::string key_n(const std::string& stem, long n) { return stem + "_" + std::to_string(n); }

double variance_param(const Params& p, int n) {
  return p.str("variance") == "auto" ? 1.0 / n : p.num("variance");
}

// ---------------------------------------------------------------- thm1-convergence
// xi_k picks between two equidistributed Weyl sequences on the unit circle,
// a_k = e^{2 pi i k phi} and b_k = e^{2 pi i k sqrt 2}.
std::vector<cplx> weyl_circle(std::size_t n, double alpha) {
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = std::fmod(static_cast<double>(k + 1) * alpha, 1.0);
    out[k] = std::polar(1.0, 2.0 * kPi * t);
  }
  return out;
}

TrialOutput two_seq_trial(const Params& p, randgen::RngStream& rng, long) {
  const long n_small = p.integer("n_small");
  const long n_large = p.integer("n_large");
  if (n_small < 2 || n_large <= n_small) fail(ErrorCode::BadParams, "parameter 'n_large' must exceed 'n_small' >= 2");
  const auto a = weyl_circle(static_cast<std::size_t>(n_large), std::numbers::phi);
  const auto b = weyl_circle(static_cast<std::size_t>(n_large), std::numbers::sqrt2);
  const auto xi = randgen::two_sequence_pick(a, b, p.num("p"), rng);
  const std::uint64_t slice_seed = rng.next_u64();

  const long m = p.integer("ref_points");
  std::vector<cplx> ref(static_cast<std::size_t>(m));
  for (long k = 0; k < m; ++k) ref[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * kPi * (k + 0.5) / m);
  const measures::EmpiricalMeasure mu{PointCloud(ref)};

  auto w1_at = [&](long n) {
    polycore::RootPoly poly;
    poly.roots.assign(xi.begin(), xi.begin() + n);
    const auto cp = rootsolve::critical_points(poly);
    return measures::sliced_wasserstein2d(measures::EmpiricalMeasure(cp.roots), mu,
                                          static_cast<int>(p.integer("n_proj")), slice_seed);
  };
  bool distinct = false;
  for (long k = 0; k < n_large && !distinct; ++k) distinct = a[static_cast<std::size_t>(k)] != b[static_cast<std::size_t>(k)];
  const double ws = w1_at(n_small);
  const double wl = w1_at(n_large);
  return {{{"w1_small", ws}, {"w1_large", wl}, {"improved", wl < ws ? 1.0 : 0.0},
           {"prefix_distinct", distinct ? 1.0 : 0.0}},
          {}};
}

json two_seq_summary(const Params&, const std::vector<TrialReport>& t) {
  const auto imp = metric_column(t, "improved");
  const auto pd = metric_column(t, "prefix_distinct");
  json j;
  j["fraction_improved"] = mean(imp);
  j["median_w1_small"] = median(metric_column(t, "w1_small"));
  j["median_w1_large"] = median(metric_column(t, "w1_large"));
  if (std::any_of(pd.begin(), pd.end(), [](double x) { return x == 0.0; })) {
    j["warning"] = "a_k == b_k on the whole prefix; the two-sequence hypothesis is not exercised";
  }
  return j;
}

PointCloud two_seq_scatter(const Params& p, randgen::RngStream& rng) {
  const long n = p.integer("n_small");
  const auto a = weyl_circle(static_cast<std::size_t>(n), std::numbers::phi);
  const auto b = weyl_circle(static_cast<std::size_t>(n), std::numbers::sqrt2);
  polycore::RootPoly poly;
  poly.roots = randgen::two_sequence_pick(a, b, p.num("p"), rng);
  return rootsolve::critical_points(poly).roots;
}

// ---------------------------------------------------------------- matching-lln
TrialOutput matching_trial(const Params& p, randgen::RngStream& rng, long) {
  const long n = p.integer("n");
  if (n < 1) fail(ErrorCode::BadParams, "parameter 'n' must be >= 1");
  auto x = randgen::sample_normal(rng, static_cast<std::size_t>(n));
  for (auto& v : x) v = std::abs(v);
  const double d1 = matching::zero_critical_distance(polycore::from_real_roots(x));
  return {{{"n", static_cast<double>(n)}, {"d1", d1}, {"mean_roots", mean(x)}}, {}};
}

json matching_summary(const Params&, const std::vector<TrialReport>& t) {
  const double target = std::sqrt(2.0 / kPi);
  const double m = mean(metric_column(t, "d1"));
  return {{"mean_d1", m}, {"target", target}, {"relative_error", std::abs(m - target) / target}};
}

// ---------------------------------------------------------------- exp-spacing
TrialOutput spacing_trial(const Params& p, randgen::RngStream& rng, long) {
  const long n = p.integer("n");
  const auto x = randgen::sample_exponential(rng, static_cast<std::size_t>(n), p.num("rate"));
  const auto g = matching::extremal_gap_statistic(x);
  const double nd = static_cast<double>(n);
  return {{{"n", nd},
           {"left_stat", g.left},
           {"right_stat", g.right},
           {"left_surrogate_stat", nd * std::log(nd) * matching::left_gap_surrogate(x)}},
          {}};
}

json spacing_summary(const Params&, const std::vector<TrialReport>& t) {
  const auto left = metric_column(t, "left_stat");
  const double in_band = static_cast<double>(std::count_if(left.begin(), left.end(), [](double v) {
                           return v >= 0.7 && v <= 1.4;
                         })) / static_cast<double>(left.size());
  return {{"median_left_stat", median(left)},
          {"median_right_stat", median(metric_column(t, "right_stat"))},
          {"median_left_surrogate_stat", median(metric_column(t, "left_surrogate_stat"))},
          {"fraction_left_in_0.7_1.4", in_band}};
}

// ---------------------------------------------------------------- ginibre-intensity
TrialOutput intensity_trial(const Params& p, randgen::RngStream& rng, long) {
  const int n = static_cast<int>(p.integer("n"));
  const int bins = static_cast<int>(p.integer("bins"));
  const double r0 = p.num("r_min"), r1 = p.num("r_max");
  if (bins < 1 || !(r1 > r0) || r0 < 0.0) fail(ErrorCode::BadParams, "parameter 'bins' or radial range invalid");
  const auto s = rmt::eigenvalues(rmt::sample_ginibre(rng, n, variance_param(p, n)));
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (const auto& z : s.eigenvalues) {
    const double r = std::abs(z);
    if (r < r0 || r >= r1) continue;
    const auto b = std::min<std::size_t>(static_cast<std::size_t>((r - r0) / (r1 - r0) * bins), counts.size() - 1);
    counts[b] += 1.0;
  }
  TrialOutput out;
  for (int b = 0; b < bins; ++b) out.metrics.emplace_back(key_n("count_bin", b), counts[static_cast<std::size_t>(b)]);
  return out;
}

json intensity_summary(const Params& p, const std::vector<TrialReport>& t) {
  const int n = static_cast<int>(p.integer("n"));
  const int bins = static_cast<int>(p.integer("bins"));
  const double r0 = p.num("r_min"), r1 = p.num("r_max");
  const double var = variance_param(p, n);
  json rows = json::array();
  double worst = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double lo = r0 + (r1 - r0) * b / bins;
    const double hi = r0 + (r1 - r0) * (b + 1) / bins;
    const double area = kPi * (hi * hi - lo * lo);
    const double expected = simpson([&](double r) { return rmt::ginibre_intensity_scaled(n, r, var) * 2.0 * kPi * r; }, lo, hi);
    const double observed = mean(metric_column(t, key_n("count_bin", b)));
    const double rel = std::abs(observed - expected) / expected;
    worst = std::max(worst, rel);
    rows.push_back({{"r_lo", lo}, {"r_hi", hi}, {"density_observed", observed / area},
                    {"density_kernel", expected / area}, {"relative_error", rel}});
  }
  return {{"bins", rows}, {"max_relative_error", worst}};
}

PointCloud intensity_scatter(const Params& p, randgen::RngStream& rng) {
  const int n = static_cast<int>(p.integer("n"));
  return rmt::eigenvalues(rmt::sample_ginibre(rng, n, variance_param(p, n))).eigenvalues;
}

// ---------------------------------------------------------------- poisson-limit
TrialOutput poisson_trial(const Params& p, randgen::RngStream& rng, long) {
  const int n = static_cast<int>(p.integer("n"));
  const auto s = rmt::power_spectrum_sample(rng, n);
  double inner = 0, annulus = 0, outer = 0;
  const double e = std::numbers::e;
  for (const auto& mu : s.eigenvalues) {
    const double r = std::abs(mu);
    if (r >= 1.0 / e && r < 1.0) inner += 1;
    if (r >= 1.0 && r <= e) annulus += 1;
    if (r > e && r <= e * e) outer += 1;
  }
  return {{{"count_inner", inner}, {"count_annulus", annulus}, {"count_outer", outer}}, {}};
}

json poisson_summary(const Params& p, const std::vector<TrialReport>& t) {
  const int n = static_cast<int>(p.integer("n"));
  const auto c = metric_column(t, "count_annulus");
  const double m = mean(c);
  const double exact = simpson([&](double r) { return rmt::power_intensity(n, r) * 2.0 * kPi * r; }, 1.0, std::numbers::e);
  return {{"mean_count", m},
          {"variance_over_mean", sample_variance(c) / m},
          {"corr_inner_annulus", correlation(metric_column(t, "count_inner"), c)},
          {"corr_annulus_outer", correlation(c, metric_column(t, "count_outer"))},
          {"expected_count_finite_n", exact},
          {"expected_count_limit", 1.0}};
}

PointCloud poisson_scatter(const Params& p, randgen::RngStream& rng) {
  return rmt::power_spectrum_sample(rng, static_cast<int>(p.integer("n"))).eigenvalues;
}

// ---------------------------------------------------------------- spherical-count
TrialOutput spherical_trial(const Params& p, randgen::RngStream& rng, long) {
  const int n = static_cast<int>(p.integer("n"));
  const auto eps = p.int_list("eps");
  const auto s = rmt::sample_product_ensemble(rng, n, eps);
  double inside = 0;
  for (const auto& z : s.eigenvalues) {
    if (std::abs(z) <= 1.0) inside += 1;
  }
  return {{{"count_unit_disk", inside}, {"resamples", static_cast<double>(s.resamples)}}, {}};
}

json spherical_summary(const Params& p, const std::vector<TrialReport>& t) {
  const int n = static_cast<int>(p.integer("n"));
  const double expected = simpson([&](double r) { return rmt::spherical_intensity(r, n) * 2.0 * kPi * r; }, 0.0, 1.0);
  const auto c = metric_column(t, "count_unit_disk");
  return {{"mean_count", mean(c)}, {"expected_count", expected},
          {"stderr", std::sqrt(sample_variance(c) / static_cast<double>(c.size()))}};
}

PointCloud spherical_scatter(const Params& p, randgen::RngStream& rng) {
  return rmt::sample_product_ensemble(rng, static_cast<int>(p.integer("n")), p.int_list("eps")).eigenvalues;
}

// ---------------------------------------------------------------- product-symmetry
TrialOutput symmetry_trial(const Params& p, randgen::RngStream& rng, long) {
  const int n = static_cast<int>(p.integer("n"));
  const auto ea = p.int_list("pattern_a");
  const auto eb = p.int_list("pattern_b");
  const auto sa = rmt::sample_product_ensemble(rng, n, ea);
  const auto sb = rmt::sample_product_ensemble(rng, n, eb);
  TrialOutput out;
  out.samples["moduli_a"] = sa.eigenvalues.moduli();
  out.samples["moduli_b"] = sb.eigenvalues.moduli();
  out.metrics = {{"median_modulus_a", median(out.samples["moduli_a"])},
                 {"median_modulus_b", median(out.samples["moduli_b"])},
                 {"resamples", static_cast<double>(sa.resamples + sb.resamples)}};
  return out;
}

json symmetry_summary(const Params& p, const std::vector<TrialReport>& t) {
  int sa = 0, sb = 0;
  for (int e : p.int_list("pattern_a")) sa += e;
  for (int e : p.int_list("pattern_b")) sb += e;
  return {{"ks_statistic", ks_two_sample(pooled_samples(t, "moduli_a"), pooled_samples(t, "moduli_b"))},
          {"sum_eps_a", sa},
          {"sum_eps_b", sb}};
}

// ---------------------------------------------------------------- real-eig
randgen::RealSampler entry_sampler(const Params& p) {
  const std::string kind = p.str("entries");
  const double q = p.num("q");
  if (kind == "gaussian") return [](randgen::RngStream& r) { return r.normal(); };
  if (kind == "bernoulli") return [q](randgen::RngStream& r) { return r.uniform() < q ? 1.0 : 0.0; };
  if (kind == "rademacher") return [q](randgen::RngStream& r) { return r.uniform() < q ? 1.0 : -1.0; };
  fail(ErrorCode::BadParams, "parameter 'entries' must be gaussian, bernoulli or rademacher");
}

TrialOutput realeig_trial(const Params& p, randgen::RngStream& rng, long) {
  const int k = static_cast<int>(p.integer("k"));
  const auto sampler = entry_sampler(p);
  TrialOutput out;
  for (int f : p.int_list("factors")) {
    const auto est = rmt::real_eig_probability(rng, k, f, sampler, 1);
    out.metrics.emplace_back(key_n("all_real_f", f), est.p_hat);
  }
  return out;
}

json realeig_summary(const Params& p, const std::vector<TrialReport>& t) {
  const int k = static_cast<int>(p.integer("k"));
  const double q = p.num("q");
  const bool atomic = p.str("entries") != "gaussian";
  json rows = json::array();
  for (int f : p.int_list("factors")) {
    const auto col = metric_column(t, key_n("all_real_f", f));
    const double ph = mean(col);
    json row{{"n_factors", f}, {"p_hat", ph},
             {"stderr", std::sqrt(ph * (1.0 - ph) / static_cast<double>(col.size()))}};
    if (atomic) row["atom_bound"] = 1.0 - std::pow(1.0 - std::pow(q, k * k), f);
    rows.push_back(row);
  }
  return {{"by_factors", rows}, {"real_tolerance", rmt::kRealEigTol}};
}

// ---------------------------------------------------------------- walsh-clusters
TrialOutput walsh_trial(const Params& p, randgen::RngStream& rng, long) {
  const int k_max = static_cast<int>(p.integer("k_max"));
  const int n_min = static_cast<int>(p.integer("n_min"));
  const int n_max = static_cast<int>(p.integer("n_max"));
  const double eps = p.num("eps");
  if (k_max < 1 || n_min < 1 || n_max < n_min) fail(ErrorCode::BadParams, "parameter 'k_max' or 'n_min'/'n_max' invalid");
  // the bound is only claimed for eps > (3 - sqrt 5)/2
  if (!(eps > (3.0 - std::sqrt(5.0)) / 2.0)) fail(ErrorCode::BadParams, "parameter 'eps' must exceed (3 - sqrt 5)/2");
  const int k = 1 + static_cast<int>(rng.uniform() * k_max);
  const int n = n_min + static_cast<int>(rng.uniform() * (n_max - n_min + 1));
  measures::ClusterSpec spec;
  spec.radius = 0.5;
  spec.separation = p.num("separation_per_cluster") * k;
  const double theta = 2.0 * kPi * rng.uniform();
  polycore::RootPoly poly;
  for (int j = 0; j < k; ++j) {
    // disks of diameter 1 with gaps of exactly `separation`
    const cplx c = std::polar((spec.separation + 2.0 * spec.radius) * j, theta);
    spec.centers.push_back(c);
    for (int i = 0; i < n; ++i) poly.roots.push_back(c + std::polar(spec.radius * std::sqrt(rng.uniform()), 2.0 * kPi * rng.uniform()));
  }
  double worst = 0.0;
  if (poly.degree() >= 2) {
    const auto cp = rootsolve::critical_points(poly);
    const auto def = measures::cluster_deficiency(spec, cp.roots, eps, n);
    worst = *std::max_element(def.begin(), def.end());
  }
  const double bound = measures::walsh_constant(k, eps, spec.separation);
  return {{{"k", static_cast<double>(k)}, {"n_per_cluster", static_cast<double>(n)},
           {"separation", spec.separation}, {"max_deficiency", worst}, {"bound", bound},
           {"violated", worst > bound ? 1.0 : 0.0}},
          {}};
}

json walsh_summary(const Params&, const std::vector<TrialReport>& t) {
  const auto v = metric_column(t, "violated");
  const auto d = metric_column(t, "max_deficiency");
  return {{"violations", std::count(v.begin(), v.end(), 1.0)},
          {"max_deficiency", *std::max_element(d.begin(), d.end())}};
}

// ---------------------------------------------------------------- discrepancy
// Roots of n z^{n+1} - (n+1) z^n + 1 = (z - 1)^2 sum_{k<n} (k+1) z^k.
std::vector<cplx> discrepancy_coeffs(long n) {
  std::vector<cplx> c(static_cast<std::size_t>(n + 2), 0.0);
  c[0] = 1.0;
  c[static_cast<std::size_t>(n)] = -(n + 1.0);
  c[static_cast<std::size_t>(n + 1)] = static_cast<double>(n);
  return c;
}

PointCloud discrepancy_roots(long n) {
  std::vector<cplx> q(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) q[static_cast<std::size_t>(k)] = static_cast<double>(k + 1);
  std::vector<cplx> roots{1.0, 1.0};
  if (n >= 2) {
    const auto r = rootsolve::solve_all(q);
    roots.insert(roots.end(), r.roots.begin(), r.roots.end());
  }
  return PointCloud(std::move(roots));
}

TrialOutput discrepancy_trial(const Params& p, randgen::RngStream&, long) {
  const double C = p.num("C");
  TrialOutput out;
  for (int n : p.int_list("ns")) {
    if (n < 1) fail(ErrorCode::BadParams, "parameter 'ns' entries must be >= 1");
    const double d = measures::angular_discrepancy(discrepancy_roots(n));
    const double rhs = measures::erdos_turan_rhs(discrepancy_coeffs(n), C);
    out.metrics.emplace_back(key_n("disc", n), d);
    out.metrics.emplace_back(key_n("rhs", n), rhs);
    out.metrics.emplace_back(key_n("holds", n), d * d <= rhs ? 1.0 : 0.0);
  }
  return out;
}

json discrepancy_summary(const Params& p, const std::vector<TrialReport>& t) {
  const auto ns = p.int_list("ns");
  bool decreasing = true;
  bool holds = true;
  double prev = 2.0;
  for (int n : ns) {
    const double d = metric_column(t, key_n("disc", n)).front();
    decreasing = decreasing && d < prev;
    prev = d;
    holds = holds && metric_column(t, key_n("holds", n)).front() == 1.0;
  }
  return {{"decreasing", decreasing}, {"erdos_turan_holds", holds}};
}

PointCloud discrepancy_scatter(const Params& p, randgen::RngStream&) {
  return discrepancy_roots(p.int_list("ns").back());
}

}  // namespace

const std::vector<Experiment>& registry() {
  static const std::vector<Experiment> reg = {
      {"thm1-convergence", "critical points of two-sequence picks approach the circle law",
       {{"n_small", "100"}, {"n_large", "1600"}, {"p", "0.5"}, {"n_proj", "64"}, {"ref_points", "4096"}},
       two_seq_trial, two_seq_summary, two_seq_scatter},
      {"matching-lln", "zero/critical matching distance of |N(0,1)| roots", {{"n", "200"}},
       matching_trial, matching_summary, nullptr},
      {"exp-spacing", "extremal zero/critical gaps of exponential samples", {{"n", "2000"}, {"rate", "1"}},
       spacing_trial, spacing_summary, nullptr},
      {"ginibre-intensity", "binned radial eigenvalue density against the kernel intensity",
       {{"n", "64"}, {"variance", "auto"}, {"r_min", "0.2"}, {"r_max", "0.9"}, {"bins", "7"}},
       intensity_trial, intensity_summary, intensity_scatter},
      {"poisson-limit", "counts of n-th powers of Ginibre eigenvalues in annuli", {{"n", "64"}},
       poisson_trial, poisson_summary, poisson_scatter},
      {"spherical-count", "unit-disk count of product-with-inverse eigenvalues",
       {{"n", "32"}, {"eps", "-1,1"}}, spherical_trial, spherical_summary, spherical_scatter},
      {"product-symmetry", "radial laws of products with equal exponent sums",
       {{"n", "16"}, {"pattern_a", "-1,1,1"}, {"pattern_b", "1,1,-1"}}, symmetry_trial, symmetry_summary,
       nullptr},
      {"real-eig", "probability that a product of small real matrices has real spectrum",
       {{"k", "2"}, {"factors", "1,2,4,8"}, {"entries", "gaussian"}, {"q", "0.5"}}, realeig_trial,
       realeig_summary, nullptr},
      {"walsh-clusters", "critical points retained near separated root clusters",
       {{"k_max", "3"}, {"n_min", "2"}, {"n_max", "50"}, {"eps", "0.5"}, {"separation_per_cluster", "5"}},
       walsh_trial, walsh_summary, nullptr},
      {"discrepancy", "angular discrepancy against the Erdos-Turan bound",
       {{"ns", "32,64,128,256"}, {"C", "10"}}, discrepancy_trial, discrepancy_summary, discrepancy_scatter},
  };
  return reg;
}

}  // namespace spectra::lab
