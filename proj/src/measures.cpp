#include "spectra/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spectra/error.hpp"
#include "spectra/randgen.hpp"
#include "spectra/summation.hpp"

namespace spectra::measures {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// stream id for the projection directions ("sliced")
constexpr std::uint64_t kSliceStream = 0x736C69636564ULL;

std::vector<double> sorted_copy(std::span<const double> x) {
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  return v;
}

double cross(cplx o, cplx a, cplx b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

double segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

// Andrew's monotone chain; counter-clockwise, collinear points dropped.
std::vector<cplx> hull_of(std::span<const cplx> pts) {
  std::vector<cplx> p(pts.begin(), pts.end());
  canonical_sort(p);
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  std::vector<cplx> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0.0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0.0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

EmpiricalMeasure::EmpiricalMeasure(PointCloud support) : support_(std::move(support)) {
  if (support_.empty()) fail(ErrorCode::EmptyMeasure, "empirical measure needs at least one point");
}

double wasserstein1_1d(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) fail(ErrorCode::EmptyMeasure, "empty support");
  const auto x = sorted_copy(a);
  const auto y = sorted_copy(b);
  const std::size_t na = x.size();
  const std::size_t nb = y.size();
  // Walk the merged quantile grid {i/na} u {j/nb}; breakpoints compared in
  // integers so equal sizes reduce exactly to the sorted pairing.
  CompensatedSum acc;
  std::size_t i = 0, j = 0;
  double t = 0.0;
  while (i < na && j < nb) {
    const std::uint64_t ia = (i + 1) * nb;
    const std::uint64_t jb = (j + 1) * na;
    const double next = (ia <= jb) ? static_cast<double>(i + 1) / static_cast<double>(na)
                                   : static_cast<double>(j + 1) / static_cast<double>(nb);
    acc.add((next - t) * std::abs(x[i] - y[j]));
    t = next;
    if (ia <= jb) ++i;
    if (jb <= ia) ++j;
  }
  return acc.value();
}

double sliced_wasserstein2d(const EmpiricalMeasure& a, const EmpiricalMeasure& b, int n_proj,
                            std::uint64_t seed) {
  if (n_proj < 1) fail(ErrorCode::InvalidArgument, "n_proj must be >= 1");
  randgen::RngStream rng(seed, kSliceStream);
  std::vector<double> pa(a.size()), pb(b.size());
  CompensatedSum acc;
  for (int k = 0; k < n_proj; ++k) {
    const double theta = std::numbers::pi * rng.uniform();
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (std::size_t i = 0; i < a.size(); ++i) pa[i] = c * a.support()[i].real() + s * a.support()[i].imag();
    for (std::size_t i = 0; i < b.size(); ++i) pb[i] = c * b.support()[i].real() + s * b.support()[i].imag();
    acc.add(wasserstein1_1d(pa, pb));
  }
  return acc.value() / static_cast<double>(n_proj);
}

double levy_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) fail(ErrorCode::EmptyMeasure, "empty support");
  const auto x = sorted_copy(a);
  const auto y = sorted_copy(b);
  auto cdf = [](const std::vector<double>& v, double t) {
    return static_cast<double>(std::upper_bound(v.begin(), v.end(), t) - v.begin()) /
           static_cast<double>(v.size());
  };
  // Both differences are right-continuous step functions, so their sup is
  // attained at a breakpoint. At x = x_i +- eps the shifted CDF is evaluated
  // at x_i itself; recomputing (x_i + eps) - eps can round below x_i.
  auto feasible = [&](double eps) {
    for (double xi : x) {
      if (cdf(x, xi) - eps > cdf(y, xi + eps)) return false;
      if (cdf(y, xi - eps) > cdf(x, xi) + eps) return false;
    }
    for (double yj : y) {
      if (cdf(x, yj - eps) - eps > cdf(y, yj)) return false;
      if (cdf(y, yj) > cdf(x, yj + eps) + eps) return false;
    }
    return true;
  };
  if (feasible(0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

double angular_discrepancy(const PointCloud& points) {
  const std::size_t n = points.size();
  if (n == 0) fail(ErrorCode::EmptyMeasure, "no points");
  std::vector<double> t;
  t.reserve(2 * n);
  for (const auto& z : points) {
    if (z == cplx{0.0, 0.0}) fail(ErrorCode::ZeroPoint, "argument undefined at the origin");
    double a = std::arg(z);
    if (a < 0.0) a += kTwoPi;
    t.push_back(a);
  }
  std::sort(t.begin(), t.end());
  for (std::size_t i = 0; i < n; ++i) t.push_back(t[i] + kTwoPi);
  const double nd = static_cast<double>(n);
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j <= i + n && j < 2 * n; ++j) {
      const double len = (t[j] - t[i]) / kTwoPi;
      // closed arc [t_i, t_j] holds at least j - i + 1 points
      if (j < i + n) best = std::max(best, static_cast<double>(j - i + 1) / nd - len);
      // open arc (t_i, t_j) holds at most j - i - 1 points
      if (j > i) best = std::max(best, std::min(len, 1.0) - static_cast<double>(j - i - 1) / nd);
    }
  }
  return best;
}

double erdos_turan_rhs(std::span<const cplx> coeffs, double C) {
  if (coeffs.size() < 2) fail(ErrorCode::ZeroDegree, "degree must be >= 1");
  const double a0 = std::abs(coeffs.front());
  const double an = std::abs(coeffs.back());
  if (a0 == 0.0 || an == 0.0) fail(ErrorCode::VanishingEndCoefficient, "a_0 a_N must be nonzero");
  CompensatedSum s;
  for (const auto& c : coeffs) s.add(std::abs(c));
  const double N = static_cast<double>(coeffs.size() - 1);
  return C / N * std::log(s.value() / std::sqrt(a0 * an));
}

std::vector<bool> convex_hull_contains(const PointCloud& cloud, const PointCloud& queries,
                                       double tol) {
  if (cloud.empty()) fail(ErrorCode::EmptyMeasure, "empty cloud");
  const auto h = hull_of(cloud.points());
  std::vector<bool> out;
  out.reserve(queries.size());
  for (const auto& q : queries) {
    if (h.size() == 1) {
      out.push_back(std::abs(q - h[0]) <= tol);
      continue;
    }
    if (h.size() == 2) {
      out.push_back(segment_distance(q, h[0], h[1]) <= tol);
      continue;
    }
    bool inside = true;
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < h.size(); ++i) {
      const cplx a = h[i];
      const cplx b = h[(i + 1) % h.size()];
      if (cross(a, b, q) < 0.0) inside = false;
      dmin = std::min(dmin, segment_distance(q, a, b));
    }
    out.push_back(inside || dmin <= tol);
  }
  return out;
}

double walsh_constant(int k, double eps, double d_s) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  double denom = eps / ((1.0 + eps) * (1.0 + eps));
  if (k > 1) {
    if (!(d_s > eps)) fail(ErrorCode::HypothesisViolated, "separation must exceed eps");
    denom -= static_cast<double>(k - 1) / (d_s - eps);
  }
  if (!(denom > 0.0)) {
    fail(ErrorCode::HypothesisViolated,
         "separation too small: need d_s > eps + (k-1)(1+eps)^2/eps");
  }
  return (1.0 + 2.0 * eps) / (2.0 * eps * eps) * static_cast<double>(k) / denom;
}

void ClusterSpec::validate() const {
  if (!(radius > 0.0)) fail(ErrorCode::InvalidArgument, "cluster radius must be positive");
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      const double dist = std::abs(centers[i] - centers[j]);
      if (dist - 2.0 * radius < separation - 1e-12 * dist) {
        fail(ErrorCode::InvalidArgument, "cluster disks closer than the separation");
      }
    }
  }
}

std::vector<int> cluster_deficiency(const ClusterSpec& spec, const PointCloud& critical,
                                    double eps, int n_per_cluster) {
  spec.validate();
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  std::vector<int> out;
  out.reserve(spec.centers.size());
  const double reach = spec.radius + eps;
  for (const auto& c : spec.centers) {
    int count = 0;
    for (const auto& z : critical) {
      if (std::abs(z - c) <= reach) ++count;
    }
    out.push_back(n_per_cluster - count);
  }
  return out;
}

double log_cesaro_stat(std::span<const cplx> seq, std::size_t n) {
  if (n == 0 || n > seq.size()) fail(ErrorCode::InvalidArgument, "n must lie in [1, length]");
  CompensatedSum s;
  for (std::size_t k = 0; k < n; ++k) s.add(std::max(0.0, std::log(std::abs(seq[k]))));
  return s.value() / static_cast<double>(n);
}

double concentration_estimate(std::span<const double> samples, double delta) {
  if (samples.empty()) fail(ErrorCode::EmptyMeasure, "no samples");
  if (!(delta > 0.0)) fail(ErrorCode::InvalidArgument, "delta must be positive");
  const auto v = sorted_copy(samples);
  std::size_t best = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (j < i) j = i;
    while (j + 1 < v.size() && v[j + 1] - v[i] <= 2.0 * delta) ++j;
    best = std::max(best, j - i + 1);
  }
  return static_cast<double>(best) / static_cast<double>(v.size());
}

PotentialDiagnostics potential_diagnostics(const polycore::WeightedLogDeriv& w,
                                           std::span<const cplx> z_list, double eps, double r,
                                           int grid_size) {
  if (w.size() == 0) fail(ErrorCode::InvalidArgument, "empty log-derivative");
  if (grid_size < 64) fail(ErrorCode::InvalidArgument, "grid_size must be >= 64");
  if (!(r > 0.0)) fail(ErrorCode::InvalidArgument, "radius must be positive");
  const double n = static_cast<double>(w.size());
  auto near_pole = [&](cplx z) {
    const double rho = 1e3 * polycore::exclusion_radius(z);
    for (const auto& p : w.roots()) {
      if (std::abs(z - p) < rho) return true;
    }
    return false;
  };

  PotentialDiagnostics d;
  std::size_t above = 0, below = 0;
  for (const auto& z : z_list) {
    if (near_pole(z)) {
      ++d.skipped_near_pole;
      continue;
    }
    const auto lm = polycore::log_abs_log_deriv(w, z);
    if (lm.neg_infinity) {
      ++d.skipped_neg_infinity;
      continue;
    }
    ++d.evaluated;
    const double v = lm.value / n;
    if (v > eps) ++above;
    if (v < -eps) ++below;
  }
  if (d.evaluated > 0) {
    d.a1_rate = static_cast<double>(above) / static_cast<double>(d.evaluated);
    d.a2_rate = static_cast<double>(below) / static_cast<double>(d.evaluated);
  }

  const double dr = r / grid_size;
  const double dt = kTwoPi / grid_size;
  CompensatedSum integral, skipped;
  for (int i = 0; i < grid_size; ++i) {
    const double rm = (i + 0.5) * dr;
    const double area = rm * dr * dt;
    for (int j = 0; j < grid_size; ++j) {
      const cplx z = std::polar(rm, (j + 0.5) * dt);
      if (near_pole(z)) {
        ++d.skipped_cells;
        skipped.add(area);
        continue;
      }
      const auto lm = polycore::log_abs_log_deriv(w, z);
      if (lm.neg_infinity) {
        ++d.skipped_cells;
        skipped.add(area);
        continue;
      }
      const double v = lm.value / n;
      integral.add(v * v * area);
    }
  }
  d.a3_integral = integral.value();
  d.skipped_area = skipped.value();
  return d;
}

double poisson_jensen_residual(const PointCloud& zeros, const PointCloud& poles, cplx z, double R,
                               int quad_nodes) {
  if (!(R > 0.0) || !(std::abs(z) < R)) fail(ErrorCode::InvalidArgument, "need |z| < R");
  if (quad_nodes < 8) fail(ErrorCode::InvalidArgument, "quad_nodes must be >= 8");
  for (const auto* set : {&zeros, &poles}) {
    for (const auto& a : *set) {
      if (std::abs(std::abs(a) - R) < 1e-9) {
        fail(ErrorCode::SingularOnContour, "zero or pole on the integration circle");
      }
      if (a == z) fail(ErrorCode::NearPole, "z coincides with a zero or pole");
    }
  }
  auto log_abs_f = [&](cplx x) {
    CompensatedSum s;
    for (const auto& a : zeros) s.add(std::log(std::abs(x - a)));
    for (const auto& b : poles) s.add(-std::log(std::abs(x - b)));
    return s.value();
  };

  const double r2 = R * R;
  const double z2 = std::norm(z);
  CompensatedSum boundary;
  for (int k = 0; k < quad_nodes; ++k) {
    const cplx wk = std::polar(R, kTwoPi * k / quad_nodes);
    const double kernel = (r2 - z2) / std::norm(wk - z);
    boundary.add(log_abs_f(wk) * kernel);
  }
  double rhs = boundary.value() / quad_nodes;
  for (const auto& a : zeros) {
    if (std::abs(a) < R) rhs -= std::log(std::abs((r2 - std::conj(a) * z) / (R * (z - a))));
  }
  for (const auto& b : poles) {
    if (std::abs(b) < R) rhs += std::log(std::abs((r2 - std::conj(b) * z) / (R * (z - b))));
  }
  return std::abs(log_abs_f(z) - rhs);
}

}  // namespace spectra::measures
