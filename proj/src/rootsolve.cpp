#include "spectra/rootsolve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "spectra/error.hpp"
#include "spectra/linalg.hpp"

namespace spectra::rootsolve {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
using lcplx = std::complex<long double>;

// Newton ratio f/f' and log|f| for the polynomial being solved.
struct Target {
  std::function<cplx(cplx)> newton_ratio;
  std::function<double(cplx)> log_abs;
  double log_lead = 0.0;
};

struct Iterate {
  std::vector<cplx> z;
  std::vector<double> residuals;
  int sweeps = 0;
  bool converged = false;
};

// log prod_{j != i} max(1, |z_i - z_j|)
double log_separation(const std::vector<cplx>& z, std::size_t i) {
  double logacc = 0.0;
  double prod = 1.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j == i) continue;
    const double d = std::abs(z[i] - z[j]);
    if (d > 1.0) {
      prod *= d;
      if (prod > 1e200) {
        logacc += std::log(prod);
        prod = 1.0;
      }
    }
  }
  return logacc + std::log(prod);
}

std::vector<double> residuals_of(const Target& t, const std::vector<cplx>& z) {
  std::vector<double> r(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double lv = t.log_abs(z[i]);
    r[i] = std::isnan(lv) ? std::numeric_limits<double>::infinity()
                          : std::exp(lv - t.log_lead - log_separation(z, i));
  }
  return r;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::isnan(x) ? std::numeric_limits<double>::infinity() : x);
  return m;
}

// Gauss-Seidel Aberth-Ehrlich sweeps. A root freezes once its correction is
// at rounding level. Success needs both small corrections (relative step
// <= kStepTol) and residuals <= kTolRoot; the residual alone is too weak a
// test when roots are spread over a region wider than 1. The loop stops after
// max_iter sweeps or, once steps are below 1e-6, when the largest step has
// not halved for kStallSweeps sweeps.
constexpr double kStepTol = 1e-10;

Iterate aberth(const Target& t, std::vector<cplx> z, int max_iter) {
  const std::size_t n = z.size();
  Iterate out;
  std::vector<char> frozen(n, 0);
  double best_step = std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (int it = 1; it <= max_iter; ++it) {
    out.sweeps = it;
    double max_step = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (frozen[i]) continue;
      cplx ratio = t.newton_ratio(z[i]);
      if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag())) {
        // landed on a pole of the ratio; nudge off it
        z[i] += cplx{1e-8, 1e-8} * (1.0 + std::abs(z[i]));
        max_step = std::numeric_limits<double>::infinity();
        continue;
      }
      cplx s{0.0, 0.0};
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        const cplx d = z[i] - z[k];
        if (d != cplx{0.0, 0.0}) s += 1.0 / d;
      }
      const cplx denom = 1.0 - ratio * s;
      const cplx delta = (denom == cplx{0.0, 0.0}) ? ratio : ratio / denom;
      if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) {
        max_step = std::numeric_limits<double>::infinity();
        continue;
      }
      z[i] -= delta;
      const double rel = std::abs(delta) / (1.0 + std::abs(z[i]));
      max_step = std::max(max_step, rel);
      if (rel <= 4.0 * kEps) frozen[i] = 1;
    }
    if (max_step <= kStepTol) {
      out.residuals = residuals_of(t, z);
      if (max_of(out.residuals) <= kTolRoot) {
        out.converged = true;
        break;
      }
    }
    // stall is judged only in the terminal phase, where steps are noise
    if (max_step < best_step * 0.5) {
      best_step = max_step;
      since_best = 0;
    } else if (best_step <= 1e-6 && ++since_best >= kStallSweeps) {
      break;
    }
  }
  if (!out.converged) out.residuals = residuals_of(t, z);
  out.z = std::move(z);
  return out;
}

std::vector<cplx> circle_start(cplx center, double radius, std::size_t n) {
  std::vector<cplx> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = center + std::polar(radius, theta);
  }
  return z;
}

Target coefficient_target(std::span<const cplx> c) {
  Target t;
  std::vector<lcplx> lc(c.begin(), c.end());
  t.log_lead = std::log(std::abs(c.back()));
  t.newton_ratio = [lc](cplx z) {
    const lcplx zl(z);
    lcplx p = lc.back();
    lcplx dp(0.0L, 0.0L);
    for (std::size_t k = lc.size() - 1; k-- > 0;) {
      dp = dp * zl + p;
      p = p * zl + lc[k];
    }
    return cplx(p / dp);
  };
  t.log_abs = [lc](cplx z) {
    const lcplx zl(z);
    lcplx p = lc.back();
    for (std::size_t k = lc.size() - 1; k-- > 0;) p = p * zl + lc[k];
    return static_cast<double>(std::log(std::abs(p)));
  };
  return t;
}

RootFindReport make_report(std::vector<cplx> z, std::vector<double> res, int iters, bool conv,
                           std::string method) {
  std::vector<std::size_t> idx(z.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return canonical_less(z[a], z[b]); });
  std::vector<cplx> zs;
  std::vector<double> rs;
  zs.reserve(z.size());
  rs.reserve(z.size());
  for (std::size_t i : idx) {
    zs.push_back(z[i]);
    rs.push_back(res[i]);
  }
  RootFindReport r;
  r.roots = PointCloud(std::move(zs));
  r.residuals = std::move(rs);
  r.iterations = iters;
  r.converged = conv;
  r.method = std::move(method);
  return r;
}

bool all_finite(const std::vector<cplx>& z) {
  return std::all_of(z.begin(), z.end(), [](const cplx& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  });
}

}  // namespace

double RootFindReport::max_residual() const { return max_of(residuals); }

RootFindReport solve_all(std::span<const cplx> coeffs) {
  if (coeffs.size() < 2) fail(ErrorCode::ZeroDegree, "solve_all needs degree >= 1");
  if (coeffs.back() == cplx{0.0, 0.0}) fail(ErrorCode::DegenerateInput, "zero leading coefficient");
  for (const auto& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      fail(ErrorCode::DegenerateInput, "non-finite coefficient");
  }
  const std::size_t n = coeffs.size() - 1;

  // Exact zero roots are split off; they carry zero residual.
  std::size_t zeros = 0;
  while (zeros < n && coeffs[zeros] == cplx{0.0, 0.0}) ++zeros;
  std::span<const cplx> c = coeffs.subspan(zeros);
  const std::size_t m = c.size() - 1;

  std::vector<cplx> found(zeros, cplx{0.0, 0.0});
  std::vector<double> res(zeros, 0.0);
  if (m == 0) return make_report(found, res, 0, true, "aberth");

  const Target t = coefficient_target(c);
  double radius = 0.0;
  for (std::size_t k = 0; k < m; ++k) radius = std::max(radius, std::abs(c[k] / c[m]));
  radius += 1.0;

  Iterate it = aberth(t, circle_start({0.0, 0.0}, radius, m), kMaxIter);
  std::string method = "aberth";
  if (!it.converged || !all_finite(it.z)) {
    Iterate alt;
    bool have_alt = false;
    try {
      const std::vector<cplx> cv(c.begin(), c.end());
      const auto eig = rmt::eigen_decompose(rmt::companion_matrix(cv));
      alt = aberth(t, eig.values, 50);
      if (!all_finite(alt.z)) {
        alt.z = eig.values;
        alt.residuals = residuals_of(t, alt.z);
      }
      alt.sweeps += it.sweeps;
      have_alt = all_finite(alt.z);
    } catch (const Error&) {
      have_alt = false;
    }
    const bool aberth_ok = all_finite(it.z);
    if (have_alt && (!aberth_ok || max_of(alt.residuals) <= max_of(it.residuals))) {
      it = std::move(alt);
      method = "companion";
    }
    if (!all_finite(it.z) || !(max_of(it.residuals) < 1e-6)) {
      fail(ErrorCode::NoConvergence, "root iteration and companion fallback both failed");
    }
  }
  found.insert(found.end(), it.z.begin(), it.z.end());
  res.insert(res.end(), it.residuals.begin(), it.residuals.end());
  const bool conv = max_of(res) <= kTolRoot;
  return make_report(std::move(found), std::move(res), it.sweeps, conv, method);
}

RootFindReport critical_points(const polycore::RootPoly& p) {
  if (p.degree() < 2) fail(ErrorCode::DegenerateInput, "critical_points needs degree >= 2");
  if (p.leading == cplx{0.0, 0.0}) fail(ErrorCode::DegenerateInput, "zero leading coefficient");

  std::vector<cplx> sorted = p.roots;
  canonical_sort(sorted);
  std::vector<cplx> d;
  std::vector<double> w;
  for (const cplx& r : sorted) {
    if (!d.empty() && d.back() == r) {
      w.back() += 1.0;
    } else {
      d.push_back(r);
      w.push_back(1.0);
    }
  }

  std::vector<cplx> found;
  std::vector<double> res;
  for (std::size_t j = 0; j < d.size(); ++j) {
    for (int k = 1; k < static_cast<int>(w[j]); ++k) {
      found.push_back(d[j]);
      res.push_back(0.0);
    }
  }
  const std::size_t m = d.size();
  if (m == 1) return make_report(std::move(found), std::move(res), 0, true, "aberth");

  // Q(z) = sum_j w_j prod_{i != j}(z - d_i) = R(z) D(z) with R = sum w/(z-d),
  // D = prod(z - d). Q/Q' = R / (R' + R * sum 1/(z-d)).
  const double n_total = static_cast<double>(p.degree());
  Target t;
  t.log_lead = std::log(n_total);
  t.newton_ratio = [&d, &w](cplx z) {
    cplx r{0.0, 0.0}, dr{0.0, 0.0}, ld{0.0, 0.0};
    for (std::size_t j = 0; j < d.size(); ++j) {
      const cplx inv = 1.0 / (z - d[j]);
      r += w[j] * inv;
      dr -= w[j] * inv * inv;
      ld += inv;
    }
    return r / (dr + r * ld);
  };
  t.log_abs = [&d, &w](cplx z) {
    cplx r{0.0, 0.0};
    double logd = 0.0;
    double prod = 1.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      const cplx diff = z - d[j];
      r += w[j] / diff;
      prod *= std::abs(diff);
      if (prod > 1e200 || prod < 1e-200) {
        logd += std::log(prod);
        prod = 1.0;
      }
    }
    return std::log(std::abs(r)) + logd + std::log(prod);
  };

  cplx centroid{0.0, 0.0};
  for (std::size_t j = 0; j < m; ++j) centroid += w[j] * d[j];
  centroid /= n_total;
  double radius = 0.0;
  for (const cplx& x : d) radius = std::max(radius, std::abs(x - centroid));
  if (radius == 0.0) radius = 1.0;

  Iterate it = aberth(t, circle_start(centroid, radius, m - 1), kMaxIter);
  if (it.converged && all_finite(it.z)) {
    found.insert(found.end(), it.z.begin(), it.z.end());
    res.insert(res.end(), it.residuals.begin(), it.residuals.end());
    return make_report(std::move(found), std::move(res), it.sweeps, true, "aberth");
  }

  // Coefficient route on P' as a whole.
  RootFindReport fb = solve_all(polycore::derivative_coefficients(p));
  fb.iterations += it.sweeps;
  if (it.converged || max_of(it.residuals) <= fb.max_residual()) {
    if (all_finite(it.z)) {
      found.insert(found.end(), it.z.begin(), it.z.end());
      res.insert(res.end(), it.residuals.begin(), it.residuals.end());
      return make_report(std::move(found), std::move(res), it.sweeps + fb.iterations,
                         max_of(res) <= kTolRoot, "aberth");
    }
  }
  return fb;
}

std::vector<double> real_interlaced_critical_points(std::span<const double> sorted_roots) {
  const std::size_t n = sorted_roots.size();
  if (n < 2) return {};
  std::vector<double> d;
  std::vector<double> w;
  for (double x : sorted_roots) {
    if (!d.empty() && d.back() == x) {
      w.back() += 1.0;
    } else {
      d.push_back(x);
      w.push_back(1.0);
    }
  }
  std::vector<double> out;
  out.reserve(n - 1);
  for (std::size_t j = 0; j < d.size(); ++j) {
    for (int k = 1; k < static_cast<int>(w[j]); ++k) out.push_back(d[j]);
  }

  // In (a, b) = (d_j, d_{j+1}) solve h(x) = (x-a)(x-b) sum_k w_k/(x-d_k) = 0.
  // h is smooth on [a, b] with h(a) < 0 < h(b), so Newton steps are safe
  // once clamped to the current bracket.
  for (std::size_t j = 0; j + 1 < d.size(); ++j) {
    const double a = d[j];
    const double b = d[j + 1];
    const double wa = w[j];
    const double wb = w[j + 1];
    auto h_and_dh = [&](double x, double& h, double& dh) {
      double s = 0.0, ds = 0.0;
      for (std::size_t k = 0; k < d.size(); ++k) {
        if (k == j || k == j + 1) continue;
        const double inv = 1.0 / (x - d[k]);
        s += w[k] * inv;
        ds -= w[k] * inv * inv;
      }
      const double xa = x - a;
      const double xb = x - b;
      h = wa * xb + wb * xa + xa * xb * s;
      dh = wa + wb + (xa + xb) * s + xa * xb * ds;
    };
    double lo = a;
    double hi = b;
    // start from the two-point balance position
    double x = (wa * b + wb * a) / (wa + wb);
    for (int it = 0; it < 200; ++it) {
      double h, dh;
      h_and_dh(x, h, dh);
      if (h == 0.0) break;
      if (h < 0.0) lo = x; else hi = x;
      double next = x - h / dh;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const double step = std::abs(next - x);
      x = next;
      if (step <= 2.0 * kEps * std::max(std::abs(x), b - a) || hi - lo <= 2.0 * kEps * std::abs(x)) break;
    }
    out.push_back(std::clamp(x, a, b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace spectra::rootsolve
