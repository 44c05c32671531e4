#include "spectra/polycore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spectra/error.hpp"
#include "spectra/summation.hpp"

namespace spectra::polycore {

RootPoly from_real_roots(std::span<const double> roots) {
  RootPoly p;
  p.roots.reserve(roots.size());
  for (double x : roots) p.roots.emplace_back(x, 0.0);
  return p;
}

WeightedLogDeriv::WeightedLogDeriv(std::vector<cplx> roots, std::vector<cplx> weights)
    : roots_(std::move(roots)), weights_(std::move(weights)) {
  if (roots_.size() != weights_.size()) {
    fail(ErrorCode::SizeMismatch, "weights and roots differ in length");
  }
}

WeightedLogDeriv WeightedLogDeriv::unit(const RootPoly& p) { return unit(p.roots); }

WeightedLogDeriv WeightedLogDeriv::unit(std::vector<cplx> roots) {
  std::vector<cplx> w(roots.size(), cplx{1.0, 0.0});
  return WeightedLogDeriv(std::move(roots), std::move(w));
}

double exclusion_radius(cplx z) noexcept { return 1e-12 * (1.0 + std::abs(z)); }

std::vector<cplx> expand_coefficients(const RootPoly& p) {
  // Largest roots first keeps the partial products' coefficients from
  // growing before the small factors are folded in.
  std::vector<cplx> order = p.roots;
  std::stable_sort(order.begin(), order.end(), [](const cplx& a, const cplx& b) {
    const double ma = std::abs(a);
    const double mb = std::abs(b);
    if (ma != mb) return ma > mb;
    return canonical_less(a, b);
  });

  std::vector<cplx> c{cplx{1.0, 0.0}};
  c.reserve(order.size() + 1);
  for (const cplx& r : order) {
    c.push_back(cplx{0.0, 0.0});
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  for (auto& x : c) x *= p.leading;
  return c;
}

cplx eval(const RootPoly& p, cplx z) {
  cplx v = p.leading;
  for (const cplx& r : p.roots) v *= (z - r);
  return v;
}

double eval_scale(const RootPoly& p, cplx z) {
  double s = std::abs(p.leading);
  for (const cplx& r : p.roots) s *= std::max(1.0, std::abs(z - r));
  return s;
}

cplx horner(std::span<const cplx> coeffs, cplx z) {
  cplx v{0.0, 0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * z + *it;
  return v;
}

std::vector<cplx> derivative_coefficients(std::span<const cplx> coeffs) {
  if (coeffs.size() < 2) fail(ErrorCode::ZeroDegree, "derivative of a constant");
  std::vector<cplx> d(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs[k];
  return d;
}

std::vector<cplx> derivative_coefficients(const RootPoly& p) {
  if (p.degree() == 0) fail(ErrorCode::ZeroDegree, "derivative of a constant");
  const auto c = expand_coefficients(p);
  return derivative_coefficients(std::span<const cplx>(c));
}

namespace {

void check_pole(const WeightedLogDeriv& w, cplx z) {
  const double rho = exclusion_radius(z);
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (std::abs(z - w.roots()[k]) < rho) {
      fail(ErrorCode::NearPole, "evaluation point within exclusion radius of root " +
                                    std::to_string(k));
    }
  }
}

}  // namespace

cplx eval_log_deriv(const WeightedLogDeriv& w, cplx z) {
  check_pole(w, z);
  CompensatedComplexSum acc;
  for (std::size_t k = 0; k < w.size(); ++k) acc.add(w.weights()[k] / (z - w.roots()[k]));
  return acc.value();
}

LogModulus log_abs_log_deriv(const WeightedLogDeriv& w, cplx z) {
  check_pole(w, z);
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (w.size() == 0) return {kNegInf, true};

  // Terms are formed in log-magnitude so that neither tiny weights nor far
  // evaluation points underflow before the sum is taken.
  std::vector<double> log_mag(w.size());
  double top = kNegInf;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double a = std::abs(w.weights()[k]);
    log_mag[k] = (a == 0.0) ? kNegInf : std::log(a) - std::log(std::abs(z - w.roots()[k]));
    top = std::max(top, log_mag[k]);
  }
  if (top == kNegInf) return {kNegInf, true};

  CompensatedComplexSum acc;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (log_mag[k] == kNegInf) continue;
    const cplx term = w.weights()[k] / (z - w.roots()[k]);
    const double phase_mag = std::abs(term);
    const cplx unit = phase_mag > 0.0 ? term / phase_mag
                                      : std::polar(1.0, std::arg(w.weights()[k]) -
                                                            std::arg(z - w.roots()[k]));
    acc.add(unit * std::exp(log_mag[k] - top));
  }
  const double m = std::abs(acc.value());
  if (m == 0.0) return {kNegInf, true};
  return {std::log(m) + top, false};
}

}  // namespace spectra::polycore
