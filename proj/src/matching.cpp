#include "spectra/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spectra/error.hpp"
#include "spectra/rootsolve.hpp"
#include "spectra/summation.hpp"

namespace spectra::matching {

namespace {

std::vector<std::size_t> argsort(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  return idx;
}

void check_sizes(std::span<const double> X, std::span<const double> Y) {
  if (X.size() != Y.size()) fail(ErrorCode::SizeMismatch, "matching needs equal sizes");
  if (X.empty()) fail(ErrorCode::InvalidArgument, "matching needs at least one point");
}

std::vector<double> real_roots_sorted(const polycore::RootPoly& p) {
  std::vector<double> x;
  x.reserve(p.degree());
  for (const auto& r : p.roots) {
    if (r.imag() != 0.0) fail(ErrorCode::ComplexRoots, "polynomial has non-real roots");
    x.push_back(r.real());
  }
  std::sort(x.begin(), x.end());
  return x;
}

// Correctly rounded value of the exact cost: each |x - y| is split into its
// rounded difference and the rounding error, so optimal pairings with equal
// exact cost report bit-identical distances.
double pairing_cost(std::span<const double> X, std::span<const double> Y,
                    const std::vector<std::pair<std::size_t, std::size_t>>& pairing) {
  std::vector<double> parts;
  parts.reserve(2 * pairing.size());
  for (const auto& [i, j] : pairing) {
    const double a = X[i];
    const double b = -Y[j];
    const double d = a + b;
    const double bv = d - a;
    const double e = (a - (d - bv)) + (b - bv);
    const double sign = (d < 0.0 || (d == 0.0 && e < 0.0)) ? -1.0 : 1.0;
    parts.push_back(sign * d);
    parts.push_back(sign * e);
  }
  return exact_sum(parts);
}

std::vector<double> sorted_copy(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

MatchResult sorted_l1(std::span<const double> X, std::span<const double> Y) {
  check_sizes(X, Y);
  const auto ix = argsort(X);
  const auto iy = argsort(Y);
  MatchResult m;
  m.pairing.reserve(X.size());
  for (std::size_t k = 0; k < X.size(); ++k) m.pairing.emplace_back(ix[k], iy[k]);
  m.distance = pairing_cost(X, Y, m.pairing);
  return m;
}

MatchResult brute_force_l1(std::span<const double> X, std::span<const double> Y) {
  check_sizes(X, Y);
  if (X.size() > 9) fail(ErrorCode::TooLarge, "brute force limited to 9 points");
  std::vector<std::size_t> perm(X.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  auto as_pairing = [&](const std::vector<std::size_t>& pm) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(pm.size());
    for (std::size_t i = 0; i < pm.size(); ++i) out.emplace_back(i, pm[i]);
    return out;
  };
  // Naive sums screen candidates; near-ties are settled on the exact cost.
  double best_naive = std::numeric_limits<double>::infinity();
  double best_exact = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_perm = perm;
  do {
    double d = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) d += std::abs(X[i] - Y[perm[i]]);
    if (d <= best_naive * (1.0 + 1e-12)) {
      const double exact = pairing_cost(X, Y, as_pairing(perm));
      if (exact < best_exact) {
        best_exact = exact;
        best_perm = perm;
      }
      best_naive = std::min(best_naive, d);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  MatchResult m;
  m.pairing = as_pairing(best_perm);
  m.distance = best_exact;
  return m;
}

double zero_critical_distance(const polycore::RootPoly& p) {
  const auto x = real_roots_sorted(p);
  if (x.empty()) fail(ErrorCode::InvalidArgument, "degree must be >= 1");
  auto eta = rootsolve::real_interlaced_critical_points(x);
  eta.push_back(0.0);
  return sorted_l1(x, eta).distance;
}

MixedSignResult mixed_sign_bound(const polycore::RootPoly& p) {
  const auto x = real_roots_sorted(p);
  const auto k = static_cast<std::size_t>(std::count_if(x.begin(), x.end(), [](double v) { return v < 0.0; }));
  if (k == 0 || k == x.size()) fail(ErrorCode::SignDegenerate, "roots must take both signs");
  CompensatedSum neg, pos;
  for (double v : x) (v < 0.0 ? neg : pos).add(std::abs(v));
  MixedSignResult r;
  r.bound = neg.value() / static_cast<double>(k) + pos.value() / static_cast<double>(x.size() - k);
  auto eta = rootsolve::real_interlaced_critical_points(x);
  eta.push_back(0.0);
  r.distance = sorted_l1(x, eta).distance;
  return r;
}

bool interlace_shift_check(std::span<const double> roots, double alpha) {
  const auto x = sorted_copy(roots);
  if (x.empty() || !(alpha < x.front())) fail(ErrorCode::AlphaNotLeft, "alpha must lie left of all roots");
  const auto eta = rootsolve::real_interlaced_critical_points(x);
  std::vector<double> ext;
  ext.reserve(x.size() + 1);
  ext.push_back(alpha);
  ext.insert(ext.end(), x.begin(), x.end());
  const auto eta2 = rootsolve::real_interlaced_critical_points(ext);
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (eta2[i + 1] < eta[i] - 1e-10) return false;
  }
  return true;
}

GapStatistic extremal_gap_statistic(std::span<const double> sample) {
  if (sample.size() < 3) fail(ErrorCode::InvalidArgument, "need at least 3 samples");
  const auto x = sorted_copy(sample);
  if (std::adjacent_find(x.begin(), x.end()) != x.end()) fail(ErrorCode::DuplicateValues, "repeated sample value");
  const auto eta = rootsolve::real_interlaced_critical_points(x);
  const double n = static_cast<double>(x.size());
  const double scale = n * std::log(n);
  return {scale * (eta.front() - x.front()), scale * (x.back() - eta.back())};
}

double left_gap_surrogate(std::span<const double> sample) {
  if (sample.size() < 2) fail(ErrorCode::InvalidArgument, "need at least 2 samples");
  const auto x = sorted_copy(sample);
  if (std::adjacent_find(x.begin(), x.end()) != x.end()) fail(ErrorCode::DuplicateValues, "repeated sample value");
  CompensatedSum s;
  for (std::size_t i = 1; i < x.size(); ++i) s.add(1.0 / (x[i] - x[0]));
  return 1.0 / s.value();
}

std::vector<double> renyi_exponential_order_stats(std::span<const double> E) {
  for (double e : E) {
    if (!(e > 0.0)) fail(ErrorCode::NonPositive, "exponential inputs must be positive");
  }
  const std::size_t n = E.size();
  std::vector<double> y(n);
  double acc = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t j = n - i + 1;
    acc += E[j - 1] / static_cast<double>(j);
    y[i - 1] = acc;
  }
  return y;
}

std::vector<double> uniform_order_stats_from_exponentials(std::span<const double> E,
                                                          std::size_t n) {
  if (E.size() != n + 1) fail(ErrorCode::SizeMismatch, "need n + 1 exponentials");
  for (double e : E) {
    if (!(e > 0.0)) fail(ErrorCode::NonPositive, "exponential inputs must be positive");
  }
  std::vector<double> s(n + 1);
  double acc = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    acc += E[k];
    s[k] = acc;
  }
  std::vector<double> u(n);
  for (std::size_t k = 0; k < n; ++k) u[k] = s[k] / s[n];
  return u;
}

}  // namespace spectra::matching
