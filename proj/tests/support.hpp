#ifndef SPECTRA_TEST_SUPPORT_HPP
#define SPECTRA_TEST_SUPPORT_HPP

// Hand-rolled generators and independent oracles shared by the unit tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spectra/pointcloud.hpp"
#include "spectra/polycore.hpp"

namespace testsupport {

using spectra::cplx;

// Small xorshift generator, deliberately separate from the library streams.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : s_(seed * 0x9E3779B97F4A7C15ULL + 1) {}
  std::uint64_t bits() {
    s_ ^= s_ << 13;
    s_ ^= s_ >> 7;
    s_ ^= s_ << 17;
    return s_;
  }
  double unit() { return (static_cast<double>(bits() >> 11) + 0.5) / 9007199254740992.0; }
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(bits() % static_cast<std::uint64_t>(hi - lo + 1)); }
  double gauss() {
    const double u = unit(), v = unit();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
  }
  cplx cgauss() { return {gauss() / std::sqrt(2.0), gauss() / std::sqrt(2.0)}; }
  std::vector<double> reals(int n, double lo, double hi) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = range(lo, hi);
    return v;
  }
  std::vector<cplx> complexes(int n) {
    std::vector<cplx> v(static_cast<std::size_t>(n));
    for (auto& z : v) z = cgauss();
    return v;
  }

 private:
  std::uint64_t s_;
};

// Coefficients by repeated convolution with (z - r).
inline std::vector<cplx> convolve_roots(const std::vector<cplx>& roots, cplx leading = 1.0) {
  std::vector<cplx> c{leading};
  for (const auto& r : roots) {
    std::vector<cplx> next(c.size() + 1, cplx{0, 0});
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Root of f in [lo, hi] by plain bisection; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline std::size_t count_substr(const std::string& s, const std::string& pat) {
  std::size_t n = 0;
  for (auto p = s.find(pat); p != std::string::npos; p = s.find(pat, p + 1)) ++n;
  return n;
}

}  // namespace testsupport

#endif
