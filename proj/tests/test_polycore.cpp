#include <doctest.h>

#include <cmath>

#include "spectra/error.hpp"
#include "spectra/polycore.hpp"
#include "support.hpp"

using namespace spectra;
using namespace spectra::polycore;
using testsupport::Gen;

namespace {
RootPoly poly(std::vector<cplx> r, cplx lead = 1.0) {
  RootPoly p;
  p.roots = std::move(r);
  p.leading = lead;
  return p;
}
void check_coeffs(const std::vector<cplx>& got, const std::vector<cplx>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-12);
}
}  // namespace

TEST_CASE("expand_coefficients examples") {
  check_coeffs(expand_coefficients(poly({1.0, -1.0})), {-1.0, 0.0, 1.0});
  check_coeffs(expand_coefficients(poly({})), {1.0});
  check_coeffs(expand_coefficients(poly({1.0, 2.0, 3.0})), {-6.0, 11.0, -6.0, 1.0});
}

TEST_CASE("eval examples") {
  CHECK(std::abs(eval(poly({1.0, -1.0}), 2.0) - cplx(3.0)) < 1e-15);
  CHECK(eval(poly({0.0}), 0.0) == cplx(0.0));
  CHECK(std::abs(eval(poly({1.0, 2.0, 3.0}), 0.0) - cplx(-6.0)) < 1e-15);
}

TEST_CASE("derivative_coefficients examples") {
  check_coeffs(derivative_coefficients(poly({1.0, 2.0, 3.0})), {11.0, -12.0, 3.0});
  const cplx a{0.7, -1.3};
  check_coeffs(derivative_coefficients(poly({a, a})), {-2.0 * a, 2.0});
  check_coeffs(derivative_coefficients(poly({1.0, -1.0})), {0.0, 2.0});
  CHECK_THROWS_AS(derivative_coefficients(poly({})), Error);
}

TEST_CASE("eval_log_deriv and log_abs_log_deriv examples") {
  const auto w2 = WeightedLogDeriv::unit(std::vector<cplx>{1.0, -1.0});
  CHECK(std::abs(eval_log_deriv(w2, 2.0) - cplx(4.0 / 3.0)) < 1e-15);
  CHECK(std::abs(eval_log_deriv(WeightedLogDeriv::unit(std::vector<cplx>{0.0}), 2.0) - cplx(0.5)) < 1e-15);
  CHECK(std::abs(eval_log_deriv(WeightedLogDeriv::unit(std::vector<cplx>{1.0, 2.0, 3.0}), 0.0) -
                 cplx(-11.0 / 6.0)) < 1e-15);

  const auto l0 = log_abs_log_deriv(WeightedLogDeriv::unit(std::vector<cplx>{0.0}), std::exp(1.0));
  CHECK(!l0.neg_infinity);
  CHECK(l0.value == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(log_abs_log_deriv(w2, 2.0).value == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-14));
  const auto wi = WeightedLogDeriv::unit(std::vector<cplx>{cplx(0, 1), cplx(0, -1)});
  CHECK(std::abs(log_abs_log_deriv(wi, 1.0).value) < 1e-14);
}

TEST_CASE("log-derivative at a cancelling point is flagged") {
  const auto w = WeightedLogDeriv::unit(std::vector<cplx>{2.0, cplx(0, 2), -2.0, cplx(0, -2)});
  CHECK(log_abs_log_deriv(w, 0.0).neg_infinity);
}

TEST_CASE("weighted log-derivative rejects mismatched weights") {
  CHECK_THROWS_AS(WeightedLogDeriv({1.0, 2.0}, {1.0}), Error);
}

TEST_CASE("property: eval at a root is small relative to the scale") {
  Gen g(11);
  for (int t = 0; t < 200; ++t) {
    auto p = poly(g.complexes(g.integer(1, 30)), g.cgauss());
    for (const auto& r : p.roots) CHECK(std::abs(eval(p, r)) <= 1e-12 * eval_scale(p, r));
  }
}

TEST_CASE("property: expanded coefficients agree with the convolution oracle and with eval") {
  Gen g(12);
  for (int t = 0; t < 100; ++t) {
    const int n = g.integer(0, 50);
    std::vector<cplx> roots;
    for (int i = 0; i < n; ++i) roots.push_back(std::polar(g.range(0, 10), g.range(0, 6.283185307179586)));
    const auto p = poly(roots, g.cgauss());
    const auto c = expand_coefficients(p);
    const auto oracle = testsupport::convolve_roots(roots, p.leading);
    REQUIRE(c.size() == oracle.size());
    for (int k = 0; k < 100; ++k) {
      const cplx z = std::polar(g.range(0, 20), g.range(0, 6.283185307179586));
      const cplx direct = eval(p, z);
      // Horner's a-priori error is proportional to sum |c_k| |z|^k, which can
      // exceed |P(z)| by many orders of magnitude; error is measured against it.
      double scale = 0;
      for (std::size_t k = 0; k < oracle.size(); ++k) scale += std::abs(oracle[k]) * std::pow(std::abs(z), k);
      CHECK(std::abs(horner(c, z) - direct) <= 1e-9 * scale);
      CHECK(std::abs(horner(oracle, z) - direct) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("property: derivative matches a central difference") {
  Gen g(13);
  for (int t = 0; t < 200; ++t) {
    const auto p = poly(g.complexes(g.integer(1, 12)), g.cgauss());
    const auto d = derivative_coefficients(p);
    const cplx z = g.cgauss() * 2.0;
    bool near_root = false;
    for (const auto& r : p.roots) near_root = near_root || std::abs(z - r) < 0.1;
    if (near_root) continue;
    const double h = 1e-6 * std::max(1.0, std::abs(z));
    const cplx fd = (eval(p, z + h) - eval(p, z - h)) / (2.0 * h);
    CHECK(testsupport::rel_err(horner(d, z), fd) <= 1e-4 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("property: unit-weight log-derivative is P'/P away from roots") {
  Gen g(14);
  for (int t = 0; t < 200; ++t) {
    const auto p = poly(g.complexes(g.integer(1, 20)));
    const cplx z = g.cgauss() * 2.0;
    bool near_root = false;
    for (const auto& r : p.roots) near_root = near_root || std::abs(z - r) < 0.1;
    if (near_root) continue;
    const cplx want = horner(derivative_coefficients(p), z) / eval(p, z);
    const cplx got = eval_log_deriv(WeightedLogDeriv::unit(p), z);
    CHECK(std::abs(got - want) <= 1e-9 * std::abs(want));
  }
}

TEST_CASE("property: real roots and real z give a real log-derivative") {
  Gen g(15);
  for (int t = 0; t < 200; ++t) {
    const auto x = g.reals(g.integer(1, 20), -5, 5);
    const auto p = from_real_roots(x);
    const double z = g.range(-6, 6);
    bool near_root = false;
    for (double r : x) near_root = near_root || std::abs(z - r) < 1e-3;
    if (near_root) continue;
    const cplx v = eval_log_deriv(WeightedLogDeriv::unit(p), z);
    CHECK(std::abs(v.imag()) <= 1e-12 * std::abs(v));
  }
}
