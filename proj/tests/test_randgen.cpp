#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spectra/error.hpp"
#include "spectra/measures.hpp"
#include "spectra/randgen.hpp"

using namespace spectra;
using namespace spectra::randgen;

namespace {
double mean_abs2(const std::vector<cplx>& v) {
  double s = 0;
  for (const auto& z : v) s += std::norm(z);
  return s / static_cast<double>(v.size());
}
}  // namespace

TEST_CASE("streams are pure functions of seed, stream id and index") {
  RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  std::vector<std::uint64_t> xa, xb;
  for (int i = 0; i < 100; ++i) {
    xa.push_back(a.next_u64());
    xb.push_back(b.next_u64());
  }
  CHECK(xa == xb);
  CHECK(c.next_u64() != xa[0]);
  CHECK(d.next_u64() != xa[0]);
  RngStream e(42, 7);
  CHECK(e.at(57) == xa[57]);
  e.seek(90);
  CHECK(e.next_u64() == xa[90]);
  CHECK(e.position() == 91);
}

TEST_CASE("uniform draws stay in the open unit interval") {
  RngStream r(1, 2);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("sample_complex_gaussian moments and replay") {
  RngStream r(42, 1);
  CHECK(std::abs(mean_abs2(sample_complex_gaussian(r, 100000, 1.0)) - 1.0) <= 0.02);
  CHECK(std::abs(mean_abs2(sample_complex_gaussian(r, 100000, 0.01)) - 0.01) <= 3e-4);
  RngStream p(9, 9), q(9, 9);
  const auto vp = sample_complex_gaussian(p, 64, 2.0), vq = sample_complex_gaussian(q, 64, 2.0);
  CHECK(vp == vq);
  CHECK_THROWS_AS(sample_complex_gaussian(p, 4, -1.0), Error);
}

TEST_CASE("exponential, uniform and atomic samplers") {
  RngStream r(42, 3);
  const auto e = sample_exponential(r, 100000, 1.0);
  CHECK(std::abs(std::accumulate(e.begin(), e.end(), 0.0) / 1e5 - 1.0) <= 0.02);
  CHECK(std::all_of(e.begin(), e.end(), [](double x) { return x > 0; }));
  const auto u = sample_uniform(r, 10000);
  CHECK(std::abs(std::accumulate(u.begin(), u.end(), 0.0) / 1e4 - 0.5) <= 0.02);

  const RealSampler gauss = [](RngStream& s) { return s.normal(); };
  const auto all_atom = sample_atomic_mix(r, 100, 3.0, 1.0, gauss);
  CHECK(std::all_of(all_atom.begin(), all_atom.end(), [](double x) { return x == 3.0; }));
  const auto mix = sample_atomic_mix(r, 10000, 3.0, 0.3, gauss);
  const double hits = static_cast<double>(std::count(mix.begin(), mix.end(), 3.0)) / 1e4;
  CHECK(std::abs(hits - 0.3) <= 0.02);
  CHECK_THROWS_AS(sample_atomic_mix(r, 10, 0.0, 1.5, gauss), Error);
}

TEST_CASE("two_sequence_pick") {
  RngStream r(42, 4);
  std::vector<cplx> a;
  for (int k = 0; k < 50; ++k) a.push_back(cplx(k, -k));
  CHECK(two_sequence_pick(a, a, 0.3, r) == a);
  const std::vector<cplx> zeros(10000, 0.0), ones(10000, 1.0);
  const auto mix = two_sequence_pick(zeros, ones, 0.5, r);
  double m = 0;
  for (const auto& z : mix) m += z.real();
  CHECK(std::abs(m / 1e4 - 0.5) <= 0.02);
  CHECK_THROWS_AS(two_sequence_pick(zeros, a, 0.5, r), Error);
  CHECK_THROWS_AS(two_sequence_pick(a, a, -0.1, r), Error);
}

TEST_CASE("two-sequence pick of equidistributed sequences approaches the circle law") {
  // a_k = e^{2 pi i k phi}, b_k its rotation by 1/3 of a turn; both are
  // equidistributed, so the pick is too. Angles compared to uniform on [0, 1).
  const double phi = (std::sqrt(5.0) - 1) / 2;
  auto w1 = [&](std::size_t n) {
    RngStream r(5, 5);
    std::vector<cplx> a, b;
    for (std::size_t k = 0; k < n; ++k) {
      const double t = std::fmod(k * phi, 1.0);
      a.push_back(std::polar(1.0, 2 * std::acos(-1.0) * t));
      b.push_back(std::polar(1.0, 2 * std::acos(-1.0) * (t + 1.0 / 3)));
    }
    const auto xi = two_sequence_pick(a, b, 0.5, r);
    std::vector<double> ang, ref;
    for (const auto& z : xi) ang.push_back(std::fmod(std::arg(z) / (2 * std::acos(-1.0)) + 1.0, 1.0));
    for (std::size_t k = 0; k < n; ++k) ref.push_back((k + 0.5) / static_cast<double>(n));
    return measures::wasserstein1_1d(ang, ref);
  };
  const double w100 = w1(100), w400 = w1(400), w1600 = w1(1600);
  CHECK(w400 < w100);
  CHECK(w1600 < w400);
}

TEST_CASE("random_subsequence") {
  RngStream r(42, 6);
  std::vector<cplx> z;
  for (int k = 1; k <= 10000; ++k) z.push_back(static_cast<double>(k));
  for (double p : {0.1, 0.5, 0.9}) {
    const auto s = random_subsequence(z, p, r);
    CHECK(std::abs(static_cast<double>(s.size()) / 1e4 - p) <= 0.02);
    CHECK(std::is_sorted(s.begin(), s.end(), [](cplx a, cplx b) { return a.real() < b.real(); }));
  }
  RngStream a(3, 3), b(3, 3);
  CHECK(random_subsequence(z, 0.5, a) == random_subsequence(z, 0.5, b));
}

TEST_CASE("sigma schedules and perturb_sequence") {
  CHECK(SigmaSchedule::parse("1/n")(4) == 0.25);
  CHECK(SigmaSchedule::parse("1/log(n+1)")(1) == doctest::Approx(1 / std::log(2.0)));
  CHECK(SigmaSchedule::parse("geom:0.5")(3) == doctest::Approx(0.125));
  CHECK(SigmaSchedule::parse("zero")(3) == 0.0);
  CHECK_THROWS_AS(SigmaSchedule::parse("geom:2"), Error);
  CHECK_THROWS_AS(SigmaSchedule::parse("sqrt"), Error);

  RngStream r(42, 8);
  std::vector<cplx> u;
  for (int k = 0; k < 4000; ++k) u.push_back(std::polar(1.0, 0.001 * k * k));
  CHECK(perturb_sequence(u, SigmaSchedule::parse("zero"), standard_complex_gaussian(), r) == u);

  // |v| approaches |u| as the perturbation dies out
  auto moduli_gap = [&](std::size_t n) {
    RngStream s(42, 9);
    std::vector<cplx> head(u.begin(), u.begin() + static_cast<long>(n));
    const auto v = perturb_sequence(head, SigmaSchedule::parse("1/n"), standard_complex_gaussian(), s);
    std::vector<double> mv, mu;
    for (const auto& z : v) mv.push_back(std::abs(z));
    for (const auto& z : head) mu.push_back(std::abs(z));
    return measures::wasserstein1_1d(mv, mu);
  };
  CHECK(moduli_gap(4000) < moduli_gap(250));

  // log-Cesaro boundedness survives the perturbation
  const auto v = perturb_sequence(u, SigmaSchedule::parse("1/log(n+1)"), standard_complex_gaussian(), r);
  CHECK(measures::log_cesaro_stat(v, v.size()) < 1.0);
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}
