#include "spectra/randgen.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra::randgen {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::BadProbability, "probability must lie in (0, 1)");
}

}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  state_ = splitmix64_mix(splitmix64_mix(seed + kGamma) ^ splitmix64_mix(stream_id * kGamma + 1));
}

std::uint64_t RngStream::at(std::uint64_t index) const noexcept {
  return splitmix64_mix(state_ + (index + 1) * kGamma);
}

double RngStream::uniform() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = rad * std::sin(theta);
  has_spare_ = true;
  return rad * std::cos(theta);
}

std::vector<cplx> sample_complex_gaussian(RngStream& rng, std::size_t n, double variance) {
  if (!(variance > 0.0)) fail(ErrorCode::InvalidArgument, "variance must be positive");
  const double s = std::sqrt(variance / 2.0);
  std::vector<cplx> out(n);
  for (auto& z : out) {
    const double re = rng.normal();
    const double im = rng.normal();
    z = {s * re, s * im};
  }
  return out;
}

std::vector<double> sample_normal(RngStream& rng, std::size_t n) {
  std::vector<double> out(n);
  for (auto& x : out) x = rng.normal();
  return out;
}

std::vector<double> sample_exponential(RngStream& rng, std::size_t n, double rate) {
  if (!(rate > 0.0)) fail(ErrorCode::InvalidArgument, "rate must be positive");
  std::vector<double> out(n);
  for (auto& x : out) x = -std::log1p(-rng.uniform()) / rate;
  return out;
}

std::vector<double> sample_uniform(RngStream& rng, std::size_t n) {
  std::vector<double> out(n);
  for (auto& x : out) x = rng.uniform();
  return out;
}

std::vector<double> sample_atomic_mix(RngStream& rng, std::size_t n, double atom, double q,
                                      const RealSampler& continuous) {
  if (!(q >= 0.0 && q <= 1.0)) fail(ErrorCode::BadProbability, "atom mass must lie in [0, 1]");
  std::vector<double> out(n);
  for (auto& x : out) x = (rng.uniform() < q) ? atom : continuous(rng);
  return out;
}

std::vector<cplx> two_sequence_pick(std::span<const cplx> a, std::span<const cplx> b, double p,
                                    RngStream& rng) {
  if (a.size() != b.size()) fail(ErrorCode::SizeMismatch, "sequences differ in length");
  check_probability(p);
  std::vector<cplx> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = (rng.uniform() < p) ? a[k] : b[k];
  return out;
}

std::vector<cplx> random_subsequence(std::span<const cplx> z, double p, RngStream& rng) {
  check_probability(p);
  std::vector<cplx> out;
  for (const auto& x : z) {
    if (rng.uniform() < p) out.push_back(x);
  }
  return out;
}

SigmaSchedule::SigmaSchedule(Kind kind, double ratio) : kind_(kind), ratio_(ratio) {
  if (kind_ == Kind::Geometric && !(ratio_ > 0.0 && ratio_ < 1.0)) {
    fail(ErrorCode::InvalidArgument, "geometric ratio must lie in (0, 1)");
  }
}

SigmaSchedule SigmaSchedule::parse(const std::string& text) {
  if (text == "1/n") return SigmaSchedule(Kind::InverseN);
  if (text == "1/log(n+1)") return SigmaSchedule(Kind::InverseLog);
  if (text == "zero" || text == "0") return SigmaSchedule(Kind::Zero);
  if (text.rfind("geom:", 0) == 0) {
    std::istringstream is(text.substr(5));
    double r = 0.0;
    if (!(is >> r) || !is.eof()) fail(ErrorCode::BadParams, "bad geometric ratio in '" + text + "'");
    return SigmaSchedule(Kind::Geometric, r);
  }
  fail(ErrorCode::BadParams, "unknown sigma schedule '" + text + "'");
}

double SigmaSchedule::operator()(std::size_t n) const {
  const double x = static_cast<double>(n);
  switch (kind_) {
    case Kind::InverseN: return 1.0 / x;
    case Kind::InverseLog: return 1.0 / std::log(x + 1.0);
    case Kind::Geometric: return std::pow(ratio_, x);
    case Kind::Zero: return 0.0;
  }
  return 0.0;
}

std::string SigmaSchedule::to_string() const {
  switch (kind_) {
    case Kind::InverseN: return "1/n";
    case Kind::InverseLog: return "1/log(n+1)";
    case Kind::Geometric: {
      std::ostringstream os;
      os << "geom:" << ratio_;
      return os.str();
    }
    case Kind::Zero: return "zero";
  }
  return "";
}

std::vector<cplx> perturb_sequence(std::span<const cplx> u, const SigmaSchedule& sigma,
                                   const ComplexSampler& dist, RngStream& rng) {
  std::vector<cplx> v(u.begin(), u.end());
  if (sigma.kind() == SigmaSchedule::Kind::Zero) return v;
  for (std::size_t k = 0; k < v.size(); ++k) v[k] += sigma(k + 1) * dist(rng);
  return v;
}

ComplexSampler standard_complex_gaussian() {
  return [](RngStream& rng) {
    const double s = std::sqrt(0.5);
    const double re = rng.normal();
    const double im = rng.normal();
    return cplx{s * re, s * im};
  };
}

}  // namespace spectra::randgen
