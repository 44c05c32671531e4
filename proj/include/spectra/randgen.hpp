#ifndef SPECTRA_RANDGEN_HPP
#define SPECTRA_RANDGEN_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "spectra/pointcloud.hpp"

namespace spectra::randgen {

// Counter-based SplitMix64 stream: draw i is mix(state + (i + 1) * gamma),
// where state is a hash of (seed, stream_id). Any draw index is addressable.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t position() const noexcept { return counter_; }
  void seek(std::uint64_t index) noexcept {
    counter_ = index;
    has_spare_ = false;
  }

  std::uint64_t at(std::uint64_t index) const noexcept;
  std::uint64_t next_u64() noexcept { return at(counter_++); }

  // Uniform on the open interval (0, 1).
  double uniform() noexcept;
  // Standard normal by Box-Muller; the second variate of each pair is kept.
  double normal() noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64_mix(std::uint64_t x) noexcept;
std::uint64_t fnv1a64(std::string_view s) noexcept;

using RealSampler = std::function<double(RngStream&)>;
using ComplexSampler = std::function<cplx(RngStream&)>;

// Re and Im are independent N(0, variance / 2), so E|z|^2 = variance.
std::vector<cplx> sample_complex_gaussian(RngStream& rng, std::size_t n, double variance);
std::vector<double> sample_normal(RngStream& rng, std::size_t n);
std::vector<double> sample_exponential(RngStream& rng, std::size_t n, double rate);
std::vector<double> sample_uniform(RngStream& rng, std::size_t n);
// atom with probability q, otherwise a draw from `continuous`. q in [0, 1].
std::vector<double> sample_atomic_mix(RngStream& rng, std::size_t n, double atom, double q,
                                      const RealSampler& continuous);

// xi_k = a_k with probability p, else b_k.
std::vector<cplx> two_sequence_pick(std::span<const cplx> a, std::span<const cplx> b, double p,
                                    RngStream& rng);

// Keeps each term independently with probability p; order preserved.
std::vector<cplx> random_subsequence(std::span<const cplx> z, double p, RngStream& rng);

// sigma_n for n = 1, 2, ...; parsed from "1/n", "1/log(n+1)", "geom:R"
// (R in (0,1), sigma_n = R^n) or "zero".
class SigmaSchedule {
 public:
  enum class Kind { InverseN, InverseLog, Geometric, Zero };

  static SigmaSchedule parse(const std::string& text);
  SigmaSchedule() = default;
  SigmaSchedule(Kind kind, double ratio = 0.5);

  double operator()(std::size_t n) const;
  Kind kind() const noexcept { return kind_; }
  std::string to_string() const;

 private:
  Kind kind_ = Kind::InverseN;
  double ratio_ = 0.5;
};

// v_n = u_n + sigma_n X_n, n counted from 1. Zero schedule is the identity.
std::vector<cplx> perturb_sequence(std::span<const cplx> u, const SigmaSchedule& sigma,
                                   const ComplexSampler& dist, RngStream& rng);

ComplexSampler standard_complex_gaussian();

}  // namespace spectra::randgen

#endif
