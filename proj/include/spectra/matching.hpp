#ifndef SPECTRA_MATCHING_HPP
#define SPECTRA_MATCHING_HPP

#include <span>
#include <utility>
#include <vector>

#include "spectra/polycore.hpp"

namespace spectra::matching {

// distance == sum |X[i] - Y[j]| over the (i, j) in pairing; pairing is a
// bijection of indices into the caller's sequences.
struct MatchResult {
  double distance = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> pairing;
};

// Pairs the i-th smallest of X with the i-th smallest of Y.
MatchResult sorted_l1(std::span<const double> X, std::span<const double> Y);

// Exhaustive minimum over permutations; sizes up to 9.
MatchResult brute_force_l1(std::span<const double> X, std::span<const double> Y);

// d_1(Z(P), Z(P') u {0}) for real-rooted P.
double zero_critical_distance(const polycore::RootPoly& p);

struct MixedSignResult {
  double distance = 0.0;
  double bound = 0.0;
};

// Exact distance and the mean-of-each-sign bound
// (1/k) sum_{x<0}|x| + (1/(n-k)) sum_{x>=0}|x|.
MixedSignResult mixed_sign_bound(const polycore::RootPoly& p);

// Adds a root alpha left of all roots. With eta the critical points of the
// original polynomial and eta' those of the extended one (sorted), checks
// eta'_(i+1) >= eta_(i) - 1e-10 for i = 1..n-1: the critical point sharing
// the gap (x_(i), x_(i+1)) moves right. eta'_(1) is the new one in (alpha, x_(1)).
bool interlace_shift_check(std::span<const double> roots, double alpha);

struct GapStatistic {
  double left = 0.0;   // n log n (eta_(1) - X_(1))
  double right = 0.0;  // n log n (X_(n) - eta_(n-1))
};

GapStatistic extremal_gap_statistic(std::span<const double> sample);

// Upper-bound surrogate (sum_{i>=2} 1/(X_(i) - X_(1)))^{-1} for eta_(1) - X_(1).
double left_gap_surrogate(std::span<const double> sample);

// Y_(i) = sum_{j=n-i+1}^{n} E_j / j (1-based).
std::vector<double> renyi_exponential_order_stats(std::span<const double> E);

// (S_1/S_{n+1}, ..., S_n/S_{n+1}) with S_k the partial sums of E.
std::vector<double> uniform_order_stats_from_exponentials(std::span<const double> E,
                                                          std::size_t n);

}  // namespace spectra::matching

#endif
