#ifndef SPECTRA_MEASURES_HPP
#define SPECTRA_MEASURES_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "spectra/pointcloud.hpp"
#include "spectra/polycore.hpp"

namespace spectra::measures {

// Uniform probability on a nonempty PointCloud.
class EmpiricalMeasure {
 public:
  explicit EmpiricalMeasure(PointCloud support);
  explicit EmpiricalMeasure(std::vector<cplx> pts) : EmpiricalMeasure(PointCloud(std::move(pts))) {}

  const PointCloud& support() const noexcept { return support_; }
  std::size_t size() const noexcept { return support_.size(); }
  double mass() const noexcept { return 1.0 / static_cast<double>(support_.size()); }

 private:
  PointCloud support_;
};

// Integral of |F_a^{-1} - F_b^{-1}| over (0, 1); sizes may differ.
double wasserstein1_1d(std::span<const double> a, std::span<const double> b);

// Mean over n_proj directions, uniform in [0, pi) from a stream keyed by
// seed, of the 1-D distance between projections. A rigid shift t yields
// about (2/pi)|t|.
double sliced_wasserstein2d(const EmpiricalMeasure& a, const EmpiricalMeasure& b, int n_proj,
                            std::uint64_t seed);

// inf{eps : F_a(x-eps)-eps <= F_b(x) <= F_a(x+eps)+eps for all x}. Always <= 1.
double levy_distance(std::span<const double> a, std::span<const double> b);

// sup over arcs of |count/N - length/(2 pi)|; a single point gives 1.
double angular_discrepancy(const PointCloud& points);

// (C/N) log(sum|a_k| / sqrt|a_0 a_N|), N the degree.
double erdos_turan_rhs(std::span<const cplx> coeffs, double C);

// True where the query lies in the hull or within tol of it.
std::vector<bool> convex_hull_contains(const PointCloud& cloud, const PointCloud& queries,
                                       double tol);

// ((1 + 2 eps) / (2 eps^2)) k / (eps/(1+eps)^2 - (k-1)/(d_s - eps)).
double walsh_constant(int k, double eps, double d_s);

struct ClusterSpec {
  std::vector<cplx> centers;
  double radius = 0.5;
  double separation = 0.0;  // lower bound on the gap between two disks

  // Throws InvalidArgument unless radius > 0 and every pair of disks is at
  // least `separation` apart (|c_i - c_j| - 2 radius, up to rounding).
  void validate() const;
};

// n_per_cluster minus the number of critical points in the closed ball of
// radius (radius + eps) about each center.
std::vector<int> cluster_deficiency(const ClusterSpec& spec, const PointCloud& critical,
                                    double eps, int n_per_cluster);

// (1/n) sum_{k<n} max(0, log|a_k|)
double log_cesaro_stat(std::span<const cplx> seq, std::size_t n);

// Largest fraction of samples in a closed interval of length 2 delta.
double concentration_estimate(std::span<const double> samples, double delta);

struct PotentialDiagnostics {
  double a1_rate = 0.0;  // fraction with (1/n) log|L| > eps
  double a2_rate = 0.0;  // fraction with (1/n) log|L| < -eps
  double a3_integral = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped_near_pole = 0;
  std::size_t skipped_neg_infinity = 0;
  std::size_t skipped_cells = 0;
  double skipped_area = 0.0;
};

// Rates over z_list plus a polar midpoint grid (grid_size radial by
// grid_size angular cells) for the integral of (1/n^2) log^2|L| over the disk
// of radius r. Points or cells where L is zero, or within 1e3 exclusion
// radii of a pole, are skipped and counted.
PotentialDiagnostics potential_diagnostics(const polycore::WeightedLogDeriv& w,
                                           std::span<const cplx> z_list, double eps, double r,
                                           int grid_size);

// |log|f(z)| - (Poisson integral - zero terms + pole terms)| for the rational
// f with the given zeros and poles, trapezoid rule on |w| = R.
double poisson_jensen_residual(const PointCloud& zeros, const PointCloud& poles, cplx z, double R,
                               int quad_nodes = 4096);

}  // namespace spectra::measures

#endif
