#ifndef SPECTRA_ROOTSOLVE_HPP
#define SPECTRA_ROOTSOLVE_HPP

#include <span>
#include <string>
#include <vector>

#include "spectra/pointcloud.hpp"
#include "spectra/polycore.hpp"

namespace spectra::rootsolve {

inline constexpr double kTolRoot = 1e-12;
inline constexpr int kMaxIter = 200;
inline constexpr int kStallSweeps = 10;

// residuals[i] belongs to roots[i] (both in canonical order).
struct RootFindReport {
  PointCloud roots;
  std::vector<double> residuals;
  int iterations = 0;
  bool converged = false;
  std::string method;  // "aberth", "companion", "interlaced"

  double max_residual() const;
};

// All roots of sum_k coeffs[k] z^k by Aberth-Ehrlich iteration, falling back
// to companion-matrix eigenvalues. Residual of root r_i is
// |P(r_i)| / (|lead| prod_{j != i} max(1, |r_i - r_j|)).
RootFindReport solve_all(std::span<const cplx> coeffs);

// Roots of P'. Exactly equal roots of P are grouped; a root of multiplicity m
// contributes m - 1 copies of itself. The remaining critical points are the
// zeros of sum_j m_j prod_{i != j}(z - d_j), iterated without forming
// coefficients.
RootFindReport critical_points(const polycore::RootPoly& p);

// Rolle fast path: one critical point in each gap between consecutive
// distinct roots, bracketed so interlacing holds exactly.
std::vector<double> real_interlaced_critical_points(std::span<const double> sorted_roots);

}  // namespace spectra::rootsolve

#endif
