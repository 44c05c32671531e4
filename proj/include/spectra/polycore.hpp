#ifndef SPECTRA_POLYCORE_HPP
#define SPECTRA_POLYCORE_HPP

#include <span>
#include <vector>

#include "spectra/pointcloud.hpp"

namespace spectra::polycore {

// Polynomial leading * prod_k (z - roots[k]). Multiplicity is carried by
// repetition in `roots`.
struct RootPoly {
  std::vector<cplx> roots;
  cplx leading{1.0, 0.0};

  std::size_t degree() const noexcept { return roots.size(); }
};

RootPoly from_real_roots(std::span<const double> roots);

// L(z) = sum_k weights[k] / (z - roots[k]). Unit weights give P'/P.
class WeightedLogDeriv {
 public:
  WeightedLogDeriv(std::vector<cplx> roots, std::vector<cplx> weights);
  static WeightedLogDeriv unit(const RootPoly& p);
  static WeightedLogDeriv unit(std::vector<cplx> roots);

  std::span<const cplx> roots() const noexcept { return roots_; }
  std::span<const cplx> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return roots_.size(); }

 private:
  std::vector<cplx> roots_;
  std::vector<cplx> weights_;
};

// Points closer than this to a root are refused by the log-derivative
// evaluators.
double exclusion_radius(cplx z) noexcept;

// Ascending-power coefficients, length degree+1, top entry == leading.
std::vector<cplx> expand_coefficients(const RootPoly& p);

cplx eval(const RootPoly& p, cplx z);

// |leading| * prod max(1, |z - root|); the scale against which evaluation
// error at z is judged.
double eval_scale(const RootPoly& p, cplx z);

cplx horner(std::span<const cplx> coeffs, cplx z);

// Ascending coefficients of P'. Throws ZeroDegree for constants.
std::vector<cplx> derivative_coefficients(const RootPoly& p);
std::vector<cplx> derivative_coefficients(std::span<const cplx> coeffs);

cplx eval_log_deriv(const WeightedLogDeriv& w, cplx z);

struct LogModulus {
  double value = 0.0;         // log|L(z)|; -inf when neg_infinity
  bool neg_infinity = false;  // |L(z)| is zero in double precision
};

LogModulus log_abs_log_deriv(const WeightedLogDeriv& w, cplx z);

}  // namespace spectra::polycore

#endif
