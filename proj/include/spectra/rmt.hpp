#ifndef SPECTRA_RMT_HPP
#define SPECTRA_RMT_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "spectra/linalg.hpp"
#include "spectra/pointcloud.hpp"
#include "spectra/randgen.hpp"

namespace spectra::rmt {

inline constexpr double kTolEig = 1e-8;

struct SpectrumSample {
  PointCloud eigenvalues;
  double residual = 0.0;
  std::string ensemble;
  std::map<std::string, double> params;
  int resamples = 0;
};

// Eigenvalues by balancing, Hessenberg reduction and shifted QR. Throws
// NoConvergence when iteration fails or the eigenpair residual exceeds
// kTolEig.
SpectrumSample eigenvalues(const DenseMatrix& a);

DenseMatrix sample_ginibre(randgen::RngStream& rng, int n, double variance);

// Poisson(lambda) mass at k and P(X <= k).
double poisson_pmf(double lambda, long k);
double poisson_cdf(double lambda, long k);

// K_n(z, w) = sum_{k<n} (z conj(w))^k / k!
cplx ginibre_kernel(int n, cplx z, cplx w);
// K_n(z, z) e^{-|z|^2} / pi = P(Poisson(|z|^2) <= n-1) / pi; unit variance.
double ginibre_intensity(int n, cplx z);
// Intensity for entries of the given variance: rho(z / s) / s^2, s^2 = variance.
double ginibre_intensity_scaled(int n, cplx z, double variance);

// (1 / (pi |z|^{2-2/n})) P(Poisson(n |z|^{2/n}) <= n-1): intensity of the
// n-th powers of eigenvalues of a variance-1/n Ginibre matrix.
double power_intensity(int n, cplx z);

// Eigenvalues lambda of a variance-1/n Ginibre matrix mapped to lambda^n in
// polar form.
SpectrumSample power_spectrum_sample(randgen::RngStream& rng, int n);

// (1 / (pi^2 (r1 r2)^{2-2/n})) sum_{l<n} pmf(n r1^{2/n}, l) pmf(n r2^{2/n}, l)
double cross_term(int n, cplx z1, cplx z2);

// A_l = U_l (Z_l + T_l) U_{l+1}^*, U_{k+1} = U_1.
struct SchurChain {
  std::vector<CMatrix> U;
  std::vector<CMatrix> Z;  // diagonal
  std::vector<CMatrix> T;  // strictly upper triangular
};

// U_1 from the Schur form of A_1...A_k, then for l = k..2 the QR factor of
// A_l U_{l+1} gives U_l and R_l with non-negative real diagonal; finally
// R_1 = U_1^* A_1 U_2. Throws DegenerateSpectrum when two product
// eigenvalues are within 1e-8, NumericalBreakdown when a pivot vanishes.
SchurChain generalized_schur(const std::vector<DenseMatrix>& chain);

double schur_reconstruction_error(const std::vector<DenseMatrix>& chain, const SchurChain& s);

// Eigenvalues of A_1^{e_1} ... A_k^{e_k} with i.i.d. standard complex
// Ginibre factors. Inverse factors are applied by LU solves; a factor with
// reciprocal condition below 1e-12 is redrawn, at most 10 times.
SpectrumSample sample_product_ensemble(randgen::RngStream& rng, int n,
                                       std::span<const int> epsilons);

// (1 + |z|^2)^{-(n+1)}, unnormalized.
double spherical_weight(cplx z, int n);
// (n / pi) (1 + |z|^2)^{-2}
double spherical_intensity(cplx z, int n);

struct RealEigEstimate {
  double p_hat = 0.0;
  double stderr_ = 0.0;
  long trials = 0;
  long all_real = 0;
};

inline constexpr double kRealEigTol = 1e-8;

// An eigenvalue counts as real when |Im| <= kRealEigTol (1 + |lambda|).
bool all_eigenvalues_real(const RMatrix& m);

// Fraction of products X_1...X_{n_factors} of k x k matrices with i.i.d.
// entries whose eigenvalues are all real.
RealEigEstimate real_eig_probability(randgen::RngStream& rng, int k, int n_factors,
                                     const randgen::RealSampler& entry, long trials);

// (a+d)^2 - 4(ad - bc) for [[a, b], [c, d]].
double discriminant_2x2(const RMatrix& m);
// Discriminant of the row-swapped matrix [[c, d], [a, b]]: (b+c)^2 - 4(bc - ad).
double swapped_discriminant_2x2(const RMatrix& m);

}  // namespace spectra::rmt

#endif
