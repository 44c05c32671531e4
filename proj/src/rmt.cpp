#include "spectra/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "spectra/error.hpp"
#include "spectra/summation.hpp"

namespace spectra::rmt {

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix random_ginibre(randgen::RngStream& rng, int n, double variance) {
  const auto v = randgen::sample_complex_gaussian(rng, static_cast<std::size_t>(n) * n, variance);
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[static_cast<std::size_t>(i) * n + j];
  return m;
}

}  // namespace

SpectrumSample eigenvalues(const DenseMatrix& a) {
  if (a.n() < 1) fail(ErrorCode::InvalidArgument, "matrix must be at least 1 x 1");
  const EigenResult r = eigen_decompose(a.matrix());
  if (!(r.residual <= kTolEig)) {
    fail(ErrorCode::NoConvergence, "eigenpair residual " + std::to_string(r.residual) +
                                       " exceeds tolerance");
  }
  SpectrumSample s;
  s.eigenvalues = PointCloud(r.values);
  s.residual = r.residual;
  s.ensemble = "dense";
  s.params["n"] = static_cast<double>(a.n());
  return s;
}

DenseMatrix sample_ginibre(randgen::RngStream& rng, int n, double variance) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  return DenseMatrix(random_ginibre(rng, n, variance));
}

double poisson_pmf(double lambda, long k) {
  if (k < 0) return 0.0;
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

double poisson_cdf(double lambda, long k) {
  if (k < 0) return 0.0;
  if (lambda == 0.0) return 1.0;
  // P(X <= k) = Q(k + 1, lambda), the regularized upper incomplete gamma.
  return boost::math::gamma_q(static_cast<double>(k) + 1.0, lambda);
}

cplx ginibre_kernel(int n, cplx z, cplx w) {
  const cplx u = z * std::conj(w);
  const double rho = std::abs(u);
  if (rho <= 500.0) {
    CompensatedComplexSum s;
    cplx t{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
      s.add(t);
      t *= u / static_cast<double>(k + 1);
    }
    return s.value();
  }
  // Terms near k = |u| reach e^{|u|}; sum them scaled by e^{-|u|}.
  const double phi = std::arg(u);
  const double lr = std::log(rho);
  CompensatedComplexSum s;
  for (int k = 0; k < n; ++k) {
    const double lm = k * lr - std::lgamma(k + 1.0) - rho;
    s.add(std::polar(std::exp(lm), k * phi));
  }
  return s.value() * std::exp(rho);
}

double ginibre_intensity(int n, cplx z) {
  if (n < 1) return 0.0;
  return poisson_cdf(std::norm(z), n - 1) / kPi;
}

double ginibre_intensity_scaled(int n, cplx z, double variance) {
  if (!(variance > 0.0)) fail(ErrorCode::InvalidArgument, "variance must be positive");
  return ginibre_intensity(n, z / std::sqrt(variance)) / variance;
}

double power_intensity(int n, cplx z) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  const double r = std::abs(z);
  if (r == 0.0) fail(ErrorCode::ZeroPoint, "power intensity is singular at 0");
  const double nd = static_cast<double>(n);
  const double lambda = nd * std::pow(r, 2.0 / nd);
  return poisson_cdf(lambda, n - 1) / (kPi * std::pow(r, 2.0 - 2.0 / nd));
}

SpectrumSample power_spectrum_sample(randgen::RngStream& rng, int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  const DenseMatrix x = sample_ginibre(rng, n, 1.0 / n);
  SpectrumSample s = eigenvalues(x);
  std::vector<cplx> mu;
  mu.reserve(s.eigenvalues.size());
  for (const auto& l : s.eigenvalues) mu.push_back(std::polar(std::pow(std::abs(l), n), n * std::arg(l)));
  s.eigenvalues = PointCloud(std::move(mu));
  s.ensemble = "ginibre-power";
  s.params["n"] = n;
  return s;
}

double cross_term(int n, cplx z1, cplx z2) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  const double r1 = std::abs(z1);
  const double r2 = std::abs(z2);
  if (r1 == 0.0 || r2 == 0.0) fail(ErrorCode::ZeroPoint, "cross term is singular at 0");
  const double nd = static_cast<double>(n);
  const double l1 = nd * std::pow(r1, 2.0 / nd);
  const double l2 = nd * std::pow(r2, 2.0 / nd);
  CompensatedSum s;
  for (long l = 0; l < n; ++l) s.add(poisson_pmf(l1, l) * poisson_pmf(l2, l));
  return s.value() / (kPi * kPi * std::pow(r1 * r2, 2.0 - 2.0 / nd));
}

SchurChain generalized_schur(const std::vector<DenseMatrix>& chain) {
  if (chain.empty()) fail(ErrorCode::InvalidArgument, "empty matrix chain");
  const Eigen::Index n = chain.front().n();
  for (const auto& a : chain) {
    if (a.n() != n) fail(ErrorCode::WrongSize, "chain matrices differ in size");
  }
  const std::size_t k = chain.size();

  CMatrix prod = chain.front().matrix();
  for (std::size_t l = 1; l < k; ++l) prod = prod * chain[l].matrix();
  const SchurForm sf = complex_schur(prod, true);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(sf.T(i, i) - sf.T(j, j)) <= 1e-8) {
        fail(ErrorCode::DegenerateSpectrum, "product eigenvalues are not distinct");
      }
    }
  }

  SchurChain out;
  out.U.assign(k, CMatrix());
  out.Z.assign(k, CMatrix());
  out.T.assign(k, CMatrix());
  out.U[0] = sf.U;

  auto split = [&](std::size_t l, const CMatrix& r) {
    out.Z[l] = CMatrix::Zero(n, n);
    out.Z[l].diagonal() = r.diagonal();
    out.T[l] = r.triangularView<Eigen::StrictlyUpper>();
  };

  for (std::size_t l = k; l-- > 1;) {
    const CMatrix& next = out.U[(l + 1) % k];
    const CMatrix m = chain[l].matrix() * next;
    Eigen::HouseholderQR<CMatrix> qr(m);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    const double pivot_floor = 1e-13 * std::max(1.0, chain[l].matrix().norm());
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mag = std::abs(r(i, i));
      if (mag < pivot_floor) fail(ErrorCode::NumericalBreakdown, "vanishing QR pivot");
      const cplx phase = r(i, i) / mag;
      q.col(i) *= phase;
      r.row(i) *= std::conj(phase);
      r(i, i) = mag;
    }
    out.U[l] = std::move(q);
    split(l, r);
  }

  const CMatrix& u2 = out.U[k > 1 ? 1 : 0];
  CMatrix r1 = out.U[0].adjoint() * chain.front().matrix() * u2;
  const double lower = r1.triangularView<Eigen::StrictlyLower>().toDenseMatrix().norm();
  if (lower > 1e-8 * std::max(1.0, chain.front().matrix().norm())) {
    fail(ErrorCode::NumericalBreakdown, "first factor failed to triangularize");
  }
  split(0, r1);
  return out;
}

double schur_reconstruction_error(const std::vector<DenseMatrix>& chain, const SchurChain& s) {
  double worst = 0.0;
  const std::size_t k = chain.size();
  for (std::size_t l = 0; l < k; ++l) {
    const CMatrix rec = s.U[l] * (s.Z[l] + s.T[l]) * s.U[(l + 1) % k].adjoint();
    const double scale = std::max(chain[l].matrix().norm(), std::numeric_limits<double>::min());
    worst = std::max(worst, (chain[l].matrix() - rec).norm() / scale);
  }
  return worst;
}

SpectrumSample sample_product_ensemble(randgen::RngStream& rng, int n,
                                       std::span<const int> epsilons) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  if (epsilons.empty()) fail(ErrorCode::InvalidArgument, "need at least one factor");
  for (int e : epsilons) {
    if (e != 1 && e != -1) fail(ErrorCode::InvalidArgument, "exponents must be +1 or -1");
  }
  int resamples = 0;
  CMatrix m = CMatrix::Identity(n, n);
  for (std::size_t i = epsilons.size(); i-- > 0;) {
    if (epsilons[i] == 1) {
      m = random_ginibre(rng, n, 1.0) * m;
      continue;
    }
    for (;;) {
      Eigen::PartialPivLU<CMatrix> lu(random_ginibre(rng, n, 1.0));
      if (lu.rcond() >= 1e-12) {
        m = lu.solve(m);
        break;
      }
      if (++resamples > 10) fail(ErrorCode::ResampleLimit, "inverse factor singular after 10 redraws");
    }
  }
  SpectrumSample s = eigenvalues(DenseMatrix(m));
  s.ensemble = "product";
  s.params["n"] = n;
  s.params["k"] = static_cast<double>(epsilons.size());
  int sum = 0;
  for (int e : epsilons) sum += e;
  s.params["sum_eps"] = sum;
  s.resamples = resamples;
  return s;
}

double spherical_weight(cplx z, int n) { return std::pow(1.0 + std::norm(z), -(n + 1.0)); }

double spherical_intensity(cplx z, int n) {
  const double t = 1.0 + std::norm(z);
  return n / (kPi * t * t);
}

bool all_eigenvalues_real(const RMatrix& m) {
  const EigenResult r = eigen_decompose(m.cast<cplx>());
  return std::all_of(r.values.begin(), r.values.end(), [](const cplx& l) {
    return std::abs(l.imag()) <= kRealEigTol * (1.0 + std::abs(l));
  });
}

RealEigEstimate real_eig_probability(randgen::RngStream& rng, int k, int n_factors,
                                     const randgen::RealSampler& entry, long trials) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (k < 1 || n_factors < 1) fail(ErrorCode::InvalidArgument, "k and n_factors must be >= 1");
  RealEigEstimate est;
  est.trials = trials;
  for (long t = 0; t < trials; ++t) {
    RMatrix m = RMatrix::Identity(k, k);
    for (int f = 0; f < n_factors; ++f) {
      RMatrix x(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) x(i, j) = entry(rng);
      m = m * x;
    }
    if (all_eigenvalues_real(m)) ++est.all_real;
  }
  est.p_hat = static_cast<double>(est.all_real) / static_cast<double>(trials);
  est.stderr_ = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
  return est;
}

double discriminant_2x2(const RMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) fail(ErrorCode::WrongSize, "matrix must be 2 x 2");
  const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  return (a + d) * (a + d) - 4.0 * (a * d - b * c);
}

double swapped_discriminant_2x2(const RMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) fail(ErrorCode::WrongSize, "matrix must be 2 x 2");
  const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  return (b + c) * (b + c) - 4.0 * (b * c - a * d);
}

}  // namespace spectra::rmt
