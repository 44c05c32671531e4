#ifndef SPECTRA_LINALG_HPP
#define SPECTRA_LINALG_HPP

#include <Eigen/Dense>
#include <vector>

#include "spectra/pointcloud.hpp"

namespace spectra::rmt {

using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

// Square matrix with finite entries.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(CMatrix m);
  explicit DenseMatrix(const RMatrix& m);

  Eigen::Index n() const noexcept { return m_.rows(); }
  const CMatrix& matrix() const noexcept { return m_; }
  bool is_real() const;

 private:
  CMatrix m_;
};

// A = U T U^*, T upper triangular, U unitary.
struct SchurForm {
  CMatrix T;
  CMatrix U;
  int iterations = 0;
};

// Hessenberg reduction followed by single-shift complex QR with Wilkinson
// shifts and deflation. Throws NoConvergence after 30n sweeps.
SchurForm complex_schur(const CMatrix& a, bool want_vectors = true);

struct EigenResult {
  std::vector<cplx> values;
  // max_k ||A v_k - lambda_k v_k|| / (||A||_F ||v_k||) over eigenvectors
  // recovered from the Schur form.
  double residual = 0.0;
  int iterations = 0;
};

// Balance, reduce, iterate; then verify every eigenpair by back-substituting
// an eigenvector from the triangular factor.
EigenResult eigen_decompose(const CMatrix& a);

CMatrix companion_matrix(const std::vector<cplx>& coeffs_ascending);

}  // namespace spectra::rmt

#endif
