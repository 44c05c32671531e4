#include "spectra/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spectra/error.hpp"

namespace spectra::rmt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double abs1(const cplx& z) noexcept { return std::abs(z.real()) + std::abs(z.imag()); }

struct Givens {
  double c = 1.0;
  cplx s{0.0, 0.0};
};

// Rotation G = [c s; -conj(s) c] with G [a; b] = [r; 0].
Givens make_givens(cplx a, cplx b) {
  Givens g;
  const double nb = std::abs(b);
  if (nb == 0.0) return g;
  const double na = std::abs(a);
  if (na == 0.0) {
    g.c = 0.0;
    g.s = std::conj(b) / nb;
    return g;
  }
  const double norm = std::hypot(na, nb);
  g.c = na / norm;
  g.s = (a / na) * std::conj(b) / norm;
  return g;
}

// rows i, i+1 of m, columns [c0, c1]
void rotate_rows(CMatrix& m, Eigen::Index i, const Givens& g, Eigen::Index c0, Eigen::Index c1) {
  for (Eigen::Index j = c0; j <= c1; ++j) {
    const cplx x = m(i, j);
    const cplx y = m(i + 1, j);
    m(i, j) = g.c * x + g.s * y;
    m(i + 1, j) = -std::conj(g.s) * x + g.c * y;
  }
}

// m <- m G^* on columns i, i+1, rows [r0, r1]
void rotate_cols(CMatrix& m, Eigen::Index i, const Givens& g, Eigen::Index r0, Eigen::Index r1) {
  for (Eigen::Index j = r0; j <= r1; ++j) {
    const cplx x = m(j, i);
    const cplx y = m(j, i + 1);
    m(j, i) = g.c * x + std::conj(g.s) * y;
    m(j, i + 1) = -g.s * x + g.c * y;
  }
}

void reduce_to_hessenberg(CMatrix& h, CMatrix* q) {
  const Eigen::Index n = h.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    Eigen::VectorXcd v = h.block(k + 1, k, m, 1);
    const double xnorm = v.tail(m - 1).norm();
    if (xnorm == 0.0) continue;
    const cplx alpha = v(0);
    const double anorm = std::abs(alpha);
    const cplx phase = anorm == 0.0 ? cplx{1.0, 0.0} : alpha / anorm;
    const double beta = std::hypot(anorm, xnorm);
    v(0) = alpha + phase * beta;
    const double vnorm2 = v.squaredNorm();
    if (vnorm2 == 0.0) continue;
    const double tau = 2.0 / vnorm2;
    // H <- P H P with P = I - tau v v^*
    Eigen::RowVectorXcd w = v.adjoint() * h.bottomRows(m);
    h.bottomRows(m).noalias() -= tau * v * w;
    Eigen::VectorXcd u = h.rightCols(m) * v;
    h.rightCols(m).noalias() -= tau * u * v.adjoint();
    h.block(k + 2, k, m - 1, 1).setZero();
    if (q) {
      Eigen::VectorXcd uq = q->rightCols(m) * v;
      q->rightCols(m).noalias() -= tau * uq * v.adjoint();
    }
  }
}

// Parlett-Reinsch diagonal balancing with radix 2. Returns D with
// B = D^{-1} A D.
Eigen::VectorXd balance(CMatrix& a) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  bool done = false;
  for (int sweep = 0; !done && sweep < 100; ++sweep) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs1(a(j, i));
        r += abs1(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / 2.0;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c > g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        d(i) *= f;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
  return d;
}

}  // namespace

DenseMatrix::DenseMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) fail(ErrorCode::WrongSize, "matrix is not square");
  if (!m_.allFinite()) fail(ErrorCode::InvalidArgument, "matrix has non-finite entries");
}

DenseMatrix::DenseMatrix(const RMatrix& m) : DenseMatrix(CMatrix(m.cast<cplx>())) {}

bool DenseMatrix::is_real() const { return m_.imag().isZero(0.0); }

SchurForm complex_schur(const CMatrix& a, bool want_vectors) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) fail(ErrorCode::WrongSize, "matrix is not square");
  SchurForm out;
  out.T = a;
  if (want_vectors) out.U = CMatrix::Identity(n, n);
  if (n == 0) return out;
  CMatrix& h = out.T;
  CMatrix* q = want_vectors ? &out.U : nullptr;
  reduce_to_hessenberg(h, q);

  const long max_total = 30L * std::max<Eigen::Index>(n, 1);
  long total = 0;
  int iter = 0;
  Eigen::Index iu = n - 1;
  const double hnorm = h.norm();
  while (iu > 0) {
    // deflation scan
    Eigen::Index il = iu;
    for (; il > 0; --il) {
      const double sub = abs1(h(il, il - 1));
      double diag = abs1(h(il - 1, il - 1)) + abs1(h(il, il));
      if (diag == 0.0) diag = hnorm;
      if (sub <= kEps * diag || sub < std::numeric_limits<double>::min()) {
        h(il, il - 1) = 0.0;
        break;
      }
    }
    if (il == iu) {
      --iu;
      iter = 0;
      continue;
    }
    ++iter;
    if (++total > max_total) {
      fail(ErrorCode::NoConvergence,
           "QR iteration exceeded " + std::to_string(max_total) + " sweeps");
    }

    cplx shift;
    if (iter % 10 == 0) {
      // exceptional shift breaks cycling
      shift = std::abs(h(iu, iu - 1).real()) +
              (iu >= 2 ? std::abs(h(iu - 1, iu - 2).real()) : 0.0);
      shift += h(iu, iu);
    } else {
      // Wilkinson: eigenvalue of the trailing 2x2 nearer h(iu, iu)
      const cplx a11 = h(iu - 1, iu - 1);
      const cplx a12 = h(iu - 1, iu);
      const cplx a21 = h(iu, iu - 1);
      const cplx a22 = h(iu, iu);
      const cplx tr_half = 0.5 * (a11 + a22);
      const cplx det = a11 * a22 - a12 * a21;
      const cplx disc = std::sqrt(tr_half * tr_half - det);
      const cplx e1 = tr_half + disc;
      const cplx e2 = tr_half - disc;
      shift = (std::abs(e1 - a22) <= std::abs(e2 - a22)) ? e1 : e2;
    }

    const Eigen::Index c_end = want_vectors ? n - 1 : iu;
    const Eigen::Index r_begin = want_vectors ? 0 : il;
    Givens g = make_givens(h(il, il) - shift, h(il + 1, il));
    rotate_rows(h, il, g, il, c_end);
    rotate_cols(h, il, g, r_begin, std::min(il + 2, iu));
    if (q) rotate_cols(*q, il, g, 0, n - 1);
    for (Eigen::Index i = il + 1; i < iu; ++i) {
      g = make_givens(h(i, i - 1), h(i + 1, i - 1));
      rotate_rows(h, i, g, i - 1, c_end);
      h(i + 1, i - 1) = 0.0;
      rotate_cols(h, i, g, r_begin, std::min(i + 2, iu));
      if (q) rotate_cols(*q, i, g, 0, n - 1);
    }
  }
  // clean the strictly lower part left by rounding
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j + 1; i < n; ++i) h(i, j) = 0.0;
  out.iterations = static_cast<int>(total);
  return out;
}

EigenResult eigen_decompose(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) fail(ErrorCode::WrongSize, "matrix is not square");
  EigenResult res;
  if (n == 0) return res;

  CMatrix b = a;
  const Eigen::VectorXd d = balance(b);
  SchurForm sf = complex_schur(b, true);
  const CMatrix& t = sf.T;
  res.iterations = sf.iterations;
  res.values.resize(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) res.values[static_cast<std::size_t>(k)] = t(k, k);

  // Eigenvectors of T by back substitution, perturbing near-zero pivots.
  const double tnorm = std::max(t.norm(), std::numeric_limits<double>::min());
  const double smin = std::max(kEps * tnorm, std::numeric_limits<double>::min() / kEps);
  CMatrix y = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx lambda = t(k, k);
    y(k, k) = 1.0;
    for (Eigen::Index i = k - 1; i >= 0; --i) {
      cplx acc = 0.0;
      for (Eigen::Index j = i + 1; j <= k; ++j) acc += t(i, j) * y(j, k);
      cplx piv = t(i, i) - lambda;
      if (std::abs(piv) < smin) piv = smin;
      y(i, k) = -acc / piv;
      // keep the vector representable
      const double big = std::abs(y(i, k));
      if (big > 1e100) y.col(k) /= big;
    }
  }
  CMatrix v = d.asDiagonal() * (sf.U * y);
  const double anorm = std::max(a.norm(), std::numeric_limits<double>::min());
  CMatrix r = a * v - v * Eigen::Map<const Eigen::VectorXcd>(res.values.data(), n).asDiagonal();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double vn = v.col(k).norm();
    if (vn == 0.0 || !std::isfinite(vn)) {
      worst = std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, r.col(k).norm() / (anorm * vn));
  }
  res.residual = worst;
  return res;
}

CMatrix companion_matrix(const std::vector<cplx>& c) {
  if (c.size() < 2) fail(ErrorCode::DegenerateInput, "companion matrix needs degree >= 1");
  const auto n = static_cast<Eigen::Index>(c.size() - 1);
  const cplx lead = c.back();
  if (lead == cplx{0.0, 0.0}) fail(ErrorCode::DegenerateInput, "zero leading coefficient");
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) m(i, n - 1) = -c[static_cast<std::size_t>(i)] / lead;
  return m;
}

}  // namespace spectra::rmt
