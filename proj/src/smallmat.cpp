#include "ndtc/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ndtc {

void MatC::check_dim(int d) {
  if (d < 1 || d > 4) {
    throw DimMismatch("matrix dimension must be in [1,4], got " + std::to_string(d));
  }
}

MatC MatC::identity(int d) {
  MatC m(d);
  for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
  return m;
}

cplx MatC::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < dim; ++i) t += at(i, i);
  return t;
}

double MatC::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < dim * dim; ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

MatC mat_mul(const MatC& A, const MatC& B) {
  if (A.dim != B.dim) {
    throw DimMismatch("mat_mul: dimensions " + std::to_string(A.dim) + " and " +
                      std::to_string(B.dim) + " differ");
  }
  MatC C(A.dim);
  for (int i = 0; i < A.dim; ++i) {
    for (int j = 0; j < A.dim; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < A.dim; ++k) s += A.at(i, k) * B.at(k, j);
      C.at(i, j) = s;
    }
  }
  return C;
}

MatC adjoint(const MatC& A) {
  MatC B(A.dim);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j) B.at(i, j) = std::conj(A.at(j, i));
  return B;
}

double max_abs_diff(const MatC& A, const MatC& B) {
  if (A.dim != B.dim) {
    throw DimMismatch("max_abs_diff: dimensions " + std::to_string(A.dim) + " and " +
                      std::to_string(B.dim) + " differ");
  }
  double m = 0.0;
  for (int i = 0; i < A.dim * A.dim; ++i) m = std::max(m, std::abs(A.a[i] - B.a[i]));
  return m;
}

double hermiticity_error(const MatC& A) {
  double m = 0.0;
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j) m = std::max(m, std::abs(A.at(i, j) - std::conj(A.at(j, i))));
  return m;
}

namespace {

// One complex Jacobi rotation zeroing A_pq, accumulated into V.
// The rotation is J = P*G restricted to rows/cols (p,q): P = diag(1, e^{-i phi})
// strips the phase of A_pq = |b| e^{i phi}, then a real Givens rotation G with
// the smaller-angle root t = sgn(tau)/(|tau| + sqrt(1+tau^2)) kills the
// off-diagonal of the resulting real symmetric 2x2 block.
void jacobi_rotate(MatC& A, MatC& V, int p, int q) {
  const cplx b = A.at(p, q);
  const double ab = std::abs(b);
  if (ab == 0.0) return;
  const cplx phase = b / ab;  // e^{i phi}

  const double app = A.at(p, p).real();
  const double aqq = A.at(q, q).real();
  const double tau = (aqq - app) / (2.0 * ab);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // Column update X <- X*J touches only columns p and q:
  //   col_p' = c*col_p - s*conj(phase)*col_q
  //   col_q' = s*col_p + c*conj(phase)*col_q
  const cplx jqp = -s * std::conj(phase);
  const cplx jqq = c * std::conj(phase);
  const int d = A.dim;
  for (int i = 0; i < d; ++i) {
    const cplx xp = A.at(i, p), xq = A.at(i, q);
    A.at(i, p) = c * xp + jqp * xq;
    A.at(i, q) = s * xp + jqq * xq;
    const cplx vp = V.at(i, p), vq = V.at(i, q);
    V.at(i, p) = c * vp + jqp * vq;
    V.at(i, q) = s * vp + jqq * vq;
  }
  // Row update A <- J† A touches only rows p and q (J† columns conjugated).
  for (int j = 0; j < d; ++j) {
    const cplx xp = A.at(p, j), xq = A.at(q, j);
    A.at(p, j) = c * xp + std::conj(jqp) * xq;
    A.at(q, j) = s * xp + std::conj(jqq) * xq;
  }
  A.at(p, q) = 0.0;
  A.at(q, p) = 0.0;
  A.at(p, p) = A.at(p, p).real();
  A.at(q, q) = A.at(q, q).real();
}

double max_offdiag(const MatC& A) {
  double m = 0.0;
  for (int p = 0; p < A.dim; ++p)
    for (int q = p + 1; q < A.dim; ++q) m = std::max(m, std::abs(A.at(p, q)));
  return m;
}

}  // namespace

HermEigen herm_eigen(const MatC& A, double herm_tol) {
  MatC::check_dim(A.dim);
  const double scale = A.max_abs();
  const double herr = hermiticity_error(A);
  if (herr > herm_tol * std::max(scale, 1e-300)) {
    throw NotHermitian("herm_eigen: |A - A†| = " + std::to_string(herr) +
                       " exceeds tolerance for scale " + std::to_string(scale));
  }

  // Work on the Hermitian part; drops the (tolerated) asymmetry noise.
  MatC W(A.dim);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j) W.at(i, j) = 0.5 * (A.at(i, j) + std::conj(A.at(j, i)));

  MatC V = MatC::identity(A.dim);
  const double stop = 0.5e-15 * std::max(scale, 1e-300);
  constexpr int kMaxSweeps = 100;
  bool converged = (A.dim == 1) || max_offdiag(W) <= stop;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (int p = 0; p < A.dim; ++p)
      for (int q = p + 1; q < A.dim; ++q)
        if (std::abs(W.at(p, q)) > stop) jacobi_rotate(W, V, p, q);
    converged = max_offdiag(W) <= stop;
  }
  if (!converged) {
    throw NoConvergence("herm_eigen: off-diagonal " + std::to_string(max_offdiag(W)) +
                        " after 100 sweeps (scale " + std::to_string(scale) + ")");
  }

  // Sort eigenpairs ascending; stable so exact ties keep their original order.
  std::array<int, 4> idx{};
  std::iota(idx.begin(), idx.begin() + A.dim, 0);
  std::stable_sort(idx.begin(), idx.begin() + A.dim,
                   [&](int i, int j) { return W.at(i, i).real() < W.at(j, j).real(); });

  HermEigen out;
  out.dim = A.dim;
  out.vectors = MatC(A.dim);
  for (int k = 0; k < A.dim; ++k) {
    out.values[k] = W.at(idx[k], idx[k]).real();
    for (int i = 0; i < A.dim; ++i) out.vectors.at(i, k) = V.at(i, idx[k]);
  }
  return out;
}

}  // namespace ndtc
