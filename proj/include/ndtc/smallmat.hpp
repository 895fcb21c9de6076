#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include "ndtc/errors.hpp"

namespace ndtc {

using cplx = std::complex<double>;

// Dense complex matrix of small fixed dimension (1..4), row-major, value type.
// Sized for two-qubit density matrices and interaction-sector blocks; no heap.
struct MatC {
  int dim = 0;
  std::array<cplx, 16> a{};

  MatC() = default;
  explicit MatC(int d) : dim(d) { check_dim(d); }

  static MatC zero(int d) { return MatC(d); }
  static MatC identity(int d);

  cplx& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
  const cplx& at(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }

  cplx trace() const;
  double max_abs() const;  // largest entry modulus

  static void check_dim(int d);
};

MatC mat_mul(const MatC& A, const MatC& B);  // throws DimMismatch
MatC adjoint(const MatC& A);

// max_ij |A_ij - B_ij|; throws DimMismatch
double max_abs_diff(const MatC& A, const MatC& B);

// max_ij |A_ij - conj(A_ji)|
double hermiticity_error(const MatC& A);

struct HermEigen {
  int dim = 0;
  std::array<double, 4> values{};  // ascending; ties keep pre-sort order
  MatC vectors;                    // orthonormal columns: vectors.at(i, k) = <i|v_k>
};

// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
// The input must satisfy max|A - A†| <= herm_tol * max|A| (throws NotHermitian);
// it is then symmetrized to (A + A†)/2 before iterating.  At most 100 sweeps
// (throws NoConvergence), which in practice is far more than dim<=4 ever needs.
HermEigen herm_eigen(const MatC& A, double herm_tol = 1e-10);

}  // namespace ndtc
