#pragma once

#include "ndtc/sectors.hpp"

namespace ndtc {

// --- Numeric path -----------------------------------------------------------

// Eigensystem of a sector Hamiltonian.  The blocks are real symmetric, so the
// eigenvectors are stored as reals; exp(-iHgt) is then synthesized per time
// point as U_jk = sum_l V_jl V_kl e^{-i lam_l gt} (complex symmetric).
struct SectorEigen {
  int dim = 0;
  std::array<double, 4> lam{};
  std::array<double, 16> vec{};  // row-major; column l = eigenvector l
};

SectorEigen sector_eigensystem(const Sector& sec, double alpha);

// out is a row-major dim x dim complex buffer.
void synthesize_propagator(const SectorEigen& es, double gt, cplx* out);

// exp(-i H gt) for one sector via the eigensystem above.
MatC sector_propagator_numeric(const Sector& sec, double alpha, double gt);

// --- Closed-form path -------------------------------------------------------
//
// All scalars are indexed by the photon labels (n1,n2) of the central
// |+-> / |-+> pair of a quad, with mu± = (alpha ± theta)/2:
//   A = (1 - alpha/theta)/2 e^{-i mu+ gt} + (1 + alpha/theta)/2 e^{-i mu- gt} - 1
//   B = e^{-i mu+ gt} - e^{-i mu- gt}

cplx coef_A(int n1, int n2, double alpha, double gt);
cplx coef_B(int n1, int n2, double alpha, double gt);

// Central-pair diagonal and exchange entries:
//   S ± D with S = [(theta+alpha) e^{-i mu+ gt} + (theta-alpha) e^{-i mu- gt}]/(4 theta)
//   and D = e^{i alpha gt}/2.
cplx entry_central_diag(int n1, int n2, double alpha, double gt);      // U22 = U33
cplx entry_central_exchange(int n1, int n2, double alpha, double gt);  // U23 = U32

// Closed-form propagator block for Quad(m1,m2) (central labels m+1).
MatC quad_block_analytic(int m1, int m2, double alpha, double gt);
void quad_block_analytic_into(int m1, int m2, double alpha, double gt, cplx* out);

// Single propagator entry <row|U|col> in 1-based two-atom indices, where
// (n1,n2) are the photon labels of the column state.  Only interior quads have
// a closed form: throws IndexOutOfSector at the Fock boundary (col 2/3 with
// n1=0 or n2=0, col 4 with n1<2 or n2<2), where evolution routes to the
// numeric path.  Throws DimMismatch for row/col outside 1..4.
cplx analytic_entry(int row, int col, int n1, int n2, double alpha, double gt);

}  // namespace ndtc
