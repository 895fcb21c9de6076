#pragma once

#include <vector>

#include "ndtc/smallmat.hpp"

namespace ndtc {

// Partial transpose over the second atom of a two-qubit density matrix in the
// basis |++>, |+->, |-+>, |-->: element (i j),(k l) -> (i l),(k j).
// Requires dim 4 (DimMismatch) and Hermiticity within 1e-10 of the matrix
// scale (NotHermitian).
MatC partial_transpose(const MatC& rho);

struct NegativityResult {
  double epsilon = 0.0;                // -2 * sum of negative PT eigenvalues
  std::array<double, 4> pt_spectrum{};  // ascending
  std::vector<double> negative_eigs;   // the eigenvalues counted into epsilon
};

// Entanglement monitor of the two-atom state.  Eigenvalues above -1e-12 are
// treated as rounding dust: epsilon is then exactly 0 and negative_eigs stays
// empty, preserving epsilon == -2*sum(negative_eigs).  Expects unit trace
// within ~1e-6; the caller owns that normalization.
NegativityResult negativity(const MatC& rho);

}  // namespace ndtc
