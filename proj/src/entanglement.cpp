#include "ndtc/entanglement.hpp"

#include <cmath>
#include <string>

namespace ndtc {

MatC partial_transpose(const MatC& rho) {
  if (rho.dim != 4) {
    throw DimMismatch("partial_transpose: expected a 4x4 two-qubit matrix, got dim " +
                      std::to_string(rho.dim));
  }
  const double herr = hermiticity_error(rho);
  if (herr > 1e-10 * std::max(rho.max_abs(), 1e-300)) {
    throw NotHermitian("partial_transpose: |rho - rho†| = " + std::to_string(herr));
  }
  MatC pt(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          pt.at(2 * i + j, 2 * k + l) = rho.at(2 * i + l, 2 * k + j);
  return pt;
}

NegativityResult negativity(const MatC& rho) {
  const HermEigen e = herm_eigen(partial_transpose(rho));
  NegativityResult out;
  for (int k = 0; k < 4; ++k) out.pt_spectrum[static_cast<std::size_t>(k)] = e.values[static_cast<std::size_t>(k)];
  if (e.values[0] >= -1e-12) return out;  // only rounding dust below zero
  double s = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (e.values[static_cast<std::size_t>(k)] < 0.0) {
      out.negative_eigs.push_back(e.values[static_cast<std::size_t>(k)]);
      s += e.values[static_cast<std::size_t>(k)];
    }
  }
  out.epsilon = -2.0 * s;
  return out;
}

}  // namespace ndtc
