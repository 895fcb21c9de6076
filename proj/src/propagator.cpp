#include "ndtc/propagator.hpp"

#include <cmath>
#include <string>

namespace ndtc {

SectorEigen sector_eigensystem(const Sector& sec, double alpha) {
  HermEigen e;
  try {
    e = herm_eigen(sector_hamiltonian(sec, alpha));
  } catch (const NoConvergence& err) {
    throw NoConvergence(sec.describe() + ": " + err.what());
  }
  SectorEigen out;
  out.dim = e.dim;
  for (int l = 0; l < e.dim; ++l) {
    out.lam[static_cast<std::size_t>(l)] = e.values[static_cast<std::size_t>(l)];
    // Real symmetric input keeps the Jacobi iteration real.
    for (int i = 0; i < e.dim; ++i)
      out.vec[static_cast<std::size_t>(i * e.dim + l)] = e.vectors.at(i, l).real();
  }
  return out;
}

void synthesize_propagator(const SectorEigen& es, double gt, cplx* out) {
  const int d = es.dim;
  cplx ph[4];
  for (int l = 0; l < d; ++l) {
    const double x = es.lam[static_cast<std::size_t>(l)] * gt;
    ph[l] = cplx(std::cos(x), -std::sin(x));
  }
  // U = V e^{-i lam gt} V^T is complex symmetric: fill the upper triangle, mirror.
  for (int j = 0; j < d; ++j) {
    for (int k = j; k < d; ++k) {
      cplx s = 0.0;
      for (int l = 0; l < d; ++l) {
        s += es.vec[static_cast<std::size_t>(j * d + l)] *
             es.vec[static_cast<std::size_t>(k * d + l)] * ph[l];
      }
      out[j * d + k] = s;
      out[k * d + j] = s;
    }
  }
}

MatC sector_propagator_numeric(const Sector& sec, double alpha, double gt) {
  const SectorEigen es = sector_eigensystem(sec, alpha);
  MatC u(es.dim);
  synthesize_propagator(es, gt, u.a.data());
  return u;
}

namespace {

inline cplx cis(double x) { return {std::cos(x), std::sin(x)}; }

}  // namespace

cplx coef_A(int n1, int n2, double alpha, double gt) {
  const SectorScalars sc = sector_scalars(n1, n2, alpha);
  const double mu_p = 0.5 * (alpha + sc.theta), mu_m = 0.5 * (alpha - sc.theta);
  const double w = alpha / sc.theta;
  return 0.5 * (1.0 - w) * cis(-mu_p * gt) + 0.5 * (1.0 + w) * cis(-mu_m * gt) - 1.0;
}

cplx coef_B(int n1, int n2, double alpha, double gt) {
  const SectorScalars sc = sector_scalars(n1, n2, alpha);
  const double mu_p = 0.5 * (alpha + sc.theta), mu_m = 0.5 * (alpha - sc.theta);
  return cis(-mu_p * gt) - cis(-mu_m * gt);
}

cplx entry_central_diag(int n1, int n2, double alpha, double gt) {
  const SectorScalars sc = sector_scalars(n1, n2, alpha);
  const double mu_p = 0.5 * (alpha + sc.theta), mu_m = 0.5 * (alpha - sc.theta);
  const cplx s = ((sc.theta + alpha) * cis(-mu_p * gt) + (sc.theta - alpha) * cis(-mu_m * gt)) /
                 (4.0 * sc.theta);
  return s + 0.5 * cis(alpha * gt);
}

cplx entry_central_exchange(int n1, int n2, double alpha, double gt) {
  const SectorScalars sc = sector_scalars(n1, n2, alpha);
  const double mu_p = 0.5 * (alpha + sc.theta), mu_m = 0.5 * (alpha - sc.theta);
  const cplx s = ((sc.theta + alpha) * cis(-mu_p * gt) + (sc.theta - alpha) * cis(-mu_m * gt)) /
                 (4.0 * sc.theta);
  return s - 0.5 * cis(alpha * gt);
}

void quad_block_analytic_into(int m1, int m2, double alpha, double gt, cplx* out) {
  const int n1 = m1 + 1, n2 = m2 + 1;  // central-pair photon labels
  const SectorScalars sc = sector_scalars(n1, n2, alpha);
  const double mu_p = 0.5 * (alpha + sc.theta), mu_m = 0.5 * (alpha - sc.theta);
  const cplx ep = cis(-mu_p * gt), em = cis(-mu_m * gt);
  const double w = alpha / sc.theta;
  const cplx A = 0.5 * (1.0 - w) * ep + 0.5 * (1.0 + w) * em - 1.0;
  const cplx B = ep - em;
  const cplx S = ((sc.theta + alpha) * ep + (sc.theta - alpha) * em) / (4.0 * sc.theta);
  const cplx D = 0.5 * cis(alpha * gt);

  const double u = std::sqrt(static_cast<double>(n1) * n2);
  const double v = std::sqrt((n1 + 1.0) * (n2 + 1.0));
  const cplx uB = u / sc.theta * B, vB = v / sc.theta * B;

  out[0] = 1.0 + 2.0 * u * u / sc.lambda * A;
  out[1] = out[4] = out[2] = out[8] = uB;
  out[3] = out[12] = 2.0 * u * v / sc.lambda * A;
  out[5] = out[10] = S + D;
  out[6] = out[9] = S - D;
  out[7] = out[13] = out[11] = out[14] = vB;
  out[15] = 1.0 + 2.0 * v * v / sc.lambda * A;
}

MatC quad_block_analytic(int m1, int m2, double alpha, double gt) {
  MatC U(4);
  quad_block_analytic_into(m1, m2, alpha, gt, U.a.data());
  return U;
}

cplx analytic_entry(int row, int col, int n1, int n2, double alpha, double gt) {
  if (row < 1 || row > 4 || col < 1 || col > 4) {
    throw DimMismatch("analytic_entry: row/col must be in 1..4");
  }
  // Locate the quad containing the column state; its base |++> labels.
  int b1 = n1, b2 = n2;
  switch (col) {
    case 1: break;
    case 2:
    case 3: b1 -= 1; b2 -= 1; break;
    case 4: b1 -= 2; b2 -= 2; break;
  }
  if (b1 < 0 || b2 < 0) {
    throw IndexOutOfSector("analytic_entry: state (" + std::to_string(col) + ";" +
                           std::to_string(n1) + "," + std::to_string(n2) +
                           ") sits in a boundary sector with no closed-form block");
  }
  return quad_block_analytic(b1, b2, alpha, gt).at(row - 1, col - 1);
}

}  // namespace ndtc
