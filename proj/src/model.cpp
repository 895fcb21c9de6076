#include "ndtc/model.hpp"

#include <cmath>
#include <string>

namespace ndtc {

double thermal_weight(double nbar, int n) {
  if (nbar <= 0.0) return n == 0 ? 1.0 : 0.0;
  // log p(n) = n log(nbar) - (n+1) log(1+nbar)
  return std::exp(static_cast<double>(n) * std::log(nbar) -
                  (static_cast<double>(n) + 1.0) * std::log1p(nbar));
}

ThermalWeights build_thermal_weights(double nbar, double cutoff_tail, int cutoff_cap) {
  ThermalWeights out;
  if (nbar <= 0.0) {
    out.cutoff = 0;
    out.weights = {1.0};
    out.tail = 0.0;
    return out;
  }
  // Dropped weight above N is exactly r^{N+1} with r = nbar/(1+nbar).
  const double log_r = std::log(nbar) - std::log1p(nbar);
  int n = std::max(0, static_cast<int>(std::ceil(std::log(cutoff_tail) / log_r)) - 1);
  while ((n + 1.0) * log_r > std::log(cutoff_tail)) ++n;                    // feasibility
  while (n > 0 && static_cast<double>(n) * log_r <= std::log(cutoff_tail)) --n;  // minimality
  if (n > cutoff_cap) {
    n = cutoff_cap;
    out.clamped = true;
  }
  out.cutoff = n;
  out.weights.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) out.weights[static_cast<std::size_t>(k)] = thermal_weight(nbar, k);
  out.tail = std::exp((n + 1.0) * log_r);
  return out;
}

double thermal_occupation(double freq_over_temp) {
  if (!(freq_over_temp > 0.0)) {
    throw NonPositiveRatio("thermal_occupation: frequency/temperature ratio must be > 0, got " +
                           std::to_string(freq_over_temp));
  }
  return 1.0 / std::expm1(freq_over_temp);
}

namespace {

// Snap |x| < 1e-15 to zero: keeps incoherent preparations exactly incoherent
// even though pi/2 is not representable (cos(pi/2) ~ 6e-17 in doubles).
double snap(double x) { return std::abs(x) < 1e-15 ? 0.0 : x; }

}  // namespace

std::array<cplx, 4> initial_atomic_state(const AtomPreparation& prep) {
  const double c1 = snap(std::cos(prep.theta1)), s1 = snap(std::sin(prep.theta1));
  const double c2 = snap(std::cos(prep.theta2)), s2 = snap(std::sin(prep.theta2));
  const cplx e1 = s1 == 0.0 ? cplx(0.0) : s1 * std::polar(1.0, prep.phi1);
  const cplx e2 = s2 == 0.0 ? cplx(0.0) : s2 * std::polar(1.0, prep.phi2);
  return {c1 * c2, c1 * e2, e1 * c2, e1 * e2};
}

MatC initial_atomic_density(const AtomPreparation& prep) {
  // Outer product psi psi† evaluated as |psi_i||psi_j| e^{i(chi_i - chi_j)}:
  // moduli and phases are combined before exponentiation, so diagonal entries
  // carry no trig noise from the phases and phase differences enter exactly.
  const double c1 = snap(std::cos(prep.theta1)), s1 = snap(std::sin(prep.theta1));
  const double c2 = snap(std::cos(prep.theta2)), s2 = snap(std::sin(prep.theta2));
  const double mod[4] = {c1 * c2, c1 * s2, s1 * c2, s1 * s2};
  const double chi[4] = {0.0, prep.phi2, prep.phi1, prep.phi1 + prep.phi2};
  MatC rho(4);
  for (int i = 0; i < 4; ++i) {
    rho.at(i, i) = mod[i] * mod[i];
    for (int j = i + 1; j < 4; ++j) {
      const double m = mod[i] * mod[j];
      const cplx z = m == 0.0 ? cplx(0.0) : m * std::polar(1.0, chi[i] - chi[j]);
      rho.at(i, j) = z;
      rho.at(j, i) = std::conj(z);
    }
  }
  return rho;
}

}  // namespace ndtc
