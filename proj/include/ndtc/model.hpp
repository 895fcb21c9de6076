#pragma once

#include <vector>

#include "ndtc/smallmat.hpp"

namespace ndtc {

// Two-atom basis order used everywhere: |++>, |+->, |-+>, |-->.
// Angles are radians; the qubit amplitudes are cos(theta)|+> + sin(theta) e^{i phi}|->.
struct AtomPreparation {
  double theta1 = 0.0;
  double phi1 = 0.0;
  double theta2 = 0.0;
  double phi2 = 0.0;
};

// Physics + truncation knobs for a run.  alpha is the dipole-dipole coupling in
// units of the atom-field coupling g; nbar1/nbar2 are the mean thermal photon
// numbers of the two cavity modes.
struct ModelParams {
  double alpha = 0.1;
  double nbar1 = 0.0;
  double nbar2 = 0.0;
  double cutoff_tail = 1e-8;  // truncate when the remaining weight drops below this
  int cutoff_cap = 2048;      // hard ceiling on the Fock cutoff
};

// Truncated thermal photon-number distribution for one mode.
struct ThermalWeights {
  int cutoff = 0;               // largest retained Fock index N
  std::vector<double> weights;  // p(0..N)
  double tail = 0.0;            // exact dropped weight (n/(1+n))^{N+1}
  bool clamped = false;         // cutoff_cap was hit; tail may exceed cutoff_tail
};

// p(n) = nbar^n / (1+nbar)^{n+1}, evaluated in log space so large n stays finite.
double thermal_weight(double nbar, int n);

// Smallest cutoff whose dropped tail is <= cutoff_tail, clamped to cutoff_cap.
ThermalWeights build_thermal_weights(double nbar, double cutoff_tail, int cutoff_cap);

// Bose-Einstein mean occupation 1/(e^x - 1) for x = (mode frequency)/(kT),
// computed via expm1 so small x keeps full precision.  Throws NonPositiveRatio
// unless x > 0.
double thermal_occupation(double freq_over_temp);

// Product-state amplitudes (c1c2, c1s2 e^{i phi2}, s1c2 e^{i phi1}, s1s2 e^{i(phi1+phi2)}).
// cos/sin values within 1e-15 of zero are snapped to exactly zero so incoherent
// preparations (theta at a multiple of pi/2) produce exact zeros, making the
// state bitwise independent of the then-irrelevant phases.
std::array<cplx, 4> initial_atomic_state(const AtomPreparation& prep);

// rho(0) = |psi><psi| in the two-atom basis.
MatC initial_atomic_density(const AtomPreparation& prep);

}  // namespace ndtc
