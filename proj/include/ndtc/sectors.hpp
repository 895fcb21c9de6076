#pragma once

#include <string>
#include <vector>

#include "ndtc/smallmat.hpp"

namespace ndtc {

// The interaction conserves (excited atoms + photons) in each mode separately,
// so the joint space splits into finite invariant sectors of dimension <= 4.
enum class SectorKind {
  Quad,         // {|++,m1,m2>, |+-,m1+1,m2+1>, |-+,m1+1,m2+1>, |--,m1+2,m2+2>}
  TripleLeft,   // {|+-,0,k>,   |-+,0,k>,   |--,1,k+1>}   (mode 1 exhausted)
  TripleRight,  // {|+-,k,0>,   |-+,k,0>,   |--,k+1,1>}   (mode 2 exhausted), k >= 1
  Frozen,       // {|--,n1,n2>} with n1 == 0 or n2 == 0: annihilated by H
};

// Atom index is the two-atom basis slot: 0=|++>, 1=|+->, 2=|-+>, 3=|-->.
struct SectorState {
  int atom = 0;
  int n1 = 0;
  int n2 = 0;
  friend bool operator==(const SectorState&, const SectorState&) = default;
};

struct Sector {
  SectorKind kind = SectorKind::Frozen;
  // Quad: base |++> photon labels.  TripleLeft: (0, k).  TripleRight: (k, 0).
  // Frozen: the |--> photon labels.
  int m1 = 0;
  int m2 = 0;

  static Sector quad(int m1, int m2) { return {SectorKind::Quad, m1, m2}; }
  static Sector triple_left(int k) { return {SectorKind::TripleLeft, 0, k}; }
  static Sector triple_right(int k) { return {SectorKind::TripleRight, k, 0}; }
  static Sector frozen(int n1, int n2) { return {SectorKind::Frozen, n1, n2}; }

  int dim() const;
  std::vector<SectorState> states() const;  // basis order as listed above
  std::string describe() const;             // e.g. "Quad(2,3)" for diagnostics

  friend bool operator==(const Sector&, const Sector&) = default;
};

// Every sector whose states can receive amplitude when evolving initial states
// with field occupation n1 <= cutoff1, n2 <= cutoff2 (atoms arbitrary).  The
// sector states themselves reach at most (cutoff1+2, cutoff2+2).  Returned in a
// fixed deterministic order: Quads lexicographic in (m1,m2), then TripleLeft by
// k, TripleRight by k, Frozen along the n2=0 edge then the n1=0 edge.
std::vector<Sector> enumerate_sectors(int cutoff1, int cutoff2);

// Interaction-picture Hamiltonian block in units of hbar*g, in the sector basis
// order.  alpha is the dipole-dipole coupling over g.  Real symmetric.
MatC sector_hamiltonian(const Sector& sec, double alpha);

// Scalars of the closed-form propagator frame, indexed by the photon labels
// (n1,n2) of the central |+-> / |-+> pair of a quad:
//   lambda = 2[(n1+1)(n2+1) + n1 n2],  theta = sqrt(4 lambda + alpha^2).
struct SectorScalars {
  double lambda = 0.0;
  double theta = 0.0;
};
SectorScalars sector_scalars(int n1, int n2, double alpha);

}  // namespace ndtc
