#include "ndtc/sectors.hpp"

#include <cmath>

namespace ndtc {

int Sector::dim() const {
  switch (kind) {
    case SectorKind::Quad: return 4;
    case SectorKind::TripleLeft:
    case SectorKind::TripleRight: return 3;
    case SectorKind::Frozen: return 1;
  }
  return 0;
}

std::vector<SectorState> Sector::states() const {
  switch (kind) {
    case SectorKind::Quad:
      return {{0, m1, m2}, {1, m1 + 1, m2 + 1}, {2, m1 + 1, m2 + 1}, {3, m1 + 2, m2 + 2}};
    case SectorKind::TripleLeft:
      return {{1, 0, m2}, {2, 0, m2}, {3, 1, m2 + 1}};
    case SectorKind::TripleRight:
      return {{1, m1, 0}, {2, m1, 0}, {3, m1 + 1, 1}};
    case SectorKind::Frozen:
      return {{3, m1, m2}};
  }
  return {};
}

std::string Sector::describe() const {
  switch (kind) {
    case SectorKind::Quad:
      return "Quad(" + std::to_string(m1) + "," + std::to_string(m2) + ")";
    case SectorKind::TripleLeft: return "TripleLeft(" + std::to_string(m2) + ")";
    case SectorKind::TripleRight: return "TripleRight(" + std::to_string(m1) + ")";
    case SectorKind::Frozen:
      return "Frozen(" + std::to_string(m1) + "," + std::to_string(m2) + ")";
  }
  return "?";
}

std::vector<Sector> enumerate_sectors(int cutoff1, int cutoff2) {
  if (cutoff1 < 0 || cutoff2 < 0) {
    throw DimMismatch("enumerate_sectors: cutoffs must be non-negative");
  }
  std::vector<Sector> out;
  out.reserve(static_cast<std::size_t>((cutoff1 + 2) * (cutoff2 + 2)));
  for (int m1 = 0; m1 <= cutoff1; ++m1)
    for (int m2 = 0; m2 <= cutoff2; ++m2) out.push_back(Sector::quad(m1, m2));
  for (int k = 0; k <= cutoff2; ++k) out.push_back(Sector::triple_left(k));
  for (int k = 1; k <= cutoff1; ++k) out.push_back(Sector::triple_right(k));
  for (int n1 = 0; n1 <= cutoff1; ++n1) out.push_back(Sector::frozen(n1, 0));
  for (int n2 = 1; n2 <= cutoff2; ++n2) out.push_back(Sector::frozen(0, n2));
  return out;
}

MatC sector_hamiltonian(const Sector& sec, double alpha) {
  MatC h(sec.dim());
  switch (sec.kind) {
    case SectorKind::Quad: {
      // |++,m> couples to |+-> and |-+> by sqrt((m1+1)(m2+1)); those couple to
      // |--,m+2> by sqrt((m1+2)(m2+2)); the dipole term links |+-> and |-+>.
      const double g1 = std::sqrt((sec.m1 + 1.0) * (sec.m2 + 1.0));
      const double g2 = std::sqrt((sec.m1 + 2.0) * (sec.m2 + 2.0));
      h.at(0, 1) = h.at(1, 0) = g1;
      h.at(0, 2) = h.at(2, 0) = g1;
      h.at(1, 3) = h.at(3, 1) = g2;
      h.at(2, 3) = h.at(3, 2) = g2;
      h.at(1, 2) = h.at(2, 1) = alpha;
      break;
    }
    case SectorKind::TripleLeft:
    case SectorKind::TripleRight: {
      const int k = sec.kind == SectorKind::TripleLeft ? sec.m2 : sec.m1;
      const double g = std::sqrt(k + 1.0);
      h.at(0, 1) = h.at(1, 0) = alpha;
      h.at(0, 2) = h.at(2, 0) = g;
      h.at(1, 2) = h.at(2, 1) = g;
      break;
    }
    case SectorKind::Frozen: break;  // 1x1 zero: |--,n> with an empty mode is dark
  }
  return h;
}

SectorScalars sector_scalars(int n1, int n2, double alpha) {
  SectorScalars s;
  s.lambda = 2.0 * ((n1 + 1.0) * (n2 + 1.0) + static_cast<double>(n1) * n2);
  s.theta = std::sqrt(4.0 * s.lambda + alpha * alpha);
  return s;
}

}  // namespace ndtc
