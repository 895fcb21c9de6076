#include "oracle.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace ndtc_test {

namespace {

// <a',n1',n2'|H|a,n1,n2> in units of hbar*g, straight from the two terms of the
// interaction: simultaneous two-mode photon creation with an atomic lowering
// (plus conjugate), and the |+-> <-> |-+> excitation exchange at strength alpha.
double h_element(int aa, int an1, int an2, int ba, int bn1, int bn2, double alpha) {
  const auto lower1 = [](int s) { return s == 0 ? 2 : s == 1 ? 3 : -1; };
  const auto lower2 = [](int s) { return s == 0 ? 1 : s == 2 ? 3 : -1; };
  double v = 0.0;
  if (an1 == bn1 + 1 && an2 == bn2 + 1 && (aa == lower1(ba) || aa == lower2(ba)))
    v += std::sqrt((bn1 + 1.0) * (bn2 + 1.0));
  if (bn1 == an1 + 1 && bn2 == an2 + 1 && (ba == lower1(aa) || ba == lower2(aa)))
    v += std::sqrt((an1 + 1.0) * (an2 + 1.0));
  if (an1 == bn1 && an2 == bn2 && ((aa == 1 && ba == 2) || (aa == 2 && ba == 1))) v += alpha;
  return v;
}

}  // namespace

FullSpaceOracle::FullSpaceOracle(double alpha, int cutoff1, int cutoff2)
    : cutoff1_(cutoff1),
      cutoff2_(cutoff2),
      top1_(cutoff1 + 2),
      top2_(cutoff2 + 2),
      field_dim_((top1_ + 1) * (top2_ + 1)),
      dim_(4 * field_dim_) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int aa = 0; aa < 4; ++aa)
    for (int an1 = 0; an1 <= top1_; ++an1)
      for (int an2 = 0; an2 <= top2_; ++an2)
        for (int ba = 0; ba < 4; ++ba)
          for (int bn1 = 0; bn1 <= top1_; ++bn1)
            for (int bn2 = 0; bn2 <= top2_; ++bn2)
              h(index(aa, an1, an2), index(ba, bn1, bn2)) =
                  h_element(aa, an1, an2, ba, bn1, bn2, alpha);

  // NOTE: states at the photon-number boundary lack their upward partners, so
  // the top of the box evolves unphysically — but seeds with n <= cutoff never
  // reach it (two photons per mode at most are added from |++>).
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("full-space eigensolver failed");
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors().cast<ndtc::cplx>();
}

int FullSpaceOracle::index(int atom, int n1, int n2) const {
  return (atom * (top1_ + 1) + n1) * (top2_ + 1) + n2;
}

ndtc::MatC FullSpaceOracle::reduced_density(const std::array<ndtc::cplx, 4>& psi,
                                            const std::vector<double>& w1,
                                            const std::vector<double>& w2, double gt) const {
  if (static_cast<int>(w1.size()) > cutoff1_ + 1 || static_cast<int>(w2.size()) > cutoff2_ + 1)
    throw std::invalid_argument("thermal weights exceed the oracle cutoffs");

  Eigen::VectorXcd phases(dim_);
  for (int k = 0; k < dim_; ++k)
    phases(k) = std::polar(1.0, -evals_(k) * gt);

  ndtc::MatC rho = ndtc::MatC::zero(4);
  Eigen::VectorXcd seed(dim_), phi(dim_);
  for (int n1 = 0; n1 < static_cast<int>(w1.size()); ++n1)
    for (int n2 = 0; n2 < static_cast<int>(w2.size()); ++n2) {
      const double w = w1[static_cast<std::size_t>(n1)] * w2[static_cast<std::size_t>(n2)];
      if (w == 0.0) continue;
      seed.setZero();
      for (int a = 0; a < 4; ++a) seed(index(a, n1, n2)) = psi[static_cast<std::size_t>(a)];
      phi = evecs_ * phases.cwiseProduct(evecs_.adjoint() * seed);
      // Field trace: contract equal final Fock labels; the layout keeps each
      // atom's field block contiguous.
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          rho.at(r, c) += w * phi.segment(c * field_dim_, field_dim_)
                                  .dot(phi.segment(r * field_dim_, field_dim_));
    }
  return rho;
}

}  // namespace ndtc_test
