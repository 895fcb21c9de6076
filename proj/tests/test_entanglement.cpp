#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ndtc/entanglement.hpp"

using namespace ndtc;

namespace {

MatC bell_density() {
  // (|++> + |-->)/sqrt(2)
  MatC rho = MatC::zero(4);
  rho.at(0, 0) = rho.at(3, 3) = rho.at(0, 3) = rho.at(3, 0) = 0.5;
  return rho;
}

MatC werner(double p) {
  MatC rho = bell_density();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rho.at(i, j) *= p;
  for (int i = 0; i < 4; ++i) rho.at(i, i) += (1.0 - p) / 4.0;
  return rho;
}

MatC pure_density(const std::array<cplx, 4>& psi) {
  MatC rho = MatC::zero(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rho.at(i, j) = psi[static_cast<std::size_t>(i)] * std::conj(psi[static_cast<std::size_t>(j)]);
  return rho;
}

// One-qubit unitary with determinant 1.
MatC qubit_unitary(double theta, double a, double b) {
  MatC u = MatC::zero(2);
  u.at(0, 0) = std::polar(std::cos(theta), a);
  u.at(0, 1) = std::polar(std::sin(theta), b);
  u.at(1, 0) = -std::polar(std::sin(theta), -b);
  u.at(1, 1) = std::polar(std::cos(theta), -a);
  return u;
}

MatC kron2(const MatC& u, const MatC& v) {
  MatC w = MatC::zero(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) w.at(2 * i + j, 2 * k + l) = u.at(i, k) * v.at(j, l);
  return w;
}

MatC conjugate(const MatC& w, const MatC& rho) { return mat_mul(mat_mul(w, rho), adjoint(w)); }

// Partial transpose over the FIRST atom, for the convention-independence check.
MatC pt_first(const MatC& rho) {
  MatC out = MatC::zero(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          out.at(2 * i + j, 2 * k + l) = rho.at(2 * k + j, 2 * i + l);
  return out;
}

}  // namespace

TEST_CASE("partial transpose basics") {
  const MatC rho = werner(0.7);
  // Applying it twice restores every entry bitwise.
  CHECK(max_abs_diff(partial_transpose(partial_transpose(rho)), rho) == 0.0);

  // Diagonal matrices are untouched.
  MatC diag = MatC::zero(4);
  diag.at(0, 0) = 0.1;
  diag.at(1, 1) = 0.2;
  diag.at(2, 2) = 0.3;
  diag.at(3, 3) = 0.4;
  CHECK(max_abs_diff(partial_transpose(diag), diag) == 0.0);

  // Trace is preserved.
  CHECK(std::abs(partial_transpose(rho).trace() - rho.trace()) == 0.0);

  // The Bell partial transpose has spectrum (-1/2, 1/2, 1/2, 1/2).
  const HermEigen e = herm_eigen(partial_transpose(bell_density()));
  CHECK(e.values[0] == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(e.values[1] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(e.values[2] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(e.values[3] == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("partial transpose rejects bad input") {
  MatC rho = MatC::identity(3);
  CHECK_THROWS_AS(partial_transpose(rho), DimMismatch);

  MatC skew = MatC::zero(4);
  skew.at(0, 1) = 1.0;  // missing conjugate partner
  CHECK_THROWS_AS(partial_transpose(skew), NotHermitian);
}

TEST_CASE("negativity of reference states") {
  SUBCASE("maximally entangled") {
    const NegativityResult r = negativity(bell_density());
    CHECK(r.epsilon == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(r.negative_eigs.size() == 1);
    CHECK(r.negative_eigs[0] == doctest::Approx(-0.5).epsilon(1e-12));
  }
  SUBCASE("product state") {
    const NegativityResult r = negativity(pure_density({0.0, 1.0, 0.0, 0.0}));
    CHECK(r.epsilon == 0.0);
    CHECK(r.negative_eigs.empty());
  }
  SUBCASE("maximally mixed") {
    MatC rho = MatC::identity(4);
    for (int i = 0; i < 4; ++i) rho.at(i, i) = 0.25;
    const NegativityResult r = negativity(rho);
    CHECK(r.epsilon == 0.0);
  }
  SUBCASE("Bell/identity mixtures") {
    for (double p : {0.2, 0.5, 1.0}) {
      CAPTURE(p);
      const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
      const NegativityResult r = negativity(werner(p));
      CHECK(r.epsilon == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("epsilon bookkeeping") {
  for (double p : {0.45, 0.8, 1.0}) {
    const NegativityResult r = negativity(werner(p));
    double s = 0.0;
    for (double v : r.negative_eigs) {
      CHECK(v < 0.0);
      s += v;
    }
    CHECK(std::abs(r.epsilon - (-2.0 * s)) <= 1e-14);
    for (int i = 0; i + 1 < 4; ++i)
      CHECK(r.pt_spectrum[static_cast<std::size_t>(i)] <=
            r.pt_spectrum[static_cast<std::size_t>(i + 1)]);
    CHECK(r.epsilon >= 0.0);
    CHECK(r.epsilon <= 1.0 + 1e-9);
  }
}

TEST_CASE("invariance under local unitaries") {
  const std::array<cplx, 4> psi = {cplx(0.6, 0.1), cplx(0.2, -0.3), cplx(0.5, 0.0),
                                   cplx(0.35, 0.33)};
  std::array<cplx, 4> unit = psi;
  double norm = 0.0;
  for (const cplx& c : psi) norm += std::norm(c);
  for (cplx& c : unit) c /= std::sqrt(norm);

  for (const MatC& rho : {bell_density(), werner(0.7), pure_density(unit)}) {
    const double base = negativity(rho).epsilon;
    for (const auto& [theta, a, b] : std::vector<std::array<double, 3>>{
             {0.3, 0.0, 0.0}, {1.1, 0.7, -0.4}, {0.9, -2.0, 1.3}}) {
      CAPTURE(theta);
      const MatC w = kron2(qubit_unitary(theta, a, b), qubit_unitary(b, theta, a));
      CHECK(std::abs(negativity(conjugate(w, rho)).epsilon - base) <= 1e-11);
    }
  }
}

TEST_CASE("transpose side does not matter") {
  for (const MatC& rho : {bell_density(), werner(0.6)}) {
    const HermEigen e1 = herm_eigen(pt_first(rho));
    const HermEigen e2 = herm_eigen(partial_transpose(rho));
    for (int i = 0; i < 4; ++i)
      CHECK(std::abs(e1.values[static_cast<std::size_t>(i)] -
                     e2.values[static_cast<std::size_t>(i)]) <= 1e-12);
  }
}

TEST_CASE("continuity under Hermitian perturbation") {
  const double delta = 1e-8;
  MatC noise = MatC::zero(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      if (i == j) {
        noise.at(i, i) = delta * (i % 2 == 0 ? 1.0 : -1.0);
      } else {
        noise.at(i, j) = delta * cplx(0.6, 0.8);
        noise.at(j, i) = std::conj(noise.at(i, j));
      }
    }
  for (const MatC& rho : {werner(0.5), bell_density(), werner(0.34)}) {
    MatC bumped = rho;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) bumped.at(i, j) += noise.at(i, j);
    CHECK(std::abs(negativity(bumped).epsilon - negativity(rho).epsilon) <= 8.0 * delta);
  }
}

TEST_CASE("rounding dust clamps to exact zero") {
  // Min PT eigenvalue of this mixture is -(3p-1)/4 relative to 1/3.
  const NegativityResult dust = negativity(werner(1.0 / 3.0 + 4e-13));
  CHECK(dust.epsilon == 0.0);
  CHECK(dust.negative_eigs.empty());

  const NegativityResult real = negativity(werner(1.0 / 3.0 + 1e-10));
  CHECK(real.epsilon > 0.0);
  CHECK(real.negative_eigs.size() == 1);
}
