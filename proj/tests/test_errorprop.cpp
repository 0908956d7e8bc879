#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "doctest.h"
#include "nonlin/errorprop.hpp"
#include "nonlin/rng.hpp"
#include "nonlin/verify.hpp"

using namespace nonlin;

namespace {

// Dense matrix for E_k(Phi); test-side oracle independent of apply_shift.
Eigen::MatrixXcd dense_shift(const SpectrumSet& sp, int k, double big_phi) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(sp.dim(), sp.dim());
  for (int idx = 0; idx < sp.dim(); ++idx) {
    int src = sp.label(idx);
    if (!sp.contains(src + k)) continue;
    double theta = k < 0 ? big_phi * (src + k) : -big_phi * src;
    m(sp.index_of(src + k), idx) = std::polar(1.0, theta);
  }
  return m;
}

Eigen::MatrixXcd dense_diagonal(const DiagonalPhaseProfile& d) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d.space.dim(), d.space.dim());
  for (int i = 0; i < d.space.dim(); ++i)
    if (d.supported(i)) m(i, i) = std::polar(1.0, d.phases[i]);
  return m;
}

}  // namespace

TEST_CASE("pulling a shift through a linear encoding is a global phase") {
  SpectrumSet sp = SpectrumSet::bosonic(12);
  PureState psi = haar_sample(sp, 1);
  for (int k : {-3, -1, 0, 2, 4}) {
    auto res = pull_through(GeneratorSpec::linear(1.3), ShiftError{k, 0.9}, 0.7, psi);
    CHECK(res.residual <= 1e-14);
  }
}

TEST_CASE("no encoding means nothing to pull through") {
  SpectrumSet sp = SpectrumSet::spin(9);
  PureState psi = haar_sample(sp, 2);
  auto res = pull_through(GeneratorSpec::kerr(), ShiftError{2, 1.1}, 0.0, psi);
  CHECK(res.residual <= 1e-14);
  PureState direct = apply_shift(ShiftError{2, 1.1}, psi);
  CHECK((res.lhs.amplitudes() - direct.amplitudes()).norm() <= 1e-14);
}

TEST_CASE("kerr pull-through at D=20 stays within the residual budget") {
  SpectrumSet sp = SpectrumSet::bosonic(20);
  PureState psi = haar_sample(sp, 3);
  auto res = pull_through(GeneratorSpec::kerr(), ShiftError{2, 0.7}, 0.3, psi);
  CHECK(res.residual <= 1e-12);
  CHECK(std::abs(res.lhs.norm_sq() - res.rhs.norm_sq()) <= 1e-12);
}

TEST_CASE("randomized commutation suite (reduced)") {
  CheckResult r = check_commutation_identity(4242, 300);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("emergent error is independent of the basis angle") {
  CheckResult r = check_phi_independence(4242, 30);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("sandwich diagonal k=0 is the identity with full support") {
  SpectrumSet sp = SpectrumSet::rotor(5);
  DiagonalPhaseProfile d = sandwich_diagonal(GeneratorSpec::kerr(), 0, 0.8, sp);
  for (int i = 0; i < sp.dim(); ++i) {
    CHECK(d.supported(i));
    CHECK(d.phases[i] == 0.0);
  }
}

TEST_CASE("sandwich diagonal matches the explicit matrix product") {
  SpectrumSet sp = SpectrumSet::bosonic(5);
  GeneratorSpec g = GeneratorSpec::kerr();
  const int k = -2;
  const double phi = 0.47;

  DiagonalPhaseProfile got = sandwich_diagonal(g, k, phi, sp);

  Eigen::MatrixXcd e = dense_shift(sp, k, 0.33);
  Eigen::MatrixXcd v = dense_diagonal(emergent_error(g, k, phi, sp));
  Eigen::MatrixXcd evd = e.adjoint() * v * e;

  for (int i = 0; i < sp.dim(); ++i) {
    int n = sp.label(i);
    Complex expect = evd(i, i);
    if (n < 2) {
      CHECK(!got.supported(i));
      CHECK(std::abs(expect) < 1e-14);
    } else {
      CHECK(got.supported(i));
      CHECK(std::abs(std::polar(1.0, got.phases[i]) - expect) < 1e-13);
      // Phases are -phi * Delta_k(n) on the support (modulo 2 pi).
      CHECK(std::abs(std::remainder(
                got.phases[i] + phi * (g.eval(n + k) - g.eval(n)),
                2.0 * 3.14159265358979323846)) < 1e-12);
    }
  }
  // Off-diagonal elements vanish: the sandwich really is diagonal.
  Eigen::MatrixXcd off = evd;
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("sandwich support on a spin ensemble stops below the top") {
  SpectrumSet sp = SpectrumSet::spin(3);
  DiagonalPhaseProfile d = sandwich_diagonal(GeneratorSpec::kerr(), 2, 0.3, sp);
  CHECK(d.supported(0));
  CHECK(d.supported(1));
  CHECK(!d.supported(2));
  CHECK(!d.supported(3));
}

TEST_CASE("sandwich support equals the shift round-trip survivors") {
  for (const SpectrumSet& sp :
       {SpectrumSet::bosonic(6), SpectrumSet::rotor(3), SpectrumSet::spin(5)}) {
    for (int k = -5; k <= 5; ++k) {
      DiagonalPhaseProfile d = sandwich_diagonal(GeneratorSpec::kerr(), k, 0.21, sp);
      for (int i = 0; i < sp.dim(); ++i) {
        PureState rt = apply_shift(
            ShiftError{-k, 0.0},
            apply_shift(ShiftError{k, 0.0},
                        PureState::basis_state(sp, sp.label(i))));
        bool survives = rt.norm_sq() > 0.5;
        CHECK(d.supported(i) == survives);
      }
    }
  }
}

TEST_CASE("interleaved errors fold into the emergent error") {
  SpectrumSet sp = SpectrumSet::bosonic(10);
  GeneratorSpec g = GeneratorSpec::kerr();
  PureState psi = haar_sample(sp, 8);
  const double phi = 0.62;

  // theta = 0: the error lands after the full encoding.
  PureState after = interleaved_error(g, 1, phi, 0.0, psi);
  PureState direct =
      apply_shift(ShiftError{1, 0.0}, apply_diagonal(encoding_unitary(g, phi, sp), psi));
  CHECK((after.amplitudes() - direct.amplitudes()).norm() <= 1e-13);

  // theta = phi: the error happened before any encoding.
  PureState before = interleaved_error(g, 1, phi, phi, psi);
  PureState folded = apply_diagonal(
      emergent_error(g, 1, phi, sp),
      apply_shift(ShiftError{1, 0.0}, apply_diagonal(encoding_unitary(g, phi, sp), psi)));
  CHECK((before.amplitudes() - folded.amplitudes()).norm() <= 1e-12);

  // Mid-encoding split agrees with the folded factorization.
  PureState mid = interleaved_error(g, 1, phi, phi / 2.0, psi);
  PureState folded_mid = apply_diagonal(
      emergent_error(g, 1, phi / 2.0, sp),
      apply_shift(ShiftError{1, 0.0}, apply_diagonal(encoding_unitary(g, phi, sp), psi)));
  CHECK((mid.amplitudes() - folded_mid.amplitudes()).norm() <= 1e-12);

  CHECK_THROWS_AS((void)interleaved_error(g, 1, 0.5, 0.6, psi),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)interleaved_error(g, 1, 0.5, -0.1, psi),
                  std::invalid_argument);
}

TEST_CASE("interleaved errors with negative encoded phase") {
  SpectrumSet sp = SpectrumSet::rotor(6);
  GeneratorSpec g = GeneratorSpec::power_law(3.0);
  PureState psi = haar_sample(sp, 12);
  PureState mid = interleaved_error(g, -2, -0.8, -0.3, psi);
  CHECK(mid.norm_sq() <= 1.0 + 1e-12);
  CHECK_THROWS_AS((void)interleaved_error(g, -2, -0.8, 0.3, psi),
                  std::invalid_argument);
}
