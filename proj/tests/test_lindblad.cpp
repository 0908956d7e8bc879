#include <cmath>

#include "doctest.h"
#include "nonlin/lindblad.hpp"
#include "nonlin/verify.hpp"

using namespace nonlin;

TEST_CASE("binomial code construction") {
  SpectrumSet sp = SpectrumSet::bosonic(30);
  BinomialCode code = build_binomial_code(sp);

  double mean_photon = 0.0;
  for (int i = 0; i < sp.dim(); ++i)
    mean_photon += std::norm(code.codeword_minus.amplitudes()[i]) * sp.label(i);
  CHECK(mean_photon == doctest::Approx(12.0).epsilon(1e-10));

  CHECK(std::abs(inner(code.codeword_plus, code.codeword_minus)) <= 1e-12);
  CHECK(code.codeword_minus.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));

  for (int n = 0; n <= 30; ++n) {
    bool on_support = n % 3 == 0 && n <= 24;
    double amp = std::abs(code.codeword_minus.amplitude_at_label(n));
    if (on_support)
      CHECK(amp > 0.0);
    else
      CHECK(amp == 0.0);
  }

  CHECK_THROWS_AS((void)build_binomial_code(SpectrumSet::bosonic(20)),
                  std::invalid_argument);
}

TEST_CASE("lossless evolution matches the encoding unitary") {
  SpectrumSet sp = SpectrumSet::bosonic(10);
  GeneratorSpec kerr = GeneratorSpec::kerr();
  const int labels[] = {0, 3, 7};
  PureState psi = PureState::uniform_superposition(sp, labels);

  LindbladConfig cfg{kerr, 1.0, 0.0, 1.0, 20000, sp};
  DensityMatrix evolved = evolve(cfg, DensityMatrix::from_pure(psi));
  DensityMatrix expected = DensityMatrix::from_pure(
      apply_diagonal(encoding_unitary(kerr, 1.0, sp), psi));
  CHECK(trace_distance(evolved, expected) <= 1e-8);
}

TEST_CASE("single-photon decay law") {
  SpectrumSet sp = SpectrumSet::bosonic(4);
  LindbladConfig cfg{GeneratorSpec::linear(1.0), 0.0, 0.01, 1.0, 1000, sp};
  DensityMatrix rho = evolve(cfg, DensityMatrix::from_pure(
                                      PureState::basis_state(sp, 1)));
  double p0 = rho.matrix()(0, 0).real();
  CHECK(p0 == doctest::Approx(1.0 - std::exp(-0.01)).epsilon(1e-6));
}

TEST_CASE("loss evolution preserves trace, hermiticity, positivity") {
  SpectrumSet sp = SpectrumSet::bosonic(30);
  BinomialCode code = build_binomial_code(sp);
  LindbladConfig cfg{GeneratorSpec::kerr(), 1.0, 0.01, 1.0,
                     suggested_steps(GeneratorSpec::kerr(), 1.0, 1.0, sp, 1000),
                     sp};
  DensityMatrix rho = evolve(cfg, DensityMatrix::from_pure(code.codeword_minus));
  CHECK(std::abs(rho.trace() - 1.0) <= 1e-8);
  CHECK(rho.hermiticity_error() <= 1e-12);
  CHECK(rho.min_eigenvalue() >= -1e-8);
}

TEST_CASE("step halving leaves the final state unchanged") {
  SpectrumSet sp = SpectrumSet::bosonic(30);
  BinomialCode code = build_binomial_code(sp);
  DensityMatrix rho0 = DensityMatrix::from_pure(code.codeword_minus);
  LindbladConfig coarse{GeneratorSpec::kerr(), 0.5, 0.01, 1.0, 25000, sp};
  LindbladConfig fine = coarse;
  fine.steps = 50000;
  CHECK(trace_distance(evolve(coarse, rho0), evolve(fine, rho0)) <= 1e-6);
}

TEST_CASE("config validation") {
  SpectrumSet sp = SpectrumSet::bosonic(5);
  LindbladConfig cfg{GeneratorSpec::kerr(), 1.0, 0.01, 1.0, 50, sp};
  CHECK_THROWS_AS(
      (void)evolve(cfg, DensityMatrix::from_pure(PureState::basis_state(sp, 0))),
      std::invalid_argument);
}

TEST_CASE("unstable step counts are reported, not returned") {
  SpectrumSet sp = SpectrumSet::bosonic(30);
  BinomialCode code = build_binomial_code(sp);
  LindbladConfig cfg{GeneratorSpec::kerr(), 2000.0, 0.01, 1.0, 100, sp};
  CHECK_THROWS_AS(
      (void)evolve(cfg, DensityMatrix::from_pure(code.codeword_minus)),
      std::runtime_error);
}

TEST_CASE("recovery fixes number shifts and nothing else") {
  SpectrumSet sp = SpectrumSet::bosonic(30);
  BinomialCode code = build_binomial_code(sp);

  // Already in the syndrome-0 sector: untouched.
  DensityMatrix rho0 = DensityMatrix::from_pure(code.codeword_minus);
  DensityMatrix same = recover(rho0, code);
  CHECK((same.matrix() - rho0.matrix()).cwiseAbs().maxCoeff() == 0.0);

  // One loss: support returns to multiples of three, trace preserved.
  Eigen::VectorXcd lowered = Eigen::VectorXcd::Zero(sp.dim());
  for (int n = 1; n <= 30; ++n)
    lowered[n - 1] = std::sqrt(static_cast<double>(n)) *
                     code.codeword_minus.amplitudes()[n];
  lowered /= lowered.norm();
  DensityMatrix one_loss = DensityMatrix::from_pure(PureState(sp, lowered));
  DensityMatrix recovered = recover(one_loss, code);
  CHECK(recovered.trace() == doctest::Approx(1.0).epsilon(1e-10));
  for (int n = 0; n <= 30; ++n)
    if (n % 3 != 0)
      CHECK(std::abs(recovered.matrix()(n, n)) <= 1e-14);

  // Mixtures recover linearly.
  Eigen::MatrixXcd mix = 0.6 * rho0.matrix() + 0.4 * one_loss.matrix();
  DensityMatrix mixed_rec = recover(DensityMatrix(sp, mix), code);
  Eigen::MatrixXcd expect =
      0.6 * recover(rho0, code).matrix() + 0.4 * recovered.matrix();
  CHECK((mixed_rec.matrix() - expect).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(mixed_rec.trace() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("no-loss probability anchor") {
  SpectrumSet sp = SpectrumSet::bosonic(30);
  BinomialCode code = build_binomial_code(sp);
  double no_loss = 0.0;
  for (int i = 0; i < sp.dim(); ++i)
    no_loss += std::norm(code.codeword_minus.amplitudes()[i]) *
               std::exp(-0.01 * sp.label(i));
  CHECK(no_loss == doctest::Approx(0.887).epsilon(0.0012));
}

TEST_CASE("recovered fidelity curve endpoints") {
  SpectrumSet sp = SpectrumSet::bosonic(30);
  BinomialCode code = build_binomial_code(sp);

  // kappa = 0: perfect fidelity at every phase.
  ResultTable lossless = recovered_fidelity_curve(GeneratorSpec::kerr(),
                                                  {0.05, 0.4}, 0.0, 1.0, code);
  for (std::size_t r = 0; r < lossless.row_count(); ++r)
    CHECK(lossless.at(r, "fidelity_recovered") ==
          doctest::Approx(1.0).epsilon(1e-8));

  // Linear metrology with loss: high and phi-independent.
  ResultTable lin = recovered_fidelity_curve(GeneratorSpec::power_law(1.0),
                                             {0.1, 1.0, 2.0}, 0.01, 1.0, code);
  double lo = 1.0, hi = 0.0;
  for (std::size_t r = 0; r < lin.row_count(); ++r) {
    double f = lin.at(r, "fidelity_recovered");
    lo = std::min(lo, f);
    hi = std::max(hi, f);
    CHECK(lin.at(r, "trace_error") <= 1e-8);
  }
  CHECK(lo >= 0.985);
  CHECK(hi <= 1.0);
  CHECK(hi - lo <= 0.005);
}

TEST_CASE("more frequent recovery never hurts") {
  SpectrumSet sp = SpectrumSet::bosonic(30);
  BinomialCode code = build_binomial_code(sp);
  double prev = 0.0;
  for (int m : {1, 2, 4, 8}) {
    double f = evolve_with_periodic_recovery(GeneratorSpec::kerr(), 0.5, 0.01,
                                             1.0, m, code);
    CHECK(f >= prev - 1e-6);
    prev = f;
  }
  CHECK(prev > 0.9);  // frequent correction approaches the no-loss limit
}
