#include <cmath>
#include <complex>

#include "doctest.h"
#include "nonlin/metrics.hpp"
#include "nonlin/verify.hpp"

using namespace nonlin;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("emergent fidelity trivial points") {
  SpectrumSet sp = SpectrumSet::bosonic(6);
  PureState psi = haar_sample(sp, 5);
  CHECK(emergent_fidelity(GeneratorSpec::kerr(), 0, 0.8, psi) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(emergent_fidelity(GeneratorSpec::power_law(3.0), 2, 0.0, psi) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("emergent fidelity of the 0-2 probe is cos^2(2 phi)") {
  SpectrumSet sp = SpectrumSet::bosonic(4);
  const int labels[] = {0, 2};
  PureState psi = PureState::uniform_superposition(sp, labels);
  CHECK(emergent_fidelity(GeneratorSpec::kerr(), 1, kPi / 4.0, psi) <= 1e-24);
  for (double phi : {0.05, 0.3, 1.1}) {
    double expect = std::cos(2.0 * phi) * std::cos(2.0 * phi);
    CHECK(emergent_fidelity(GeneratorSpec::kerr(), 1, phi, psi) ==
          doctest::Approx(expect).epsilon(1e-12));
  }

  Eigen::VectorXcd half = Eigen::VectorXcd::Zero(5);
  half[0] = 0.5;
  CHECK_THROWS_AS(
      (void)emergent_fidelity(GeneratorSpec::kerr(), 1, 0.1, PureState(sp, half)),
      std::invalid_argument);
}

TEST_CASE("closed-form fidelities") {
  GeneratorSpec kerr = GeneratorSpec::kerr();
  CHECK(closed_form_fidelity(ClosedFormState::zero_n(4), kerr, 1, 0.0, 40) ==
        doctest::Approx(1.0));
  // (|0> + |4>)/sqrt(2), k=1, phi=0.2: argument 0.2 * (25 - 16 - 1) = 1.6.
  CHECK(closed_form_fidelity(ClosedFormState::zero_n(4), kerr, 1, 0.2, 40) ==
        doctest::Approx(0.5 * (std::cos(1.6) + 1.0)).epsilon(1e-12));
  CHECK(closed_form_fidelity(ClosedFormState::coherent({1.5, 0.0}), kerr, 0, 0.7,
                             60) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS((void)closed_form_fidelity(ClosedFormState::coherent({3.0, 0.0}),
                                             kerr, 1, 0.1, 5),
                  std::runtime_error);

  // The cat expression is evaluated verbatim (its normalization is dropped in
  // the source table): at k=0 it reduces to (1 + e^{-|a|^2/2})^2.
  double a2 = 4.0;
  double expect = std::pow(1.0 + std::exp(-0.5 * a2), 2.0);
  CHECK(closed_form_fidelity(ClosedFormState::cat({2.0, 0.0}), kerr, 0, 0.3, 80) ==
        doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("coherent closed form matches the dense sandwich expectation") {
  // The tabulated coherent-state expression is the before/after overlap:
  // |<psi| E^dag V E |psi>|^2 with Delta_k(n) = g(n+k) - g(n).
  GeneratorSpec kerr = GeneratorSpec::kerr();
  const Complex alpha{2.0, 0.0};
  const int k = 1;
  const double phi = 0.05;
  SpectrumSet sp = SpectrumSet::bosonic(60);
  PureState psi = PureState::coherent(sp, alpha);

  double closed = closed_form_fidelity(ClosedFormState::coherent(alpha), kerr, k,
                                       phi, 59);
  Complex acc{0.0, 0.0};
  for (int n = 0; n < 60; ++n) {
    double w = std::norm(psi.amplitudes()[n]);
    acc += w * std::polar(1.0, -phi * (kerr.eval(n + k) - kerr.eval(n)));
  }
  CHECK(closed == doctest::Approx(std::norm(acc)).epsilon(1e-8));
}

TEST_CASE("haar average exact points and range") {
  CHECK(average_fidelity(GeneratorSpec::kerr(), 1.0, 0.0, 24) ==
        doctest::Approx(1.0).epsilon(1e-14));
  for (double k : {-2.5, -1.0, 0.5, 3.0})
    CHECK(average_fidelity(GeneratorSpec::linear(1.7), k, 0.7, 33) ==
          doctest::Approx(1.0).epsilon(1e-13));

  for (int i = 0; i < 40; ++i) {
    double k = -4.0 + 0.21 * i;
    double phi = 0.02 * (i + 1);
    double f = average_fidelity(GeneratorSpec::power_law(2.5), k, phi, 21);
    CHECK(f >= 1.0 / 22.0 - 1e-12);
    CHECK(f <= 1.0 + 1e-12);
  }
}

TEST_CASE("kerr haar average agrees with the geometric sum") {
  const int dim = 201;
  const double phi = kPi / 2000.0;
  double f = average_fidelity(GeneratorSpec::kerr(), 1.0, phi, dim);
  CHECK(f == doctest::Approx(0.9675).epsilon(0.011));
  // Exact |T|^2 = sin^2(d phi) / sin^2(phi) for k = 1.
  double t2 = std::pow(std::sin(dim * phi) / std::sin(phi), 2.0);
  double expect = (dim + t2) / (dim * (dim + 1.0));
  CHECK(f == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("monte carlo matches the analytic haar average") {
  SpectrumSet sp = SpectrumSet::bosonic(15);
  MonteCarloEstimate trivial =
      monte_carlo_average_fidelity(GeneratorSpec::kerr(), 0, 0.4, sp, 1000, 7);
  CHECK(trivial.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trivial.std_error <= 1e-12);

  MonteCarloEstimate quiet =
      monte_carlo_average_fidelity(GeneratorSpec::power_law(3.0), 2, 0.0, sp, 1000, 7);
  CHECK(quiet.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(quiet.std_error <= 1e-12);

  MonteCarloEstimate mc =
      monte_carlo_average_fidelity(GeneratorSpec::kerr(), 1, 0.05, sp, 20000, 7);
  double analytic = average_fidelity(GeneratorSpec::kerr(), 1.0, 0.05, 16);
  CHECK(std::abs(mc.mean - analytic) <= 3.0 * mc.std_error);

  CHECK_THROWS_AS((void)monte_carlo_average_fidelity(GeneratorSpec::kerr(), 1, 0.05,
                                                     sp, 10, 7),
                  std::invalid_argument);
}

TEST_CASE("monte carlo haar average on a rotor space") {
  // The corrected Haar formula (d + |tr V|^2) / (d (d+1)) holds on any label
  // set; compare against the trace over the rotor labels.
  SpectrumSet sp = SpectrumSet::rotor(7);
  GeneratorSpec g = GeneratorSpec::power_law(3.0);
  DiagonalPhaseProfile v = emergent_error(g, 1, 0.03, sp);
  Complex tr{0.0, 0.0};
  for (int i = 0; i < sp.dim(); ++i) tr += std::polar(1.0, v.phases[i]);
  double d = sp.dim();
  double analytic = (d + std::norm(tr)) / (d * (d + 1.0));
  MonteCarloEstimate mc = monte_carlo_average_fidelity(g, 1, 0.03, sp, 20000, 3);
  CHECK(std::abs(mc.mean - analytic) <= 3.0 * mc.std_error);
}

TEST_CASE("critical phase bound") {
  CriticalPhaseReport rep =
      critical_phase_bound(GeneratorSpec::kerr(), 1, 0.01, 100);
  CHECK(rep.max_delta == doctest::Approx(201.0));
  CHECK(rep.bound_phi == doctest::Approx(0.1 / 201.0).epsilon(1e-12));

  // Linear generators have a D-independent bound sqrt(eps) / (s |k|).
  CriticalPhaseReport lin =
      critical_phase_bound(GeneratorSpec::linear(2.0), 3, 0.04, 100);
  CHECK(lin.bound_phi == doctest::Approx(0.2 / 6.0).epsilon(1e-12));
  CriticalPhaseReport lin2 =
      critical_phase_bound(GeneratorSpec::linear(2.0), 3, 0.04, 17);
  CHECK(lin2.bound_phi == doctest::Approx(lin.bound_phi));

  // A window inside one plateau tolerates the shift outright.
  CriticalPhaseReport flat =
      critical_phase_bound(GeneratorSpec::plateau(8, 2), 2, 0.01, 5);
  CHECK(flat.max_delta == 0.0);
  CHECK(std::isinf(flat.bound_phi));

  CHECK_THROWS_AS((void)critical_phase_bound(GeneratorSpec::kerr(), 1, 0.5, 100),
                  std::invalid_argument);
}

TEST_CASE("crossover phase") {
  CrossoverPhase lin = crossover_phase(GeneratorSpec::linear(1.0), 2.0, 101, 0.1);
  CHECK(std::isinf(lin.numeric));

  CrossoverPhase cp = crossover_phase(GeneratorSpec::kerr(), 1.0, 201, 0.1);
  double f_at_root = average_fidelity(GeneratorSpec::kerr(), 1.0, cp.numeric, 201);
  CHECK(f_at_root == doctest::Approx(0.9).epsilon(1e-9));

  CrossoverPhase small = crossover_phase(GeneratorSpec::kerr(), 1.0, 201, 0.01);
  CHECK(std::abs(small.numeric - small.series_formula) / small.numeric <= 0.05);

  CHECK_THROWS_AS((void)crossover_phase(GeneratorSpec::kerr(), 1.0, 201, 0.001),
                  std::invalid_argument);
}

TEST_CASE("before/after overlap") {
  SpectrumSet sp = SpectrumSet::bosonic(8);
  const int labels[] = {1, 3};
  PureState psi = PureState::uniform_superposition(sp, labels);

  CHECK(overlap_before_after(GeneratorSpec::linear(1.0), 1, 0.8, psi) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(overlap_before_after(GeneratorSpec::kerr(), 1, 0.0, psi) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Equals the emergent fidelity evaluated on the post-encoding shifted state.
  double phi = 0.1;
  PureState shifted = apply_shift(
      ShiftError{1, 0.0},
      apply_diagonal(encoding_unitary(GeneratorSpec::kerr(), phi, sp), psi));
  double via_overlap = overlap_before_after(GeneratorSpec::kerr(), 1, phi, psi);
  double via_fidelity = emergent_fidelity(GeneratorSpec::kerr(), 1, phi, shifted);
  CHECK(std::abs(via_overlap - via_fidelity) <= 1e-12);

  // Amplitude at the ground label violates the support assumption for k < 0.
  const int bad_labels[] = {0, 3};
  PureState bad = PureState::uniform_superposition(sp, bad_labels);
  CHECK_THROWS_WITH_AS((void)overlap_before_after(GeneratorSpec::kerr(), -1, 0.1, bad),
                       doctest::Contains("support assumption"),
                       std::invalid_argument);
}

TEST_CASE("critical-phase guarantee on haar states (reduced)") {
  CheckResult r = check_critical_phase_guarantee(4242, 12);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("monte-carlo oracle equivalence (reduced)") {
  CheckResult r = check_haar_average_mc(4242, 5, 20000);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("kerr closed-form asymptote") {
  CheckResult r = check_kerr_closed_form();
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("transition heatmap reference points (reduced)") {
  CheckResult r = check_fig2_heatmap(false);
  INFO(r.detail);
  CHECK(r.pass);
}
