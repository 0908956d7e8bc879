#pragma once

// Quantum Fisher information for pure states under diagonal generators:
// plain and heralded-shift QFI, the quantum Cramer-Rao bound, the
// nuisance-parameter QFI matrix with its Schur-complement effective value,
// and the perturbative QFI-difference scaling check.

#include <optional>
#include <vector>

#include "nonlin/generators.hpp"
#include "nonlin/hilbert.hpp"

namespace nonlin {

// 4 * var_psi(g(n)).  psi must be unit norm.
double qfi_pure(const GeneratorSpec& g, const PureState& psi);

// Standard-deviation lower bound 1 / sqrt(trials * qfi); +inf when qfi == 0.
double qcrb(double qfi, long trials);

// 4 * var_psi(g(n + k)): the QFI once the shift k is heralded. Requires the
// support assumption (the shift must not delete amplitude).
double qfi_heralded(const GeneratorSpec& g, int k, const PureState& psi);

struct QfiMatrix {
  double i_phiphi = 0.0;
  double i_phitheta = 0.0;
  double i_thetatheta = 0.0;
};

struct NuisanceQfi {
  QfiMatrix matrix;
  // Schur complement I_pp - I_pt^2 / I_tt; falls back to I_pp when the
  // nuisance direction is singular (var B ~ 0, e.g. linear generators).
  double effective = 0.0;
  // SM closed form for two-point-support probes, reported for comparison
  // only; the covariance formulas above are the contract.
  std::optional<double> printed_closed_form;
};

// QFI matrix for (phi, theta) with A = g(n), B = g(n+k) - g(n) in psi.
NuisanceQfi qfi_nuisance(const GeneratorSpec& g, int k, const PureState& psi);

struct QfiDifferencePoint {
  double epsilon = 0.0;
  double phi = 0.0;        // critical-phase bound for this epsilon
  double delta_qfi = 0.0;  // |qfi_pure - perturbative error-first QFI|
};

// For each epsilon: set phi to the critical-phase bound and evaluate the
// perturbative QFI of the error-first state (central differences, 1e-6
// relative step; the orthogonal component is assumed to carry no phase
// information). The sequence is expected to decay like O(sqrt(eps))..O(eps).
std::vector<QfiDifferencePoint> qfi_difference_scaling(
    const GeneratorSpec& g, int k, const PureState& psi,
    const std::vector<double>& epsilons);

// Least-squares slope of log(delta_qfi) against log(epsilon).
double fitted_loglog_slope(const std::vector<QfiDifferencePoint>& points);

}  // namespace nonlin
