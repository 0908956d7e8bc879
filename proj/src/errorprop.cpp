#include "nonlin/errorprop.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nonlin/phase.hpp"

namespace nonlin {

PullThroughResult pull_through(const GeneratorSpec& g, const ShiftError& e,
                               double phi, const PureState& psi) {
  const SpectrumSet& sp = psi.space();
  DiagonalPhaseProfile u = encoding_unitary(g, phi, sp);
  DiagonalPhaseProfile v = emergent_error(g, e.k, phi, sp);

  PureState lhs = apply_diagonal(u, apply_shift(e, psi));
  PureState rhs = apply_diagonal(v, apply_shift(e, apply_diagonal(u, psi)));
  double residual = (lhs.amplitudes() - rhs.amplitudes()).norm();
  return PullThroughResult{std::move(lhs), std::move(rhs), residual};
}

DiagonalPhaseProfile sandwich_diagonal(const GeneratorSpec& g, int k, double phi,
                                       const SpectrumSet& space) {
  Eigen::VectorXd phases = Eigen::VectorXd::Zero(space.dim());
  std::vector<std::uint8_t> annihilated(space.dim(), 1);
  const long double phi_ld = phi;
  for (int idx = 0; idx < space.dim(); ++idx) {
    int n = space.label(idx);
    if (!space.contains(n + k)) continue;  // shifted out: annihilated
    annihilated[idx] = 0;
    phases[idx] = reduce_phase(
        -phi_ld * (g.eval_ld(static_cast<long double>(n) + k) -
                   g.eval_ld(static_cast<long double>(n))));
  }
  return DiagonalPhaseProfile{space, std::move(phases), std::move(annihilated)};
}

PureState interleaved_error(const GeneratorSpec& g, int k, double phi,
                            double theta, const PureState& psi) {
  bool sign_ok = theta == 0.0 || (theta > 0) == (phi > 0);
  if (std::abs(theta) > std::abs(phi) || !sign_ok)
    throw std::invalid_argument("theta must satisfy 0 <= |theta| <= |phi| with matching sign");

  const SpectrumSet& sp = psi.space();
  ShiftError e{k, 0.0};
  PureState split = apply_diagonal(
      encoding_unitary(g, theta, sp),
      apply_shift(e, apply_diagonal(encoding_unitary(g, phi - theta, sp), psi)));
  PureState folded = apply_diagonal(
      emergent_error(g, k, theta, sp),
      apply_shift(e, apply_diagonal(encoding_unitary(g, phi, sp), psi)));

  double residual = (split.amplitudes() - folded.amplitudes()).norm();
  if (residual > 1e-12)
    throw std::runtime_error("interleaved-error factorizations disagree: residual " +
                             std::to_string(residual));
  return split;
}

}  // namespace nonlin
