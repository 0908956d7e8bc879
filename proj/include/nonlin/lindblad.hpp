#pragma once

// Density-matrix evolution under a diagonal Hamiltonian omega*g(n) with
// photon loss, the spacing-3 binomial code, photon-number syndrome recovery,
// and recovered-vs-lossless fidelity curves.

#include <vector>

#include "nonlin/generators.hpp"
#include "nonlin/hilbert.hpp"
#include "nonlin/table.hpp"

namespace nonlin {

struct LindbladConfig {
  GeneratorSpec g = GeneratorSpec::kerr();
  double omega = 0.0;     // Hamiltonian prefactor; encoded phase is omega * t_final
  double kappa = 0.0;     // unitless loss rate, >= 0
  double t_final = 1.0;
  int steps = 1000;       // fixed RK4 steps, >= 100
  SpectrumSet space = SpectrumSet::bosonic(30);
};

// rho' = -i [omega g(n), rho] + kappa (a rho a^dag - {a^dag a, rho}/2),
// integrated with classic fixed-step RK4; the state is re-symmetrized every
// step. Throws when the trace drifts beyond 1e-8 (more steps needed).
DensityMatrix evolve(const LindbladConfig& config, const DensityMatrix& rho0);

// Spacing-3, 8-leg binomial code: codewords on Fock labels 0,3,...,24 with
// mean photon number 12.
struct BinomialCode {
  int spacing = 3;
  int legs = 8;
  PureState codeword_minus;
  PureState codeword_plus;
};

BinomialCode build_binomial_code(const SpectrumSet& space);  // cutoff >= 24

// Photon-number-mod-spacing syndrome recovery: sector s is shifted up by
// (spacing - s) % spacing. Phase content is untouched; only number shifts
// are undone, so amplitude-damping distortion survives.
DensityMatrix recover(const DensityMatrix& rho, const BinomialCode& code);

// Step count that keeps the fastest phase omega*(max g - min g) resolved.
int suggested_steps(const GeneratorSpec& g, double omega, double t,
                    const SpectrumSet& space, int floor_steps);

// For each omega: evolve the minus codeword with loss, recover, and compare
// against the lossless encoded state. Columns: phi, z, kappa,
// fidelity_recovered, fidelity_unrecovered, trace_error.
ResultTable recovered_fidelity_curve(const GeneratorSpec& g,
                                     const std::vector<double>& omega_grid,
                                     double kappa, double t,
                                     const BinomialCode& code);

// Split [0, t] into m intervals with a recovery after each; returns the final
// fidelity against the lossless state. More frequent correction caps the
// emergent phase error per loss at V_k(omega * t / m).
double evolve_with_periodic_recovery(const GeneratorSpec& g, double omega,
                                     double kappa, double t, int intervals,
                                     const BinomialCode& code);

}  // namespace nonlin
