#pragma once

// Figures of merit for emergent phase errors: state fidelity, closed-form
// special cases, the Haar-averaged fidelity and its crossover phase, and the
// critical-phase bound that guarantees overlap >= 1 - eps.

#include <complex>
#include <cstdint>
#include <vector>

#include "nonlin/generators.hpp"
#include "nonlin/hilbert.hpp"

namespace nonlin {

// |<psi| V_k(phi) |psi>|^2.  psi must be unit norm.
double emergent_fidelity(const GeneratorSpec& g, int k, double phi,
                         const PureState& psi);

// Families with tabulated closed-form fidelities: (|0> + |N>)/sqrt(2),
// coherent |alpha>, and the |0> + |alpha> cat.
struct ClosedFormState {
  enum class Family { ZeroN, Coherent, Cat };
  Family family;
  int n_label = 0;
  Complex alpha{0.0, 0.0};

  static ClosedFormState zero_n(int n) { return {Family::ZeroN, n, {}}; }
  static ClosedFormState coherent(Complex a) { return {Family::Coherent, 0, a}; }
  static ClosedFormState cat(Complex a) { return {Family::Cat, 0, a}; }
};

// Evaluates the tabulated closed forms verbatim. The coherent-state sums run
// to `cutoff`, which must leave a Poisson tail below 1e-10.
double closed_form_fidelity(const ClosedFormState& state, const GeneratorSpec& g,
                            int k, double phi, int cutoff);

// Haar average of emergent_fidelity over a dim-dimensional space with labels
// 0..dim-1: (d + |T|^2) / (d (d+1)), where T sums one unit phasor per label.
// Integer k uses the trace of the actual emergent-error operator (so the
// Monte-Carlo oracle matches it exactly); real k uses the sign-symmetric
// continuation exp(-i sign(k) phi [g(n+|k|) - g(n)]).
double average_fidelity(const GeneratorSpec& g, double k, double phi, int dim);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

// Sample mean/standard error of emergent_fidelity over Haar states. Sample i
// draws from the (seed, i) stream, so results are independent of threading.
MonteCarloEstimate monte_carlo_average_fidelity(const GeneratorSpec& g, int k,
                                                double phi, const SpectrumSet& space,
                                                std::size_t samples,
                                                std::uint64_t seed);

struct CriticalPhaseReport {
  int k = 0;
  double epsilon = 0.0;
  double bound_phi = 0.0;  // sqrt(eps) / max_delta; +inf when max_delta == 0
  double max_delta = 0.0;  // max_n |g(n+k) - g(n)| over the support window
  bool support_ok = true;
};

// Largest phase for which every supported state keeps overlap >= 1 - eps.
// eps must lie in (0, 0.25]; the window runs over n in [max(-k,0), window_top].
CriticalPhaseReport critical_phase_bound(const GeneratorSpec& g, int k,
                                         double epsilon, int window_top);

struct CrossoverPhase {
  double numeric = 0.0;        // bisection root of avg fidelity = 1 - eps
  double printed_formula = 0.0;  // 2 sqrt(eps) / sum_{n,m} (Delta_n - Delta_m)^2
  double series_formula = 0.0; // sqrt(2 eps d(d+1) / sum_{n,m} (...)^2)
};

// All three crossover estimates; `numeric` is the contract value. Returns
// +inf in each slot when the average fidelity never reaches 1 - eps.
CrossoverPhase crossover_phase(const GeneratorSpec& g, double k, int dim,
                               double epsilon);

// |<Psi|Upsilon>|^2 with Psi = E_k U_g(phi) psi and Upsilon = U_g(phi) E_k psi.
// Requires the support assumption: the shift must not delete amplitude.
double overlap_before_after(const GeneratorSpec& g, int k, double phi,
                            const PureState& psi);

// Per-label phase increments Delta(n) entering the Haar-average trace sum,
// following the same integer/real-k conventions as average_fidelity.
std::vector<double> delta_phase_list(const GeneratorSpec& g, double k, int dim);

}  // namespace nonlin
