#pragma once

// Propagation of shift errors through the encoding unitary: the commutation
// identity U_g(phi) E_k(Phi) = V_k(phi) E_k(Phi) U_g(phi), the sandwich
// diagonal E_k^dag V_k E_k, and interleaved (mid-encoding) errors.

#include "nonlin/generators.hpp"
#include "nonlin/hilbert.hpp"

namespace nonlin {

struct PullThroughResult {
  PureState lhs;       // U_g(phi) E_k(Phi) |psi>
  PureState rhs;       // V_k(phi) E_k(Phi) U_g(phi) |psi>
  double residual;     // ||lhs - rhs||
};

PullThroughResult pull_through(const GeneratorSpec& g, const ShiftError& e,
                               double phi, const PureState& psi);

// Diagonal of E_k^dag V_k(phi) E_k: phases -phi * Delta_k(n) on the labels
// that survive shifting by k and back; everything else annihilated.
DiagonalPhaseProfile sandwich_diagonal(const GeneratorSpec& g, int k, double phi,
                                       const SpectrumSet& space);

// U_g(theta) E_k U_g(phi - theta) |psi> for an error striking mid-encoding;
// theta is the phase remaining after the error. Verified internally against
// V_k(theta) E_k U_g(phi) |psi> to 1e-12.
PureState interleaved_error(const GeneratorSpec& g, int k, double phi,
                            double theta, const PureState& psi);

}  // namespace nonlin
