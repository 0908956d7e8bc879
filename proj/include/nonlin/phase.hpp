#pragma once

#include <cmath>
#include <complex>

namespace nonlin {

inline constexpr long double kTwoPiL = 6.283185307179586476925286766559005768394L;

// Reduce a phase (accumulated in extended precision) to (-pi, pi].
//
// Encoding phases phi*g(n) reach ~1e6 rad for the steep generators in scope;
// a plain double product carries ~1e-10 rad of rounding there, which would
// swamp the 1e-12 commutation-residual budget. Products are therefore formed
// in long double and reduced with remainderl, which is exact for its operands.
inline double reduce_phase(long double raw) {
  return static_cast<double>(std::remainderl(raw, kTwoPiL));
}

inline std::complex<double> unit_phase(double theta) {
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace nonlin
