#include "nonlin/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nonlin/parallel.hpp"
#include "nonlin/phase.hpp"
#include "nonlin/rng.hpp"

namespace nonlin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

void require_unit_norm(const PureState& psi, const char* who) {
  if (std::abs(psi.norm_sq() - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(who) +
                                " requires a unit-norm state (|norm^2 - 1| <= 1e-9)");
}

// Shift must not delete amplitude (|<Psi|Psi>|^2 = 1 in the bound's terms).
void require_full_support(const PureState& psi, int k, const char* who) {
  PureState shifted = apply_shift(ShiftError{k, 0.0}, psi);
  double deficit = psi.norm_sq() - shifted.norm_sq();
  if (deficit > 1e-10)
    throw std::invalid_argument(std::string(who) +
                                ": support assumption violated; shift by " +
                                std::to_string(k) + " loses squared norm " +
                                std::to_string(deficit));
}

Complex expectation_of_profile(const DiagonalPhaseProfile& v, const PureState& psi) {
  Complex acc{0.0, 0.0};
  for (int i = 0; i < psi.dim(); ++i) {
    double w = std::norm(psi.amplitudes()[i]);
    if (w == 0.0) continue;
    acc += w * unit_phase(v.phases[i]);
  }
  return acc;
}

}  // namespace

double emergent_fidelity(const GeneratorSpec& g, int k, double phi,
                         const PureState& psi) {
  require_unit_norm(psi, "emergent_fidelity");
  DiagonalPhaseProfile v = emergent_error(g, k, phi, psi.space());
  return std::norm(expectation_of_profile(v, psi));
}

double closed_form_fidelity(const ClosedFormState& state, const GeneratorSpec& g,
                            int k, double phi, int cutoff) {
  const long double phi_ld = phi;
  switch (state.family) {
    case ClosedFormState::Family::ZeroN: {
      int n = state.n_label;
      long double arg = phi_ld * (g.eval_ld(static_cast<long double>(n) + k) -
                                  g.eval_ld(n) - g.eval_ld(k));
      return 0.5 * (std::cos(reduce_phase(arg)) + 1.0);
    }
    case ClosedFormState::Family::Coherent:
    case ClosedFormState::Family::Cat: {
      double a2 = std::norm(state.alpha);
      double weight = std::exp(-a2);  // Poisson weight at n = 0
      Complex sum{0.0, 0.0};
      double total_weight = 0.0;
      for (int n = 0; n <= cutoff; ++n) {
        if (n > 0) weight *= a2 / n;
        total_weight += weight;
        long double arg = -phi_ld * (g.eval_ld(static_cast<long double>(n) + k) -
                                     g.eval_ld(n));
        sum += weight * unit_phase(reduce_phase(arg));
      }
      if (1.0 - total_weight > 1e-10)
        throw std::runtime_error("closed_form_fidelity: cutoff leaves Poisson tail " +
                                 std::to_string(1.0 - total_weight));
      if (state.family == ClosedFormState::Family::Coherent) return std::norm(sum);
      Complex extra = unit_phase(reduce_phase(phi_ld * g.eval_ld(k))) *
                      (2.0 * std::exp(-0.5 * a2) + 1.0);
      return 0.25 * std::norm(sum + extra);
    }
  }
  throw std::logic_error("unreachable closed-form family");
}

std::vector<double> delta_phase_list(const GeneratorSpec& g, double k, int dim) {
  std::vector<double> deltas(dim, 0.0);
  if (near_integer(k)) {
    int kk = static_cast<int>(std::llround(k));
    for (int n = 0; n < dim; ++n) {
      if (g.evaluable(n) && g.evaluable(n - kk))
        deltas[n] = g.eval(n) - g.eval(n - kk);
    }
  } else {
    double sign = k >= 0 ? 1.0 : -1.0;
    double akk = std::abs(k);
    for (int n = 0; n < dim; ++n) deltas[n] = sign * (g.eval(n + akk) - g.eval(n));
  }
  return deltas;
}

double average_fidelity(const GeneratorSpec& g, double k, double phi, int dim) {
  if (dim < 2) throw std::invalid_argument("average_fidelity needs dim >= 2");
  Complex trace{0.0, 0.0};
  if (near_integer(k)) {
    // Trace of the operator the Monte-Carlo oracle actually applies.
    DiagonalPhaseProfile v = emergent_error(g, static_cast<int>(std::llround(k)),
                                            phi, SpectrumSet::bosonic(dim - 1));
    for (int i = 0; i < dim; ++i) trace += unit_phase(v.phases[i]);
  } else {
    const long double phi_ld = phi;
    const long double akk = std::abs(static_cast<long double>(k));
    const long double sign = k >= 0 ? 1.0L : -1.0L;
    for (int n = 0; n < dim; ++n) {
      long double arg = -sign * phi_ld *
                        (g.eval_ld(static_cast<long double>(n) + akk) -
                         g.eval_ld(static_cast<long double>(n)));
      trace += unit_phase(reduce_phase(arg));
    }
  }
  double d = dim;
  return (d + std::norm(trace)) / (d * (d + 1.0));
}

MonteCarloEstimate monte_carlo_average_fidelity(const GeneratorSpec& g, int k,
                                                double phi, const SpectrumSet& space,
                                                std::size_t samples,
                                                std::uint64_t seed) {
  if (samples < 1000)
    throw std::invalid_argument("monte_carlo_average_fidelity needs >= 1000 samples");
  DiagonalPhaseProfile v = emergent_error(g, k, phi, space);
  std::vector<double> values(samples);
  parallel_for(samples, [&](std::size_t i) {
    PureState psi = haar_sample(space, splitmix_combine(seed, i));
    values[i] = std::norm(expectation_of_profile(v, psi));
  });
  double mean = 0.0;
  for (double f : values) mean += f;
  mean /= static_cast<double>(samples);
  double ss = 0.0;
  for (double f : values) ss += (f - mean) * (f - mean);
  double std_error =
      samples > 1 ? std::sqrt(ss / (static_cast<double>(samples) *
                                    (static_cast<double>(samples) - 1.0)))
                  : 0.0;
  return MonteCarloEstimate{mean, std_error, samples};
}

CriticalPhaseReport critical_phase_bound(const GeneratorSpec& g, int k,
                                         double epsilon, int window_top) {
  if (!(epsilon > 0.0) || epsilon > 0.25)
    throw std::invalid_argument("epsilon must lie in (0, 0.25]");
  if (window_top < 0) throw std::invalid_argument("window_top must be >= 0");
  int start = std::max(-k, 0);
  double max_delta = 0.0;
  for (int n = start; n <= window_top; ++n) {
    if (!g.evaluable(n) || !g.evaluable(n + k)) continue;
    max_delta = std::max(max_delta, std::abs(g.delta(k, n)));
  }
  double bound = max_delta > 0.0 ? std::sqrt(epsilon) / max_delta : kInf;
  return CriticalPhaseReport{k, epsilon, bound, max_delta, true};
}

CrossoverPhase crossover_phase(const GeneratorSpec& g, double k, int dim,
                               double epsilon) {
  if (dim < 2) throw std::invalid_argument("crossover_phase needs dim >= 2");
  if (!(epsilon > 1.0 / dim) || !(epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (1/dim, 1)");

  std::vector<double> deltas = delta_phase_list(g, k, dim);
  double sum = 0.0, sum_sq = 0.0;
  for (double d : deltas) {
    sum += d;
    sum_sq += d * d;
  }
  double d = dim;
  // sum_{n,m} (delta_n - delta_m)^2 = 2 d sum(delta^2) - 2 (sum delta)^2
  double pair_spread = 2.0 * d * sum_sq - 2.0 * sum * sum;

  CrossoverPhase out;
  out.printed_formula = pair_spread > 0.0 ? 2.0 * std::sqrt(epsilon) / pair_spread : kInf;
  out.series_formula = pair_spread > 0.0
                           ? std::sqrt(2.0 * epsilon * d * (d + 1.0) / pair_spread)
                           : kInf;

  const double target = 1.0 - epsilon;
  double hi = 1e-8;
  double lo = 0.0;
  bool bracketed = false;
  for (int i = 0; i < 200; ++i) {
    if (average_fidelity(g, k, hi, dim) <= target) {
      bracketed = true;
      break;
    }
    lo = hi;
    hi *= 2.0;
  }
  if (!bracketed) {
    out.numeric = kInf;
    return out;
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-10 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    if (average_fidelity(g, k, mid, dim) <= target)
      hi = mid;
    else
      lo = mid;
  }
  out.numeric = 0.5 * (lo + hi);
  return out;
}

double overlap_before_after(const GeneratorSpec& g, int k, double phi,
                            const PureState& psi) {
  require_unit_norm(psi, "overlap_before_after");
  require_full_support(psi, k, "overlap_before_after");
  const SpectrumSet& sp = psi.space();
  DiagonalPhaseProfile u = encoding_unitary(g, phi, sp);
  ShiftError e{k, 0.0};
  PureState error_after = apply_shift(e, apply_diagonal(u, psi));
  PureState error_first = apply_diagonal(u, apply_shift(e, psi));
  return std::norm(inner(error_after, error_first));
}

}  // namespace nonlin
