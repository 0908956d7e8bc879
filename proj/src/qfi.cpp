#include "nonlin/qfi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nonlin/metrics.hpp"

namespace nonlin {

namespace {

void require_unit_norm(const PureState& psi, const char* who) {
  if (std::abs(psi.norm_sq() - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(who) + " requires a unit-norm state");
}

void require_full_support(const PureState& psi, int k, const char* who) {
  PureState shifted = apply_shift(ShiftError{k, 0.0}, psi);
  double deficit = psi.norm_sq() - shifted.norm_sq();
  if (deficit > 1e-10)
    throw std::invalid_argument(std::string(who) +
                                ": support assumption violated; shift by " +
                                std::to_string(k) + " loses squared norm " +
                                std::to_string(deficit));
}

// Two-pass variance of a label function over |psi|^2; exact zeros skipped so
// window-embedded states never touch labels outside their support.
template <class F>
double weighted_variance(const PureState& psi, F&& value_at_label) {
  double mean = 0.0;
  for (int i = 0; i < psi.dim(); ++i) {
    double w = std::norm(psi.amplitudes()[i]);
    if (w == 0.0) continue;
    mean += w * value_at_label(psi.space().label(i));
  }
  double var = 0.0;
  for (int i = 0; i < psi.dim(); ++i) {
    double w = std::norm(psi.amplitudes()[i]);
    if (w == 0.0) continue;
    double dev = value_at_label(psi.space().label(i)) - mean;
    var += w * dev * dev;
  }
  return var;
}

}  // namespace

double qfi_pure(const GeneratorSpec& g, const PureState& psi) {
  require_unit_norm(psi, "qfi_pure");
  return 4.0 * weighted_variance(psi, [&](int n) { return g.eval(n); });
}

double qcrb(double qfi, long trials) {
  if (qfi < 0.0) throw std::invalid_argument("qfi must be nonnegative");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (qfi == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(static_cast<double>(trials) * qfi);
}

double qfi_heralded(const GeneratorSpec& g, int k, const PureState& psi) {
  require_unit_norm(psi, "qfi_heralded");
  require_full_support(psi, k, "qfi_heralded");
  return 4.0 * weighted_variance(psi, [&](int n) { return g.eval(n + k); });
}

NuisanceQfi qfi_nuisance(const GeneratorSpec& g, int k, const PureState& psi) {
  require_unit_norm(psi, "qfi_nuisance");
  require_full_support(psi, k, "qfi_nuisance");

  auto a_val = [&](int n) { return g.eval(n); };
  auto b_val = [&](int n) { return g.eval(n + k) - g.eval(n); };

  double mean_a = 0.0, mean_b = 0.0;
  for (int i = 0; i < psi.dim(); ++i) {
    double w = std::norm(psi.amplitudes()[i]);
    if (w == 0.0) continue;
    int n = psi.space().label(i);
    mean_a += w * a_val(n);
    mean_b += w * b_val(n);
  }
  double var_a = 0.0, var_b = 0.0, cov = 0.0;
  for (int i = 0; i < psi.dim(); ++i) {
    double w = std::norm(psi.amplitudes()[i]);
    if (w == 0.0) continue;
    int n = psi.space().label(i);
    double da = a_val(n) - mean_a;
    double db = b_val(n) - mean_b;
    var_a += w * da * da;
    var_b += w * db * db;
    cov += w * da * db;
  }

  NuisanceQfi out;
  out.matrix.i_phiphi = 4.0 * var_a;
  out.matrix.i_thetatheta = 4.0 * var_b;
  out.matrix.i_phitheta = 4.0 * cov;
  if (out.matrix.i_thetatheta > 1e-12 * out.matrix.i_phiphi &&
      out.matrix.i_thetatheta > 0.0) {
    double eff = out.matrix.i_phiphi -
                 out.matrix.i_phitheta * out.matrix.i_phitheta /
                     out.matrix.i_thetatheta;
    out.effective = std::max(0.0, eff);  // Cauchy-Schwarz roundoff guard
  } else {
    // Singular nuisance direction carries no information (e.g. linear g).
    out.effective = out.matrix.i_phiphi;
  }

  // Two-point-support probes also have the SM closed form; report it.
  int support_count = 0;
  int label_m = 0, label_n = 0;
  for (int i = 0; i < psi.dim(); ++i) {
    if (std::norm(psi.amplitudes()[i]) > 1e-12) {
      if (support_count == 0) label_m = psi.space().label(i);
      label_n = psi.space().label(i);
      ++support_count;
    }
  }
  if (support_count == 2) {
    double gm = g.eval(label_m), gn = g.eval(label_n);
    double gmk = g.eval(label_m + k), gnk = g.eval(label_n + k);
    double denom = (gnk - gmk) * (gnk - gmk);
    if (denom > 0.0) {
      double num = (gn - gm) * (gn - gm) * (gn - gm);
      out.printed_closed_form = num / denom * (gn - 2.0 * gnk - gm + 2.0 * gmk);
    }
  }
  return out;
}

std::vector<QfiDifferencePoint> qfi_difference_scaling(
    const GeneratorSpec& g, int k, const PureState& psi,
    const std::vector<double>& epsilons) {
  require_unit_norm(psi, "qfi_difference_scaling");
  require_full_support(psi, k, "qfi_difference_scaling");

  const SpectrumSet& sp = psi.space();
  const double baseline = qfi_pure(g, psi);
  const ShiftError e{k, 0.0};

  // Error-after family Psi(x) = E_k U_g(x) psi; its derivative carries the
  // usable phase information in the perturbative expansion.
  auto error_after = [&](double x) {
    return apply_shift(e, apply_diagonal(encoding_unitary(g, x, sp), psi));
  };

  std::vector<QfiDifferencePoint> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) {
    CriticalPhaseReport rep = critical_phase_bound(g, k, eps, sp.max_label());
    double phi = rep.bound_phi;
    if (!std::isfinite(phi)) {
      // Flat generator over the window: the emergent error is the identity.
      out.push_back(QfiDifferencePoint{eps, phi, 0.0});
      continue;
    }
    PureState big_psi = error_after(phi);
    PureState upsilon =
        apply_diagonal(encoding_unitary(g, phi, sp), apply_shift(e, psi));

    double eps_state = 1.0 - std::norm(inner(big_psi, upsilon));
    eps_state = std::max(0.0, eps_state);

    double h = 1e-6 * std::abs(phi);
    PureState plus = error_after(phi + h);
    PureState minus = error_after(phi - h);
    Eigen::VectorXcd dpsi =
        (plus.amplitudes() - minus.amplitudes()) / (2.0 * h);

    double kinetic = dpsi.squaredNorm();
    Complex overlap = upsilon.amplitudes().dot(dpsi);
    double qfi_upsilon =
        4.0 * (1.0 - eps_state) * (kinetic - std::norm(overlap));
    out.push_back(QfiDifferencePoint{eps, phi, std::abs(baseline - qfi_upsilon)});
  }
  return out;
}

double fitted_loglog_slope(const std::vector<QfiDifferencePoint>& points) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double n = 0.0;
  for (const auto& p : points) {
    if (!(p.delta_qfi > 0.0) || !(p.epsilon > 0.0)) continue;
    double x = std::log(p.epsilon);
    double y = std::log(p.delta_qfi);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1.0;
  }
  if (n < 2.0) throw std::invalid_argument("need >= 2 positive points for a slope");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace nonlin
