#pragma once

// Truncated Hilbert spaces with integer-labeled bases, pure states, density
// matrices, and the shift/rotation error operators. Shifts off the edge of a
// bounded label set delete amplitude (null-vector convention), so states are
// allowed to be sub-normalized; nothing here renormalizes implicitly.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nonlin {

using Complex = std::complex<double>;

enum class SpaceKind { Bosonic, Rotor, Spin };

// Label set of a truncated space: Bosonic 0..D, Rotor -M..M, Spin 0..N.
class SpectrumSet {
 public:
  static SpectrumSet bosonic(int cutoff);
  static SpectrumSet rotor(int halfwidth);
  static SpectrumSet spin(int n_levels);

  SpaceKind kind() const { return kind_; }
  int parameter() const { return param_; }  // D, M, or N
  int dim() const { return dim_; }
  int min_label() const { return min_label_; }
  int max_label() const { return min_label_ + dim_ - 1; }
  int label(int index) const { return min_label_ + index; }
  bool contains(int label) const {
    return label >= min_label_ && label <= max_label();
  }
  int index_of(int label) const;  // throws std::out_of_range
  std::string kind_name() const;

  bool operator==(const SpectrumSet&) const = default;

 private:
  SpectrumSet(SpaceKind kind, int param, int dim, int min_label)
      : kind_(kind), param_(param), dim_(dim), min_label_(min_label) {}
  SpaceKind kind_;
  int param_;
  int dim_;
  int min_label_;
};

// Complex amplitude vector over a SpectrumSet. Squared norm must stay in
// [0, 1 + 1e-12]; values below 1 are legal (amplitude lost to shifts).
class PureState {
 public:
  PureState(SpectrumSet space, Eigen::VectorXcd amplitudes);

  const SpectrumSet& space() const { return space_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  int dim() const { return space_.dim(); }
  double norm_sq() const { return amps_.squaredNorm(); }
  Complex amplitude_at_label(int label) const {
    return amps_[space_.index_of(label)];
  }

  static PureState zero(const SpectrumSet& space);
  static PureState basis_state(const SpectrumSet& space, int label);
  // Equal-weight superposition of the given labels, normalized.
  static PureState uniform_superposition(const SpectrumSet& space,
                                         std::span<const int> labels);
  // Truncated coherent state; sub-normalized by the Poisson tail beyond the
  // cutoff. Only meaningful on nonnegative-label spaces.
  static PureState coherent(const SpectrumSet& space, Complex alpha);

 private:
  SpectrumSet space_;
  Eigen::VectorXcd amps_;
};

// Hermitian (within 1e-10), trace in [0, 1 + 1e-8]. Positivity is checked on
// demand (min_eigenvalue) rather than at every construction.
class DensityMatrix {
 public:
  DensityMatrix(SpectrumSet space, Eigen::MatrixXcd matrix);

  static DensityMatrix from_pure(const PureState& psi);

  const SpectrumSet& space() const { return space_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  int dim() const { return space_.dim(); }
  double trace() const { return mat_.trace().real(); }
  double hermiticity_error() const;
  double min_eigenvalue() const;

 private:
  SpectrumSet space_;
  Eigen::MatrixXcd mat_;
};

// Error-basis element E_k(Phi): e^{i Phi n} Sigma^-_{|k|} for k < 0 and
// Sigma^+_{|k|} e^{-i Phi n} for k >= 0. Shifts past the label set delete
// amplitude, so the operator is non-unitary on bounded spectra.
struct ShiftError {
  int k = 0;
  double phi_rot = 0.0;
};

// Diagonal unitary exp(i * phases[n]) over a space's labels. Entries flagged
// in `annihilated` act as 0 instead (partial isometries such as the
// shift-sandwich diagonal need this); an empty mask means full support.
struct DiagonalPhaseProfile {
  SpectrumSet space;
  Eigen::VectorXd phases;
  std::vector<std::uint8_t> annihilated;  // empty => all labels supported

  bool supported(int index) const {
    return annihilated.empty() || annihilated[index] == 0;
  }
};

// Amplitude at label n moves to n + k, picking up the Phi rotation of the
// error basis; amplitudes shifted outside the label set are deleted.
PureState apply_shift(const ShiftError& e, const PureState& psi);

// Amplitude-wise multiplication by exp(i * phases). Throws on space mismatch.
PureState apply_diagonal(const DiagonalPhaseProfile& d, const PureState& psi);

// Conjugate-linear in the first argument.
Complex inner(const PureState& a, const PureState& b);

// Unit-norm state from the unitarily invariant measure; deterministic in seed.
PureState haar_sample(const SpectrumSet& space, std::uint64_t seed);

// Haar state confined to the labels [lo_label, hi_label]; amplitudes outside
// the window are exactly zero (used to honor shift support assumptions).
PureState haar_sample_window(const SpectrumSet& space, int lo_label,
                             int hi_label, std::uint64_t seed);

// <psi| rho |psi>; equals the Uhlmann fidelity when one side is pure.
double fidelity_pure_mixed(const PureState& psi, const DensityMatrix& rho);

// (1/2) * sum |eig(a - b)|.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace nonlin
