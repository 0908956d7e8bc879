#include "nonlin/hilbert.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "nonlin/rng.hpp"

namespace nonlin {

SpectrumSet SpectrumSet::bosonic(int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("bosonic cutoff must be >= 0");
  return SpectrumSet(SpaceKind::Bosonic, cutoff, cutoff + 1, 0);
}

SpectrumSet SpectrumSet::rotor(int halfwidth) {
  if (halfwidth < 0) throw std::invalid_argument("rotor halfwidth must be >= 0");
  return SpectrumSet(SpaceKind::Rotor, halfwidth, 2 * halfwidth + 1, -halfwidth);
}

SpectrumSet SpectrumSet::spin(int n_levels) {
  if (n_levels < 0) throw std::invalid_argument("spin N must be >= 0");
  return SpectrumSet(SpaceKind::Spin, n_levels, n_levels + 1, 0);
}

int SpectrumSet::index_of(int label) const {
  if (!contains(label))
    throw std::out_of_range("label " + std::to_string(label) + " outside " +
                            kind_name() + " label set");
  return label - min_label_;
}

std::string SpectrumSet::kind_name() const {
  switch (kind_) {
    case SpaceKind::Bosonic: return "bosonic";
    case SpaceKind::Rotor: return "rotor";
    case SpaceKind::Spin: return "spin";
  }
  return "?";
}

PureState::PureState(SpectrumSet space, Eigen::VectorXcd amplitudes)
    : space_(space), amps_(std::move(amplitudes)) {
  if (amps_.size() != space_.dim())
    throw std::invalid_argument("amplitude vector length does not match space dim");
  double n2 = amps_.squaredNorm();
  if (!(n2 >= 0.0) || n2 > 1.0 + 1e-12)
    throw std::invalid_argument("squared norm " + std::to_string(n2) +
                                " outside [0, 1 + 1e-12]");
}

PureState PureState::zero(const SpectrumSet& space) {
  return PureState(space, Eigen::VectorXcd::Zero(space.dim()));
}

PureState PureState::basis_state(const SpectrumSet& space, int label) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dim());
  v[space.index_of(label)] = 1.0;
  return PureState(space, std::move(v));
}

PureState PureState::uniform_superposition(const SpectrumSet& space,
                                           std::span<const int> labels) {
  if (labels.empty()) throw std::invalid_argument("empty label list");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dim());
  double w = 1.0 / std::sqrt(static_cast<double>(labels.size()));
  for (int n : labels) v[space.index_of(n)] += w;
  return PureState(space, std::move(v));
}

PureState PureState::coherent(const SpectrumSet& space, Complex alpha) {
  if (space.min_label() < 0)
    throw std::invalid_argument("coherent states need nonnegative labels");
  Eigen::VectorXcd v(space.dim());
  Complex c = std::exp(-0.5 * std::norm(alpha));
  for (int idx = 0; idx < space.dim(); ++idx) {
    int n = space.label(idx);
    if (idx > 0) c *= alpha / std::sqrt(static_cast<double>(n));
    v[idx] = c;
  }
  return PureState(space, std::move(v));
}

DensityMatrix::DensityMatrix(SpectrumSet space, Eigen::MatrixXcd matrix)
    : space_(space), mat_(std::move(matrix)) {
  if (mat_.rows() != space_.dim() || mat_.cols() != space_.dim())
    throw std::invalid_argument("density matrix shape does not match space dim");
  double herm = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (!(herm <= 1e-10))
    throw std::invalid_argument("matrix not Hermitian within 1e-10 (got " +
                                std::to_string(herm) + ")");
  double tr = mat_.trace().real();
  if (!(tr >= -1e-10) || !(tr <= 1.0 + 1e-8))
    throw std::invalid_argument("trace " + std::to_string(tr) +
                                " outside [0, 1 + 1e-8]");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.space(),
                       psi.amplitudes() * psi.amplitudes().adjoint());
}

double DensityMatrix::hermiticity_error() const {
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat_,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

PureState apply_shift(const ShiftError& e, const PureState& psi) {
  const SpectrumSet& sp = psi.space();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(sp.dim());
  for (int idx = 0; idx < sp.dim(); ++idx) {
    int n = sp.label(idx);   // destination label
    int src = n - e.k;       // source label
    if (!sp.contains(src)) continue;
    // Basis-angle phases: e^{+i Phi n} after a down-shift, e^{-i Phi src}
    // before an up-shift.
    double theta = (e.k < 0) ? e.phi_rot * n : -e.phi_rot * src;
    out[idx] = std::polar(1.0, theta) * psi.amplitudes()[sp.index_of(src)];
  }
  return PureState(sp, std::move(out));
}

PureState apply_diagonal(const DiagonalPhaseProfile& d, const PureState& psi) {
  if (!(d.space == psi.space()))
    throw std::invalid_argument("diagonal profile space does not match state space");
  if (d.phases.size() != psi.dim() ||
      (!d.annihilated.empty() &&
       d.annihilated.size() != static_cast<std::size_t>(psi.dim())))
    throw std::invalid_argument("diagonal profile length does not match space dim");
  Eigen::VectorXcd out(psi.dim());
  for (int i = 0; i < psi.dim(); ++i) {
    out[i] = d.supported(i)
                 ? std::polar(1.0, d.phases[i]) * psi.amplitudes()[i]
                 : Complex{0.0, 0.0};
  }
  return PureState(psi.space(), std::move(out));
}

Complex inner(const PureState& a, const PureState& b) {
  if (!(a.space() == b.space()))
    throw std::invalid_argument("inner product across different spaces");
  return a.amplitudes().dot(b.amplitudes());
}

PureState haar_sample(const SpectrumSet& space, std::uint64_t seed) {
  std::mt19937_64 rng = make_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(space.dim());
  for (int i = 0; i < space.dim(); ++i) {
    double re = gauss(rng);
    double im = gauss(rng);
    v[i] = Complex{re, im};
  }
  v /= v.norm();
  return PureState(space, std::move(v));
}

PureState haar_sample_window(const SpectrumSet& space, int lo_label,
                             int hi_label, std::uint64_t seed) {
  if (lo_label > hi_label)
    throw std::invalid_argument("empty Haar window");
  space.index_of(lo_label);
  space.index_of(hi_label);
  PureState inner_state =
      haar_sample(SpectrumSet::bosonic(hi_label - lo_label), seed);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dim());
  for (int j = 0; j <= hi_label - lo_label; ++j)
    v[space.index_of(lo_label + j)] = inner_state.amplitudes()[j];
  return PureState(space, std::move(v));
}

double fidelity_pure_mixed(const PureState& psi, const DensityMatrix& rho) {
  if (!(psi.space() == rho.space()))
    throw std::invalid_argument("state and density matrix live on different spaces");
  Complex val = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
  return val.real();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (!(a.space() == b.space()))
    throw std::invalid_argument("trace distance across different spaces");
  Eigen::MatrixXcd diff = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff,
                                                     Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace nonlin
