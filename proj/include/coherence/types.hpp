#pragma once

#include <Eigen/Dense>

#include <complex>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace coh {

template <typename Real> using Complex = std::complex<Real>;

template <typename Real>
using Vector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using Matrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Shared numeric tolerances. All of them are artifact-level choices; the
/// dimensions of interest are small (<= 16) so they are uniformly tight.
namespace tol {
inline constexpr double norm = 1e-12;           // |<psi|psi> - 1|
inline constexpr double hermitian = 1e-12;      // entrywise |M - M^dag|
inline constexpr double psd = 1e-10;            // eigenvalues >= -psd
inline constexpr double trace = 1e-12;          // |tr(rho) - 1|
inline constexpr double weight_sum = 1e-10;     // ensemble weights
inline constexpr double weight_drop = 1e-14;    // discard members below this
inline constexpr double reconstruction = 1e-8;  // Frobenius, ensemble vs rho
inline constexpr double rank = 1e-12;           // eigenvalue rank threshold
inline constexpr double mixer_orthonormal = 1e-10;
}  // namespace tol

namespace detail {

template <typename Real>
Real max_abs_entry(const Matrix<Real>& m) {
  return m.cwiseAbs().maxCoeff();
}

inline std::string format_tolerance_failure(const char* what, double value) {
  std::ostringstream oss;
  oss << what << " (deviation " << value << ")";
  return oss.str();
}

}  // namespace detail

/// Normalized amplitude vector in the fixed reference basis. Coherence is
/// always measured with respect to this (computational) basis; indices are
/// 0-based in storage.
template <typename Real = double>
class PureState {
 public:
  explicit PureState(Vector<Real> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() < 1) throw std::invalid_argument("PureState: dim must be >= 1");
    const Real dev = std::abs(amps_.squaredNorm() - Real(1));
    if (dev > Real(tol::norm))
      throw std::invalid_argument(
          detail::format_tolerance_failure("PureState: amplitudes not normalized", double(dev)));
  }

  /// Builds a state from a raw vector, scaling it to unit norm.
  static PureState normalized(const Vector<Real>& raw) {
    const Real n = raw.norm();
    if (n < Real(tol::norm)) throw std::invalid_argument("PureState: vector norm below 1e-12");
    return PureState(Vector<Real>(raw / n));
  }

  Eigen::Index dim() const { return amps_.size(); }
  const Vector<Real>& amplitudes() const { return amps_; }

  Matrix<Real> projector() const { return amps_ * amps_.adjoint(); }

 private:
  Vector<Real> amps_;
};

/// Pure state of a bipartite system, stored as the coefficient matrix c_ij
/// over the product basis |i>_A (x) |j>_B.
template <typename Real = double>
class BipartitePureState {
 public:
  explicit BipartitePureState(Matrix<Real> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.rows() < 1 || coeffs_.cols() < 1)
      throw std::invalid_argument("BipartitePureState: dims must be >= 1");
    const Real dev = std::abs(coeffs_.squaredNorm() - Real(1));
    if (dev > Real(tol::norm))
      throw std::invalid_argument(detail::format_tolerance_failure(
          "BipartitePureState: coefficients not normalized", double(dev)));
  }

  static BipartitePureState normalized(const Matrix<Real>& raw) {
    const Real n = raw.norm();
    if (n < Real(tol::norm))
      throw std::invalid_argument("BipartitePureState: coefficient norm below 1e-12");
    return BipartitePureState(Matrix<Real>(raw / n));
  }

  Eigen::Index dim_a() const { return coeffs_.rows(); }
  Eigen::Index dim_b() const { return coeffs_.cols(); }
  const Matrix<Real>& coeffs() const { return coeffs_; }

  /// The same state viewed as a d_A*d_B pure state, row-major ordering
  /// (index i*d_B + j corresponds to |i>_A|j>_B).
  PureState<Real> flattened() const {
    Vector<Real> v(coeffs_.size());
    for (Eigen::Index i = 0; i < coeffs_.rows(); ++i)
      for (Eigen::Index j = 0; j < coeffs_.cols(); ++j) v(i * coeffs_.cols() + j) = coeffs_(i, j);
    return PureState<Real>(std::move(v));
  }

 private:
  Matrix<Real> coeffs_;
};

/// Hermitian, positive semidefinite, unit-trace matrix. Construction
/// validates all three properties.
template <typename Real = double>
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix<Real> m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1)
      throw std::invalid_argument("DensityMatrix: matrix must be square, dim >= 1");
    const Real herm = detail::max_abs_entry<Real>(m_ - m_.adjoint());
    if (herm > Real(tol::hermitian))
      throw std::invalid_argument(
          detail::format_tolerance_failure("DensityMatrix: not Hermitian", double(herm)));
    const Real tr_dev = std::abs(m_.trace() - Complex<Real>(1));
    if (tr_dev > Real(tol::trace))
      throw std::invalid_argument(
          detail::format_tolerance_failure("DensityMatrix: trace not 1", double(tr_dev)));
    Eigen::SelfAdjointEigenSolver<Matrix<Real>> es(m_, Eigen::EigenvaluesOnly);
    const Real min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -Real(tol::psd))
      throw std::invalid_argument(detail::format_tolerance_failure(
          "DensityMatrix: negative eigenvalue", double(-min_eig)));
  }

  static DensityMatrix from_pure(const PureState<Real>& psi) {
    return DensityMatrix(psi.projector());
  }

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix<Real>& matrix() const { return m_; }

 private:
  Matrix<Real> m_;
};

template <typename Real = double>
struct EnsembleMember {
  Real weight;
  PureState<Real> state;
};

/// Finite pure-state decomposition {(p_i, |psi_i>)} of some density matrix.
template <typename Real = double>
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleMember<Real>> members) : members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("Ensemble: no members");
    Real sum = 0;
    const Eigen::Index d = members_.front().state.dim();
    for (const auto& m : members_) {
      if (m.weight < Real(0)) throw std::invalid_argument("Ensemble: negative weight");
      if (m.state.dim() != d) throw std::invalid_argument("Ensemble: mixed dimensions");
      sum += m.weight;
    }
    if (std::abs(sum - Real(1)) > Real(tol::weight_sum))
      throw std::invalid_argument(detail::format_tolerance_failure(
          "Ensemble: weights do not sum to 1", double(std::abs(sum - Real(1)))));
  }

  const std::vector<EnsembleMember<Real>>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  Eigen::Index dim() const { return members_.front().state.dim(); }

  /// Weighted sum of member projectors.
  Matrix<Real> average_matrix() const {
    Matrix<Real> acc = Matrix<Real>::Zero(dim(), dim());
    for (const auto& m : members_) acc += m.weight * m.state.projector();
    return acc;
  }

  /// True when the ensemble realizes rho within the given Frobenius distance.
  bool reconstructs(const DensityMatrix<Real>& rho,
                    Real frob_tol = Real(tol::reconstruction)) const {
    if (rho.dim() != dim()) return false;
    return (average_matrix() - rho.matrix()).norm() <= frob_tol;
  }

 private:
  std::vector<EnsembleMember<Real>> members_;
};

}  // namespace coh
