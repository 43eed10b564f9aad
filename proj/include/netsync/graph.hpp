#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace netsync {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigenpairs of a real symmetric matrix. Eigenvalues ascend; eigenvectors
/// are the orthonormal columns of `eigenvectors`.
struct SpectralDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// Cyclic Jacobi eigensolver for dense symmetric matrices.
///
/// Sweeps until the off-diagonal Frobenius norm drops to 1e-12 of the input
/// norm (at most 100 sweeps). Inputs whose asymmetry exceeds 1e-12 relative
/// to the largest entry are rejected with ErrorCode::symmetry_violation.
SpectralDecomposition symmetric_eigendecompose(const Matrix& m);

/// Eigenvalues only, ascending.
Vector symmetric_eigenvalues(const Matrix& m);

/// Largest eigenvalue of (m + mᵀ)/2.
double max_symmetric_eigenvalue(const Matrix& m);

Matrix symmetric_part(const Matrix& m);

/// Symmetric, zero-row-sum, positive semidefinite coupling matrix of an
/// undirected weighted graph. Only constructible through validation.
class Laplacian {
 public:
  /// Validates and wraps `entries`. Asymmetric, non-zero-row-sum or
  /// indefinite matrices are rejected rather than repaired.
  static Laplacian from_matrix(Matrix entries);

  [[nodiscard]] std::size_t size() const noexcept {
    return static_cast<std::size_t>(entries_.rows());
  }
  [[nodiscard]] const Matrix& matrix() const noexcept { return entries_; }

  /// True when some off-diagonal entry is positive, i.e. the graph has a
  /// negative coupling weight a_ij = -l_ij < 0.
  [[nodiscard]] bool has_negative_couplings() const noexcept {
    return negative_couplings_;
  }

  /// True when every off-diagonal entry is <= 0.
  [[nodiscard]] bool nonpositive_off_diagonal() const noexcept {
    return !negative_couplings_;
  }

  friend bool operator==(const Laplacian& a, const Laplacian& b) {
    return a.entries_ == b.entries_;
  }

 private:
  explicit Laplacian(Matrix entries, bool negative_couplings)
      : entries_(std::move(entries)), negative_couplings_(negative_couplings) {}

  Matrix entries_;
  bool negative_couplings_ = false;
};

/// Nonnegative per-node feedback gains, e.g. the pinning gains z_i.
class GainDiagonal {
 public:
  GainDiagonal() = default;
  explicit GainDiagonal(Vector gains);

  static GainDiagonal zeros(std::size_t n);
  static GainDiagonal uniform(std::size_t n, double gain);
  /// Gain `gain` at the listed zero-based node indices, zero elsewhere.
  static GainDiagonal pinned(std::size_t n, std::span<const std::size_t> nodes,
                             double gain);

  [[nodiscard]] std::size_t size() const noexcept {
    return static_cast<std::size_t>(gains_.size());
  }
  [[nodiscard]] const Vector& gains() const noexcept { return gains_; }
  [[nodiscard]] double operator[](std::size_t i) const {
    return gains_(static_cast<Eigen::Index>(i));
  }
  [[nodiscard]] Matrix as_matrix() const { return gains_.asDiagonal(); }
  [[nodiscard]] bool any_positive() const { return (gains_.array() > 0.0).any(); }
  /// Zero-based indices of nodes with positive gain.
  [[nodiscard]] std::vector<std::size_t> support() const;

  friend bool operator==(const GainDiagonal& a, const GainDiagonal& b) {
    return a.gains_ == b.gains_;
  }

 private:
  Vector gains_;
};

/// R_n = n·I − 1·1ᵀ, the Laplacian of the complete graph.
Laplacian complete_laplacian(int n);

/// Unit-weight path graph 1–2–…–n.
Laplacian path_laplacian(int n);

/// Empty graph on n nodes.
Laplacian zero_laplacian(int n);

/// Fiedler test: second-smallest eigenvalue > 1e-9 · max(1, largest).
bool is_connected(const Laplacian& laplacian);

/// R_n·P = P·R_n = n·P within 1e-9 relative Frobenius tolerance.
bool check_commutation(const Matrix& p, int n);

}  // namespace netsync
