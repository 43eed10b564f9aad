#include "netsync/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netsync/error.hpp"

namespace netsync {
namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kPsdTol = 1e-9;
constexpr double kConnectivityTol = 1e-9;
constexpr double kCommutationTol = 1e-9;

void require_size(int n, const char* what) {
  if (n < 2) {
    throw Error(ErrorCode::invalid_size,
                std::string(what) + " needs n >= 2, got " + std::to_string(n));
  }
}

}  // namespace

Laplacian Laplacian::from_matrix(Matrix entries) {
  const Eigen::Index n = entries.rows();
  if (n == 0 || entries.cols() != n) {
    throw Error(ErrorCode::dimension_mismatch,
                "Laplacian must be square and non-empty, got " +
                    std::to_string(entries.rows()) + "x" +
                    std::to_string(entries.cols()));
  }
  if (!entries.allFinite()) {
    throw Error(ErrorCode::invalid_argument, "Laplacian has non-finite entries");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (entries(i, j) != entries(j, i)) {
        throw Error(ErrorCode::symmetry_violation,
                    "Laplacian entry (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ") differs from its transpose");
      }
    }
  }
  const double scale = entries.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double row_sum = entries.row(i).sum();
    if (std::abs(row_sum) > kRowSumTol * scale) {
      throw Error(ErrorCode::not_laplacian,
                  "Laplacian row " + std::to_string(i + 1) + " sums to " +
                      std::to_string(row_sum));
    }
  }
  bool negative = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && entries(i, j) > 0.0) negative = true;
    }
  }
  if (n > 1) {
    const Vector ev = symmetric_eigenvalues(entries);
    if (ev(0) < -kPsdTol * std::max(1.0, scale)) {
      throw Error(ErrorCode::not_psd,
                  "Laplacian is not positive semidefinite (smallest eigenvalue " +
                      std::to_string(ev(0)) + ")");
    }
  }
  return Laplacian(std::move(entries), negative);
}

GainDiagonal::GainDiagonal(Vector gains) : gains_(std::move(gains)) {
  for (Eigen::Index i = 0; i < gains_.size(); ++i) {
    if (!std::isfinite(gains_(i)) || gains_(i) < 0.0) {
      throw Error(ErrorCode::invalid_gain,
                  "gain " + std::to_string(i + 1) + " must be finite and >= 0");
    }
  }
}

GainDiagonal GainDiagonal::zeros(std::size_t n) {
  return GainDiagonal(Vector::Zero(static_cast<Eigen::Index>(n)));
}

GainDiagonal GainDiagonal::uniform(std::size_t n, double gain) {
  return GainDiagonal(Vector::Constant(static_cast<Eigen::Index>(n), gain));
}

GainDiagonal GainDiagonal::pinned(std::size_t n, std::span<const std::size_t> nodes,
                                  double gain) {
  Vector g = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t node : nodes) {
    if (node >= n) {
      throw Error(ErrorCode::invalid_argument,
                  "pinned node " + std::to_string(node + 1) + " outside 1.." +
                      std::to_string(n));
    }
    g(static_cast<Eigen::Index>(node)) = gain;
  }
  return GainDiagonal(std::move(g));
}

std::vector<std::size_t> GainDiagonal::support() const {
  std::vector<std::size_t> out;
  for (Eigen::Index i = 0; i < gains_.size(); ++i) {
    if (gains_(i) > 0.0) out.push_back(static_cast<std::size_t>(i));
  }
  return out;
}

Laplacian complete_laplacian(int n) {
  require_size(n, "complete graph");
  Matrix r = Matrix::Constant(n, n, -1.0);
  r.diagonal().setConstant(n - 1.0);
  return Laplacian::from_matrix(std::move(r));
}

Laplacian path_laplacian(int n) {
  require_size(n, "path graph");
  Matrix c = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    c(i, i + 1) = -1.0;
    c(i + 1, i) = -1.0;
    c(i, i) += 1.0;
    c(i + 1, i + 1) += 1.0;
  }
  return Laplacian::from_matrix(std::move(c));
}

Laplacian zero_laplacian(int n) {
  if (n < 1) {
    throw Error(ErrorCode::invalid_size, "empty graph needs n >= 1");
  }
  return Laplacian::from_matrix(Matrix::Zero(n, n));
}

bool is_connected(const Laplacian& laplacian) {
  if (laplacian.size() < 2) return true;
  const Vector ev = symmetric_eigenvalues(laplacian.matrix());
  const double largest = ev(ev.size() - 1);
  return ev(1) > kConnectivityTol * std::max(1.0, largest);
}

bool check_commutation(const Matrix& p, int n) {
  if (p.rows() != n || p.cols() != n) return false;
  Matrix r = Matrix::Constant(n, n, -1.0);
  r.diagonal().setConstant(n - 1.0);
  const Matrix scaled = static_cast<double>(n) * p;
  const double tol = kCommutationTol * p.norm();
  return (r * p - scaled).norm() <= tol && (p * r - scaled).norm() <= tol;
}

}  // namespace netsync
