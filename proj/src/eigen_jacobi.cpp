#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "netsync/error.hpp"
#include "netsync/graph.hpp"

namespace netsync {
namespace {

constexpr int kMaxSweeps = 100;
constexpr double kSymmetryTol = 1e-12;
constexpr double kOffDiagonalTol = 1e-12;

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

void require_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                "eigendecomposition needs a square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::invalid_argument, "matrix has non-finite entries");
  }
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * scale) {
    throw Error(ErrorCode::symmetry_violation,
                "matrix is not symmetric (max |m - m^T| = " +
                    std::to_string(asym) + ")");
  }
}

}  // namespace

SpectralDecomposition symmetric_eigendecompose(const Matrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return {Vector(0), Matrix(0, 0)};
  require_symmetric(m);

  Matrix a = symmetric_part(m);
  Matrix v = Matrix::Identity(n, n);
  const double tol = kOffDiagonalTol * m.norm();

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= tol) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // A <- Jᵀ A J with J the (p, q) plane rotation.
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && off_diagonal_norm(a) > tol) {
    throw Error(ErrorCode::not_converged,
                "Jacobi eigensolver did not converge in " +
                    std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i) < a(j, j);
  });

  SpectralDecomposition out{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = a(src, src);
    out.eigenvectors.col(k) = v.col(src);
  }
  return out;
}

Vector symmetric_eigenvalues(const Matrix& m) {
  return symmetric_eigendecompose(m).eigenvalues;
}

Matrix symmetric_part(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double max_symmetric_eigenvalue(const Matrix& m) {
  const Vector ev = symmetric_eigenvalues(symmetric_part(m));
  return ev(ev.size() - 1);
}

}  // namespace netsync
