#include "netsync/certification.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "netsync/error.hpp"

namespace netsync {
namespace {

void require_compatible(const QuadBound& f, const Matrix& h) {
  if (h.rows() != f.f.rows() || h.cols() != f.f.cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                "inner coupling H must match F (" + std::to_string(f.f.rows()) + "x" +
                    std::to_string(f.f.cols()) + ")");
  }
  if (!h.allFinite()) {
    throw Error(ErrorCode::invalid_argument, "H has non-finite entries");
  }
}

struct Margin {
  double value = std::numeric_limits<double>::infinity();
  double binding = 0.0;
};

// min over μ of −λ_max(sym(F) − μ·H_s)
Margin spectral_margin(const QuadBound& f, const Matrix& h, const Vector& mu) {
  const Matrix fs = symmetric_part(f.f);
  const Matrix hs = symmetric_part(h);
  Margin out;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    const double value = -max_symmetric_eigenvalue(fs - mu(i) * hs);
    if (value < out.value) {
      out.value = value;
      out.binding = mu(i);
    }
  }
  return out;
}

CertificateReport report_from(const Margin& m) {
  CertificateReport r;
  r.margin = m.value;
  r.binding_eigenvalue = m.binding;
  r.satisfied = m.value > 0.0;
  return r;
}

}  // namespace

double lambda_star(const QuadBound& f, const Matrix& h, std::span<const double> nonzero_mu) {
  require_compatible(f, h);
  if (nonzero_mu.empty()) {
    throw Error(ErrorCode::invalid_argument, "lambda_star needs at least one eigenvalue");
  }
  Vector mu(static_cast<Eigen::Index>(nonzero_mu.size()));
  for (std::size_t i = 0; i < nonzero_mu.size(); ++i) {
    if (!std::isfinite(nonzero_mu[i])) {
      throw Error(ErrorCode::invalid_argument, "non-finite Laplacian eigenvalue");
    }
    mu(static_cast<Eigen::Index>(i)) = nonzero_mu[i];
  }
  return spectral_margin(f, h, mu).value;
}

double epsilon_bound(int nodes, const UncertaintyBound& bound, double lambda_star) {
  if (!(lambda_star > 0.0)) {
    throw Error(ErrorCode::certificate_failed,
                "no error bound: lambda* = " + std::to_string(lambda_star) + " is not positive");
  }
  if (nodes < 1) {
    throw Error(ErrorCode::invalid_size, "epsilon bound needs N >= 1");
  }
  return std::sqrt(static_cast<double>(nodes) * bound.worst_case_energy()) / lambda_star;
}

CertificateReport check_bounded_error(const QuadBound& f, const Matrix& h,
                                      const Laplacian& l, const UncertaintyBound& bound) {
  require_compatible(f, h);
  if (!is_connected(l)) {
    throw Error(ErrorCode::invalid_argument,
                "bounded-error certificate needs a connected plant network");
  }
  // Ascending order: drop the single zero eigenvalue.
  const Vector ev = symmetric_eigenvalues(l.matrix());
  const Vector nonzero = ev.tail(ev.size() - 1);
  const Margin m = spectral_margin(f, h, nonzero);
  CertificateReport r = report_from(m);
  r.lambda_star = m.value;
  if (m.value > 0.0) {
    r.epsilon_bound = epsilon_bound(static_cast<int>(l.size()), bound, m.value);
  }
  return r;
}

CertificateReport check_decentralized(const QuadBound& f, const Matrix& h,
                                      const Laplacian& l, const GainDiagonal& z) {
  require_compatible(f, h);
  if (z.size() != l.size()) {
    throw Error(ErrorCode::dimension_mismatch, "gain vector Z must have one entry per node");
  }
  const Vector mu = symmetric_eigenvalues(l.matrix() + z.as_matrix());
  CertificateReport r = report_from(spectral_margin(f, h, mu));
  if (!z.any_positive()) {
    r.warnings.emplace_back(
        "all pinning gains are zero: L + Z has a zero eigenvalue, so the condition "
        "cannot hold unless sym(F) is negative definite");
  }
  return r;
}

CertificateReport check_distributed(const QuadBound& f, const Matrix& h, const Laplacian& l,
                                    const Laplacian& b, const GainDiagonal& z) {
  require_compatible(f, h);
  if (b.size() != l.size() || z.size() != l.size()) {
    throw Error(ErrorCode::dimension_mismatch, "L, B and Z must have the same node count");
  }
  const Vector mu = symmetric_eigenvalues(l.matrix() + b.matrix() + z.as_matrix());
  return report_from(spectral_margin(f, h, mu));
}

double mu_threshold(const QuadBound& f, const Matrix& h) {
  require_compatible(f, h);
  const SpectralDecomposition hs = symmetric_eigendecompose(symmetric_part(h));
  const double scale = std::max(1.0, hs.eigenvalues.cwiseAbs().maxCoeff());
  if (hs.eigenvalues(0) <= 1e-12 * scale) {
    throw Error(ErrorCode::not_psd,
                "symmetric part of H must be positive definite for a mu threshold");
  }
  const Matrix inv_sqrt = hs.eigenvectors *
                          hs.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() *
                          hs.eigenvectors.transpose();
  const Matrix scaled = inv_sqrt * symmetric_part(f.f) * inv_sqrt;
  return max_symmetric_eigenvalue(scaled);
}

GainDiagonal greedy_pin_selection(const Laplacian& l, int count, double gain) {
  const int n = static_cast<int>(l.size());
  if (count < 1 || count > n) {
    throw Error(ErrorCode::invalid_argument,
                "pin count must be in 1.." + std::to_string(n) + ", got " +
                    std::to_string(count));
  }
  if (!(gain > 0.0) || !std::isfinite(gain)) {
    throw Error(ErrorCode::invalid_gain, "pin gain must be positive");
  }
  Vector z = Vector::Zero(n);
  for (int step = 0; step < count; ++step) {
    int best = -1;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (z(j) > 0.0) continue;
      Matrix candidate = l.matrix();
      candidate.diagonal() += z;
      candidate(j, j) += gain;
      const double value = symmetric_eigenvalues(candidate)(0);
      // Require a clear improvement so symmetric ties keep the lowest index.
      if (best < 0 || value > best_value + 1e-10 * std::max(1.0, std::abs(best_value))) {
        best = j;
        best_value = value;
      }
    }
    z(best) = gain;
  }
  return GainDiagonal(std::move(z));
}

}  // namespace netsync
