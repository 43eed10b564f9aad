#include "netsync/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "netsync/error.hpp"

namespace netsync {

void OscillatorModel::apply_mismatch(Eigen::Ref<const Vector> x,
                                     Eigen::Ref<const Vector> gamma,
                                     Eigen::Ref<Vector> out) const {
  out = mismatch_basis(x) * gamma;
}

void OscillatorModel::apply_mismatch_transpose(Eigen::Ref<const Vector> x,
                                               Eigen::Ref<const Vector> v,
                                               Eigen::Ref<Vector> out) const {
  out = mismatch_basis(x).transpose() * v;
}

Vector OscillatorModel::drift(const Vector& x) const {
  Vector out(state_dim());
  drift(x, out);
  return out;
}

Eigen::Vector3d lorenz_drift(const Eigen::Vector3d& x, const LorenzParams& p) {
  return {p.a * (x(1) - x(0)), p.b * x(0) - x(1) - x(0) * x(2),
          x(0) * x(1) - p.c * x(2)};
}

Eigen::Matrix3d lorenz_mismatch_basis(const Eigen::Vector3d& x) {
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  g(0, 0) = x(1) - x(0);
  g(1, 1) = x(0);
  g(2, 2) = -x(2);
  return g;
}

void LorenzModel::drift(Eigen::Ref<const Vector> x, Eigen::Ref<Vector> out) const {
  out(0) = params_.a * (x(1) - x(0));
  out(1) = params_.b * x(0) - x(1) - x(0) * x(2);
  out(2) = x(0) * x(1) - params_.c * x(2);
}

Matrix LorenzModel::mismatch_basis(Eigen::Ref<const Vector> x) const {
  return lorenz_mismatch_basis(Eigen::Vector3d(x(0), x(1), x(2)));
}

// G is diagonal, so G and Gᵀ act identically.
void LorenzModel::apply_mismatch(Eigen::Ref<const Vector> x,
                                 Eigen::Ref<const Vector> gamma,
                                 Eigen::Ref<Vector> out) const {
  out(0) = (x(1) - x(0)) * gamma(0);
  out(1) = x(0) * gamma(1);
  out(2) = -x(2) * gamma(2);
}

void LorenzModel::apply_mismatch_transpose(Eigen::Ref<const Vector> x,
                                           Eigen::Ref<const Vector> v,
                                           Eigen::Ref<Vector> out) const {
  apply_mismatch(x, v, out);
}

LinearModel::LinearModel(Matrix a) : a_(std::move(a)) {
  if (a_.rows() == 0 || a_.rows() != a_.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "linear model needs a square system matrix");
  }
}

void LinearModel::drift(Eigen::Ref<const Vector> x, Eigen::Ref<Vector> out) const {
  out.noalias() = a_ * x;
}

Matrix LinearModel::mismatch_basis(Eigen::Ref<const Vector> x) const {
  return x.asDiagonal();
}

Vector MismatchEnsemble::at(std::size_t node, double t) const {
  if (time_varying) return time_varying(node, t);
  return gammas.row(static_cast<Eigen::Index>(node)).transpose();
}

bool MismatchEnsemble::within_bounds() const {
  for (Eigen::Index i = 0; i < gammas.rows(); ++i) {
    for (Eigen::Index j = 0; j < gammas.cols(); ++j) {
      if (std::abs(gammas(i, j)) > bounds(j)) return false;
    }
  }
  return true;
}

MismatchEnsemble sample_mismatches(int nodes, const Vector& bounds, std::uint64_t seed) {
  if (nodes < 1) {
    throw Error(ErrorCode::invalid_size, "mismatch ensemble needs at least one node");
  }
  for (Eigen::Index j = 0; j < bounds.size(); ++j) {
    if (!std::isfinite(bounds(j)) || bounds(j) < 0.0) {
      throw Error(ErrorCode::invalid_argument,
                  "mismatch bound " + std::to_string(j + 1) + " must be finite and >= 0");
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  MismatchEnsemble out;
  out.bounds = bounds;
  out.gammas.resize(nodes, bounds.size());
  for (int i = 0; i < nodes; ++i) {
    for (Eigen::Index j = 0; j < bounds.size(); ++j) {
      // Scaling a unit draw keeps the stream identical across bound choices.
      out.gammas(i, j) = bounds(j) * unit(rng);
    }
  }
  return out;
}

void attach_sinusoidal_variation(MismatchEnsemble& ensemble, double omega) {
  const Matrix base = ensemble.gammas;
  const double n = static_cast<double>(base.rows());
  ensemble.time_varying = [base, omega, n](std::size_t node, double t) -> Vector {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(node) / n;
    return base.row(static_cast<Eigen::Index>(node)).transpose() * std::cos(omega * t + phase);
  };
}

Vector corner_gamma_c(const Vector& bounds) {
  for (Eigen::Index j = 0; j < bounds.size(); ++j) {
    if (bounds(j) < 0.0) {
      throw Error(ErrorCode::invalid_argument, "mismatch bounds must be >= 0");
    }
  }
  return bounds;
}

UncertaintyBound::UncertaintyBound(Matrix gamma_matrix_in, Vector gamma_c_in)
    : gamma_matrix(std::move(gamma_matrix_in)), gamma_c(std::move(gamma_c_in)) {
  const Eigen::Index m = gamma_matrix.rows();
  if (m == 0 || gamma_matrix.cols() != m || gamma_c.size() != m) {
    throw Error(ErrorCode::dimension_mismatch,
                "Gamma must be m x m with gamma_c of length m");
  }
  if (!gamma_matrix.allFinite() || !gamma_c.allFinite()) {
    throw Error(ErrorCode::invalid_argument, "uncertainty bound has non-finite entries");
  }
  const double scale = std::max(1.0, gamma_matrix.cwiseAbs().maxCoeff());
  if ((gamma_matrix - gamma_matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::symmetry_violation, "Gamma must be symmetric");
  }
  if (symmetric_eigenvalues(symmetric_part(gamma_matrix))(0) < -1e-9 * scale) {
    throw Error(ErrorCode::not_psd, "Gamma must be positive semidefinite");
  }
}

QuadBound::QuadBound(Matrix f_in) : f(std::move(f_in)) {
  if (f.rows() == 0 || f.rows() != f.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "F must be square");
  }
  if (!f.allFinite()) {
    throw Error(ErrorCode::invalid_argument, "F has non-finite entries");
  }
}

namespace presets {

LorenzParams lorenz_params() { return {10.0, 28.0, 8.0 / 3.0}; }

QuadBound lorenz_quad_bound() {
  Matrix f(3, 3);
  f << 21, 10, 0,
       28, 23, 0,
       0, 0, 40;
  return QuadBound(std::move(f));
}

Matrix lorenz_gamma_matrix() {
  return Eigen::Vector3d(213.0, 400.0, 2500.0).asDiagonal();
}

Vector lorenz_mismatch_caps() {
  const LorenzParams p = lorenz_params();
  return 0.1 * Eigen::Vector3d(p.a, p.b, p.c);
}

UncertaintyBound lorenz_uncertainty_bound() {
  return UncertaintyBound(lorenz_gamma_matrix(), corner_gamma_c(lorenz_mismatch_caps()));
}

}  // namespace presets

}  // namespace netsync
