#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "netsync/graph.hpp"

namespace netsync {

/// Node dynamics ẋ = f(x) + G(x)·γ: nominal drift f: ℝⁿ → ℝⁿ and
/// state-dependent mismatch basis G: ℝⁿ → ℝⁿˣᵐ.
///
/// The `apply_*` hooks default to going through `mismatch_basis`; models
/// with structured bases override them to skip the dense product.
class OscillatorModel {
 public:
  virtual ~OscillatorModel() = default;

  [[nodiscard]] virtual int state_dim() const = 0;
  [[nodiscard]] virtual int mismatch_dim() const = 0;
  [[nodiscard]] virtual std::string name() const = 0;

  virtual void drift(Eigen::Ref<const Vector> x, Eigen::Ref<Vector> out) const = 0;
  [[nodiscard]] virtual Matrix mismatch_basis(Eigen::Ref<const Vector> x) const = 0;

  /// out = G(x)·gamma
  virtual void apply_mismatch(Eigen::Ref<const Vector> x, Eigen::Ref<const Vector> gamma,
                              Eigen::Ref<Vector> out) const;
  /// out = Gᵀ(x)·v
  virtual void apply_mismatch_transpose(Eigen::Ref<const Vector> x,
                                        Eigen::Ref<const Vector> v,
                                        Eigen::Ref<Vector> out) const;

  [[nodiscard]] Vector drift(const Vector& x) const;
};

struct LorenzParams {
  double a = 10.0;
  double b = 28.0;
  double c = 8.0 / 3.0;

  friend bool operator==(const LorenzParams&, const LorenzParams&) = default;
};

Eigen::Vector3d lorenz_drift(const Eigen::Vector3d& x, const LorenzParams& p);
Eigen::Matrix3d lorenz_mismatch_basis(const Eigen::Vector3d& x);

/// Lorenz oscillator with the diagonal mismatch basis diag(x₂−x₁, x₁, −x₃),
/// so γ perturbs (a, b, c) directly.
class LorenzModel final : public OscillatorModel {
 public:
  explicit LorenzModel(LorenzParams params = {}) : params_(params) {}

  [[nodiscard]] int state_dim() const override { return 3; }
  [[nodiscard]] int mismatch_dim() const override { return 3; }
  [[nodiscard]] std::string name() const override { return "lorenz"; }
  [[nodiscard]] const LorenzParams& params() const noexcept { return params_; }

  void drift(Eigen::Ref<const Vector> x, Eigen::Ref<Vector> out) const override;
  [[nodiscard]] Matrix mismatch_basis(Eigen::Ref<const Vector> x) const override;
  void apply_mismatch(Eigen::Ref<const Vector> x, Eigen::Ref<const Vector> gamma,
                      Eigen::Ref<Vector> out) const override;
  void apply_mismatch_transpose(Eigen::Ref<const Vector> x, Eigen::Ref<const Vector> v,
                                Eigen::Ref<Vector> out) const override;

  using OscillatorModel::drift;

 private:
  LorenzParams params_;
};

/// Linear test model ẋ = A·x with mismatch basis diag(x), i.e. γ perturbs
/// the diagonal of A.
class LinearModel final : public OscillatorModel {
 public:
  explicit LinearModel(Matrix a);

  [[nodiscard]] int state_dim() const override { return static_cast<int>(a_.rows()); }
  [[nodiscard]] int mismatch_dim() const override { return static_cast<int>(a_.rows()); }
  [[nodiscard]] std::string name() const override { return "linear"; }
  [[nodiscard]] const Matrix& system_matrix() const noexcept { return a_; }

  void drift(Eigen::Ref<const Vector> x, Eigen::Ref<Vector> out) const override;
  [[nodiscard]] Matrix mismatch_basis(Eigen::Ref<const Vector> x) const override;

  using OscillatorModel::drift;

 private:
  Matrix a_;
};

/// Per-node mismatch vectors γ_i (rows of `gammas`) and their box bounds.
/// An optional `time_varying` hook overrides the constant rows.
struct MismatchEnsemble {
  Matrix gammas;
  Vector bounds;
  std::function<Vector(std::size_t node, double t)> time_varying;

  [[nodiscard]] std::size_t nodes() const { return static_cast<std::size_t>(gammas.rows()); }
  [[nodiscard]] Vector at(std::size_t node, double t) const;
  [[nodiscard]] bool within_bounds() const;
};

/// Uniform draws γ_ij ~ U[−bounds_j, bounds_j] from a seeded mt19937_64.
MismatchEnsemble sample_mismatches(int nodes, const Vector& bounds, std::uint64_t seed);

/// Modulates constant mismatches as γ_i(t) = γ_i·cos(ω t + 2π i / N). The
/// magnitude never exceeds the constant draw, so the box bound still holds.
void attach_sinusoidal_variation(MismatchEnsemble& ensemble, double omega);

/// The positive corner of the mismatch box.
Vector corner_gamma_c(const Vector& bounds);

/// Γ and γ_c with γᵀGᵀ(x)G(x)γ ≤ γ_cᵀΓγ_c over the working region.
struct UncertaintyBound {
  Matrix gamma_matrix;
  Vector gamma_c;

  UncertaintyBound(Matrix gamma_matrix, Vector gamma_c);

  [[nodiscard]] double worst_case_energy() const {
    return gamma_c.dot(gamma_matrix * gamma_c);
  }
};

/// One-sided Lipschitz bound F: (x−s)ᵀ[f(x)−f(s)] ≤ (x−s)ᵀF(x−s).
struct QuadBound {
  Matrix f;

  explicit QuadBound(Matrix f);
};

namespace presets {

/// Lorenz numbers used throughout the reference experiments.
LorenzParams lorenz_params();
QuadBound lorenz_quad_bound();
Matrix lorenz_gamma_matrix();
/// 0.1·(a, b, c)
Vector lorenz_mismatch_caps();
UncertaintyBound lorenz_uncertainty_bound();

}  // namespace presets

}  // namespace netsync
