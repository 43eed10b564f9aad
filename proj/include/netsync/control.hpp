#pragma once

#include <optional>
#include <string_view>

#include "netsync/dynamics.hpp"
#include "netsync/graph.hpp"

namespace netsync {

enum class Regime { open_loop, decentralized, distributed };

std::string_view to_string(Regime regime);
Regime regime_from_string(std::string_view name);

/// Controller selection and gains.
///
/// - open_loop: no input, no estimator.
/// - decentralized: u_i = −z_i·H(x_i − s) − G(x_i)γ̂_i, γ̂̇_i = k_i·Gᵀ(x_i)(x_i − s).
/// - distributed: u_i = −Σ_j b_ij·H x_j − z_i·H(x_i − s) − G(x_i)γ̂_i,
///   γ̂̇_i = k_i·Gᵀ(x_i)(Σ_j c_ij x_j + z′_i(x_i − s)).
///
/// The same Z drives the pinning term of the distributed input and the
/// L + B + Z spectral condition.
struct ControllerSpec {
  Regime regime = Regime::open_loop;
  GainDiagonal z;
  GainDiagonal z_prime;
  Vector k;
  std::optional<Laplacian> b;
  std::optional<Laplacian> c;

  static ControllerSpec open_loop(std::size_t nodes);
  static ControllerSpec decentralized(GainDiagonal z, Vector k);
  static ControllerSpec distributed(Laplacian b, Laplacian c, GainDiagonal z,
                                    GainDiagonal z_prime, Vector k);

  /// Checks the hypotheses of the selected regime for an N-node network;
  /// throws Error on the first violation.
  void validate(std::size_t nodes) const;

  [[nodiscard]] bool has_estimator() const { return regime != Regime::open_loop; }
};

Vector decentralized_input(const Vector& x_i, const Vector& s, double z_i,
                           const Vector& gamma_hat_i, const OscillatorModel& model,
                           const Matrix& h);

Vector decentralized_estimator_rate(const Vector& x_i, const Vector& s, double k_i,
                                    const OscillatorModel& model);

/// `x` holds one node state per row.
Vector distributed_input(std::size_t i, const Matrix& x, const Vector& s,
                         const ControllerSpec& spec, const Vector& gamma_hat_i,
                         const OscillatorModel& model, const Matrix& h);

Vector distributed_estimator_rate(std::size_t i, const Matrix& x, const Vector& s,
                                  const ControllerSpec& spec, const OscillatorModel& model);

}  // namespace netsync
