#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "netsync/control.hpp"
#include "netsync/dynamics.hpp"
#include "netsync/graph.hpp"

namespace netsync {

/// Snapshot of the coupled system: node states (rows of `x`), mismatch
/// estimates (rows of `gamma_hat`, all zero without an estimator) and the
/// reference state `s`.
struct NetworkState {
  double t = 0.0;
  Matrix x;
  Matrix gamma_hat;
  Vector s;
};

struct IntegrationConfig {
  double dt = 1e-3;
  double t_end = 20.0;
  std::uint64_t seed = 1;
  /// Per-dimension box [x0_lo, x0_hi] for node and reference initial states.
  Vector x0_lo;
  Vector x0_hi;
  /// Explicit reference initial state; drawn from the box when absent.
  std::optional<Vector> s0;
  /// Explicit node initial states (N x n); drawn from the box when absent.
  std::optional<Matrix> x0;
  /// Initial mismatch estimate shared by every node; zero when absent.
  std::optional<Vector> gamma_hat0;
  int stride = 10;
  bool per_node = false;
};

/// Everything needed to integrate one run.
struct NetworkProblem {
  std::shared_ptr<const OscillatorModel> model;
  Laplacian l;
  Matrix h;
  MismatchEnsemble mismatch;
  ControllerSpec controller;
  IntegrationConfig integration;

  [[nodiscard]] std::size_t nodes() const { return l.size(); }
  /// Cross-field dimension and hypothesis checks; throws Error.
  void validate() const;
};

struct TrajectorySample {
  double t = 0.0;
  double e_avg = 0.0;
  double e_ref = 0.0;
  double gamma_err = 0.0;
  /// ‖e_i‖ about the average (open loop) or ‖x_i − s‖ (controlled); only
  /// filled when per-node output is requested.
  std::vector<double> node_norms;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  int stride = 1;
  bool diverged = false;
  double last_finite_t = 0.0;
  NetworkState final_state;
  /// Largest γ_iᵀGᵀ(x_i)G(x_i)γ_i seen at sample times.
  double max_mismatch_energy = 0.0;
};

struct AverageError {
  Matrix per_node;  // e_i = x_i − x̄, one per row
  double total = 0.0;
};

struct ReferenceError {
  Vector per_node;  // ‖x_i − s‖
  double total = 0.0;
};

AverageError average_error(const Matrix& x);
ReferenceError reference_error(const Matrix& x, const Vector& s);
/// ‖γ̂ − γ(t)‖ over all nodes.
double estimation_error(const NetworkState& state, const MismatchEnsemble& mismatch);

/// Seeded initial condition: node states first, then the reference.
NetworkState initial_state(const NetworkProblem& problem);

/// Time derivative of every block of the coupled system. Throws
/// ErrorCode::divergence on non-finite input.
NetworkState network_rhs(const NetworkState& state, const NetworkProblem& problem);

using SampleObserver = std::function<void(const NetworkState&)>;

/// Fixed-step RK4 from t = 0 to t_end, recording a sample every `stride`
/// steps plus the final state. Blow-up (non-finite or |state| > 1e9) stops
/// the run and sets `diverged`.
Trajectory integrate(const NetworkProblem& problem, const SampleObserver& observer = {});

/// Earliest sampled time after which e_avg stays ≤ threshold; nullopt if the
/// last sample is above it.
std::optional<double> settling_time(const Trajectory& trajectory, double threshold);

/// `t,e_avg,e_ref,gamma_err[,e_node_1..e_node_N]` with 9 significant digits.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

}  // namespace netsync
