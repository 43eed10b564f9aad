#include "netsync/sim.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>

#include "netsync/error.hpp"
#include "netsync/ode.hpp"

namespace netsync {
namespace {

constexpr double kDivergenceLimit = 1e9;

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowMap = Eigen::Map<RowMatrix>;
using ConstRowMap = Eigen::Map<const RowMatrix>;

// Flat layout: x (N·n, row-major) | γ̂ (N·m, row-major) | s (n).
struct Layout {
  Eigen::Index nodes;
  Eigen::Index n;
  Eigen::Index m;

  [[nodiscard]] Eigen::Index size() const { return nodes * n + nodes * m + n; }
  [[nodiscard]] Eigen::Index gamma_offset() const { return nodes * n; }
  [[nodiscard]] Eigen::Index s_offset() const { return nodes * (n + m); }
};

Layout layout_of(const NetworkProblem& p) {
  return {static_cast<Eigen::Index>(p.nodes()), p.model->state_dim(), p.model->mismatch_dim()};
}

Vector pack(const NetworkState& state, const Layout& lay) {
  Vector y(lay.size());
  RowMap(y.data(), lay.nodes, lay.n) = state.x;
  RowMap(y.data() + lay.gamma_offset(), lay.nodes, lay.m) = state.gamma_hat;
  y.segment(lay.s_offset(), lay.n) = state.s;
  return y;
}

NetworkState unpack(const Vector& y, double t, const Layout& lay) {
  NetworkState state;
  state.t = t;
  state.x = ConstRowMap(y.data(), lay.nodes, lay.n);
  state.gamma_hat = ConstRowMap(y.data() + lay.gamma_offset(), lay.nodes, lay.m);
  state.s = y.segment(lay.s_offset(), lay.n);
  return state;
}

/// The coupled right-hand side on the flat state vector.
class CoupledRhs {
 public:
  explicit CoupledRhs(const NetworkProblem& p)
      : p_(p), lay_(layout_of(p)), coupling_(p.l.matrix()), ht_(p.h.transpose()) {
    const ControllerSpec& ctl = p.controller;
    if (ctl.regime == Regime::distributed && ctl.b) coupling_ += ctl.b->matrix();
    if (ctl.regime == Regime::distributed && ctl.c) c_ = ctl.c->matrix();
    constant_gamma_ = !p.mismatch.time_varying;
  }

  void operator()(double t, const Vector& y, Vector& dy) const {
    const Eigen::Index nodes = lay_.nodes;
    const ConstRowMap x(y.data(), nodes, lay_.n);
    const ConstRowMap gh(y.data() + lay_.gamma_offset(), nodes, lay_.m);
    const auto s = y.segment(lay_.s_offset(), lay_.n);
    RowMap dx(dy.data(), nodes, lay_.n);
    RowMap dgh(dy.data() + lay_.gamma_offset(), nodes, lay_.m);

    const OscillatorModel& model = *p_.model;
    const ControllerSpec& ctl = p_.controller;
    const bool controlled = ctl.regime != Regime::open_loop;

    // −Σ_j (l_ij + b_ij)·H·x_j for every node at once.
    const RowMatrix coupled = (coupling_ * x) * ht_;
    RowMatrix consensus;
    if (ctl.regime == Regime::distributed && c_.size() > 0) consensus = c_ * x;

    Vector xi(lay_.n), fi(lay_.n), gi(lay_.n), gamma(lay_.m), err(lay_.n), est(lay_.m);
    for (Eigen::Index i = 0; i < nodes; ++i) {
      const auto node = static_cast<std::size_t>(i);
      xi = x.row(i).transpose();
      model.drift(xi, fi);
      if (constant_gamma_) {
        gamma = p_.mismatch.gammas.row(i).transpose();
      } else {
        gamma = p_.mismatch.at(node, t);
      }
      model.apply_mismatch(xi, gamma, gi);
      fi += gi;
      fi -= coupled.row(i).transpose();

      if (controlled) {
        err = xi - s;
        fi -= ctl.z[node] * (p_.h * err);
        gamma = gh.row(i).transpose();
        model.apply_mismatch(xi, gamma, gi);
        fi -= gi;

        if (ctl.regime == Regime::decentralized) {
          model.apply_mismatch_transpose(xi, err, est);
        } else {
          Vector signal = ctl.z_prime[node] * err;
          if (consensus.size() > 0) signal += consensus.row(i).transpose();
          model.apply_mismatch_transpose(xi, signal, est);
        }
        dgh.row(i) = (ctl.k(i) * est).transpose();
      } else {
        dgh.row(i).setZero();
      }
      dx.row(i) = fi.transpose();
    }
    Vector fs(lay_.n);
    model.drift(s, fs);
    dy.segment(lay_.s_offset(), lay_.n) = fs;
  }

 private:
  const NetworkProblem& p_;
  Layout lay_;
  Matrix coupling_;
  Matrix ht_;
  Matrix c_;
  bool constant_gamma_ = true;
};

bool finite_and_bounded(const Vector& y) {
  return y.allFinite() && (y.size() == 0 || y.cwiseAbs().maxCoeff() <= kDivergenceLimit);
}

double max_mismatch_energy(const NetworkState& state, const NetworkProblem& p) {
  double out = 0.0;
  Vector g(p.model->state_dim());
  for (Eigen::Index i = 0; i < state.x.rows(); ++i) {
    const Vector xi = state.x.row(i).transpose();
    p.model->apply_mismatch(xi, p.mismatch.at(static_cast<std::size_t>(i), state.t), g);
    out = std::max(out, g.squaredNorm());
  }
  return out;
}

TrajectorySample sample_of(const NetworkState& state, const NetworkProblem& p) {
  TrajectorySample out;
  out.t = state.t;
  const AverageError avg = average_error(state.x);
  const ReferenceError ref = reference_error(state.x, state.s);
  out.e_avg = avg.total;
  out.e_ref = ref.total;
  out.gamma_err = estimation_error(state, p.mismatch);
  if (p.integration.per_node) {
    out.node_norms.resize(static_cast<std::size_t>(state.x.rows()));
    for (Eigen::Index i = 0; i < state.x.rows(); ++i) {
      out.node_norms[static_cast<std::size_t>(i)] =
          p.controller.regime == Regime::open_loop ? avg.per_node.row(i).norm()
                                                   : ref.per_node(i);
    }
  }
  return out;
}

}  // namespace

void NetworkProblem::validate() const {
  if (!model) throw Error(ErrorCode::invalid_argument, "no oscillator model");
  const auto n = static_cast<Eigen::Index>(model->state_dim());
  const auto m = static_cast<Eigen::Index>(model->mismatch_dim());
  const auto big_n = static_cast<Eigen::Index>(nodes());
  if (h.rows() != n || h.cols() != n) {
    throw Error(ErrorCode::dimension_mismatch,
                "inner coupling H must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (mismatch.gammas.rows() != big_n || mismatch.gammas.cols() != m) {
    throw Error(ErrorCode::dimension_mismatch,
                "mismatch ensemble must be " + std::to_string(big_n) + "x" + std::to_string(m));
  }
  if (mismatch.bounds.size() != m) {
    throw Error(ErrorCode::dimension_mismatch, "mismatch bounds must have length m");
  }
  controller.validate(nodes());
  const IntegrationConfig& cfg = integration;
  if (!(cfg.dt > 0.0) || !(cfg.t_end > cfg.dt)) {
    throw Error(ErrorCode::invalid_argument, "integration needs dt > 0 and t_end > dt");
  }
  if (cfg.stride < 1) throw Error(ErrorCode::invalid_argument, "sampling stride must be >= 1");
  if (!cfg.x0 || !cfg.s0) {
    if (cfg.x0_lo.size() != n || cfg.x0_hi.size() != n) {
      throw Error(ErrorCode::dimension_mismatch, "initial-state box must have n intervals");
    }
    if ((cfg.x0_lo.array() > cfg.x0_hi.array()).any()) {
      throw Error(ErrorCode::invalid_argument, "initial-state box has lo > hi");
    }
  }
  if (cfg.x0 && (cfg.x0->rows() != big_n || cfg.x0->cols() != n)) {
    throw Error(ErrorCode::dimension_mismatch, "explicit x0 must be N x n");
  }
  if (cfg.s0 && cfg.s0->size() != n) {
    throw Error(ErrorCode::dimension_mismatch, "explicit s0 must have length n");
  }
  if (cfg.gamma_hat0 && cfg.gamma_hat0->size() != model->mismatch_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "initial estimate must have length m");
  }
}

AverageError average_error(const Matrix& x) {
  AverageError out;
  if (x.rows() == 0) return out;
  const Eigen::RowVectorXd mean = x.colwise().mean();
  out.per_node = x.rowwise() - mean;
  out.total = out.per_node.norm();
  return out;
}

ReferenceError reference_error(const Matrix& x, const Vector& s) {
  ReferenceError out;
  const Matrix diff = x.rowwise() - s.transpose();
  out.per_node = diff.rowwise().norm();
  out.total = diff.norm();
  return out;
}

double estimation_error(const NetworkState& state, const MismatchEnsemble& mismatch) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < state.gamma_hat.rows(); ++i) {
    const Vector gamma = mismatch.at(static_cast<std::size_t>(i), state.t);
    sum += (state.gamma_hat.row(i).transpose() - gamma).squaredNorm();
  }
  return std::sqrt(sum);
}

NetworkState initial_state(const NetworkProblem& p) {
  const auto nodes = static_cast<Eigen::Index>(p.nodes());
  const Eigen::Index n = p.model->state_dim();
  const IntegrationConfig& cfg = p.integration;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](Eigen::Index j) {
    return cfg.x0_lo(j) + (cfg.x0_hi(j) - cfg.x0_lo(j)) * unit(rng);
  };

  NetworkState state;
  state.t = 0.0;
  if (cfg.x0) {
    state.x = *cfg.x0;
  } else {
    state.x.resize(nodes, n);
    for (Eigen::Index i = 0; i < nodes; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) state.x(i, j) = draw(j);
    }
  }
  if (cfg.s0) {
    state.s = *cfg.s0;
  } else {
    state.s.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) state.s(j) = draw(j);
  }
  state.gamma_hat = Matrix::Zero(nodes, p.model->mismatch_dim());
  if (cfg.gamma_hat0 && p.controller.has_estimator()) {
    state.gamma_hat.rowwise() = cfg.gamma_hat0->transpose();
  }
  return state;
}

NetworkState network_rhs(const NetworkState& state, const NetworkProblem& problem) {
  const Layout lay = layout_of(problem);
  const Vector y = pack(state, lay);
  if (!y.allFinite()) {
    throw Error(ErrorCode::divergence,
                "non-finite network state at t = " + std::to_string(state.t));
  }
  Vector dy(lay.size());
  const CoupledRhs rhs(problem);
  rhs(state.t, y, dy);
  return unpack(dy, state.t, lay);
}

Trajectory integrate(const NetworkProblem& problem, const SampleObserver& observer) {
  problem.validate();
  const Layout lay = layout_of(problem);
  const IntegrationConfig& cfg = problem.integration;
  const CoupledRhs rhs(problem);
  Rk4Stepper stepper(lay.size());

  Trajectory traj;
  traj.stride = cfg.stride;

  const double ratio = cfg.t_end / cfg.dt;
  auto steps = static_cast<long long>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * ratio) {
    steps = static_cast<long long>(std::ceil(ratio));
  }

  NetworkState state = initial_state(problem);
  Vector y = pack(state, lay);

  auto record = [&](const NetworkState& s) {
    traj.samples.push_back(sample_of(s, problem));
    traj.max_mismatch_energy = std::max(traj.max_mismatch_energy, max_mismatch_energy(s, problem));
    if (observer) observer(s);
  };

  record(state);
  double t = 0.0;
  for (long long step = 1; step <= steps; ++step) {
    const double t_next = step == steps ? cfg.t_end : static_cast<double>(step) * cfg.dt;
    Vector next = y;
    stepper.step(rhs, t, next, t_next - t);
    if (!finite_and_bounded(next)) {
      traj.diverged = true;
      break;
    }
    y = std::move(next);
    t = t_next;
    if (step % cfg.stride == 0) {
      record(unpack(y, t, lay));
    }
  }
  traj.last_finite_t = t;
  traj.final_state = unpack(y, t, lay);
  if (traj.samples.back().t < t) record(traj.final_state);
  return traj;
}

std::optional<double> settling_time(const Trajectory& trajectory, double threshold) {
  if (!(threshold > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "settling threshold must be positive");
  }
  const auto& samples = trajectory.samples;
  if (samples.empty() || samples.back().e_avg > threshold) return std::nullopt;
  std::size_t first_inside = samples.size() - 1;
  while (first_inside > 0 && samples[first_inside - 1].e_avg <= threshold) --first_inside;
  return samples[first_inside].t;
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  std::size_t per_node = 0;
  if (!trajectory.samples.empty()) per_node = trajectory.samples.front().node_norms.size();
  out << "t,e_avg,e_ref,gamma_err";
  for (std::size_t i = 0; i < per_node; ++i) out << ",e_node_" << (i + 1);
  out << '\n';
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.9g", v);
    out << buf;
  };
  for (const TrajectorySample& s : trajectory.samples) {
    put(s.t);
    for (double v : {s.e_avg, s.e_ref, s.gamma_err}) {
      out << ',';
      put(v);
    }
    for (double v : s.node_norms) {
      out << ',';
      put(v);
    }
    out << '\n';
  }
}

}  // namespace netsync
