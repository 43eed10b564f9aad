#include "netsync/control.hpp"

#include <cmath>
#include <string>

#include "netsync/error.hpp"

namespace netsync {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::open_loop: return "open_loop";
    case Regime::decentralized: return "decentralized";
    case Regime::distributed: return "distributed";
  }
  return "open_loop";
}

Regime regime_from_string(std::string_view name) {
  if (name == "open_loop") return Regime::open_loop;
  if (name == "decentralized") return Regime::decentralized;
  if (name == "distributed") return Regime::distributed;
  throw Error(ErrorCode::invalid_argument,
              "unknown controller regime '" + std::string(name) +
                  "' (expected open_loop, decentralized or distributed)");
}

ControllerSpec ControllerSpec::open_loop(std::size_t nodes) {
  ControllerSpec spec;
  spec.regime = Regime::open_loop;
  spec.z = GainDiagonal::zeros(nodes);
  spec.z_prime = GainDiagonal::zeros(nodes);
  spec.k = Vector::Zero(static_cast<Eigen::Index>(nodes));
  return spec;
}

ControllerSpec ControllerSpec::decentralized(GainDiagonal z, Vector k) {
  ControllerSpec spec;
  spec.regime = Regime::decentralized;
  spec.z_prime = GainDiagonal::zeros(z.size());
  spec.z = std::move(z);
  spec.k = std::move(k);
  return spec;
}

ControllerSpec ControllerSpec::distributed(Laplacian b, Laplacian c, GainDiagonal z,
                                           GainDiagonal z_prime, Vector k) {
  ControllerSpec spec;
  spec.regime = Regime::distributed;
  spec.b = std::move(b);
  spec.c = std::move(c);
  spec.z = std::move(z);
  spec.z_prime = std::move(z_prime);
  spec.k = std::move(k);
  return spec;
}

void ControllerSpec::validate(std::size_t nodes) const {
  auto fail = [](ErrorCode code, const std::string& msg) { throw Error(code, msg); };
  if (z.size() != nodes || z_prime.size() != nodes ||
      static_cast<std::size_t>(k.size()) != nodes) {
    fail(ErrorCode::dimension_mismatch, "controller gains must have one entry per node (N = " +
                                            std::to_string(nodes) + ")");
  }
  if (regime == Regime::open_loop) return;

  for (Eigen::Index i = 0; i < k.size(); ++i) {
    if (!std::isfinite(k(i)) || k(i) <= 0.0) {
      fail(ErrorCode::invalid_gain,
           "estimator gain k_" + std::to_string(i + 1) + " must be positive");
    }
  }
  if (regime == Regime::decentralized) {
    for (std::size_t i = 0; i < nodes; ++i) {
      if (z[i] <= 0.0) {
        fail(ErrorCode::invalid_gain,
             "decentralized control needs z_" + std::to_string(i + 1) + " > 0");
      }
    }
    return;
  }

  if (!b || !c) fail(ErrorCode::invalid_argument, "distributed control needs both B and C");
  if (b->size() != nodes || c->size() != nodes) {
    fail(ErrorCode::dimension_mismatch, "B and C must be N x N");
  }
  if (!z.any_positive()) fail(ErrorCode::invalid_gain, "distributed control needs some z_i > 0");
  if (!z_prime.any_positive()) {
    fail(ErrorCode::invalid_gain, "distributed control needs some z'_i > 0");
  }
  if (!c->nonpositive_off_diagonal()) {
    fail(ErrorCode::not_laplacian, "communication graph C must have off-diagonal entries <= 0");
  }
  if (!is_connected(*c)) fail(ErrorCode::invalid_argument, "communication graph C must be connected");
}

Vector decentralized_input(const Vector& x_i, const Vector& s, double z_i,
                           const Vector& gamma_hat_i, const OscillatorModel& model,
                           const Matrix& h) {
  Vector compensation(model.state_dim());
  model.apply_mismatch(x_i, gamma_hat_i, compensation);
  return -z_i * (h * (x_i - s)) - compensation;
}

Vector decentralized_estimator_rate(const Vector& x_i, const Vector& s, double k_i,
                                    const OscillatorModel& model) {
  Vector out(model.mismatch_dim());
  model.apply_mismatch_transpose(x_i, x_i - s, out);
  return k_i * out;
}

Vector distributed_input(std::size_t i, const Matrix& x, const Vector& s,
                         const ControllerSpec& spec, const Vector& gamma_hat_i,
                         const OscillatorModel& model, const Matrix& h) {
  const auto row = static_cast<Eigen::Index>(i);
  const Vector x_i = x.row(row).transpose();
  Vector u = decentralized_input(x_i, s, spec.z[i], gamma_hat_i, model, h);
  if (spec.b) {
    const Vector coupled = (spec.b->matrix().row(row) * x).transpose();
    u -= h * coupled;
  }
  return u;
}

Vector distributed_estimator_rate(std::size_t i, const Matrix& x, const Vector& s,
                                  const ControllerSpec& spec, const OscillatorModel& model) {
  const auto row = static_cast<Eigen::Index>(i);
  const Vector x_i = x.row(row).transpose();
  Vector signal = spec.z_prime[i] * (x_i - s);
  if (spec.c) signal += (spec.c->matrix().row(row) * x).transpose();
  Vector out(model.mismatch_dim());
  model.apply_mismatch_transpose(x_i, signal, out);
  return spec.k(row) * out;
}

}  // namespace netsync
