#pragma once

#include <Eigen/Dense>

namespace netsync {

/// Classical fixed-step fourth-order Runge–Kutta with reusable stage buffers.
/// `Rhs` is callable as rhs(t, y, dy_out).
class Rk4Stepper {
 public:
  explicit Rk4Stepper(Eigen::Index dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

  template <class Rhs>
  void step(const Rhs& rhs, double t, Eigen::VectorXd& y, double dt) {
    const double half = 0.5 * dt;
    rhs(t, y, k1_);
    tmp_ = y + half * k1_;
    rhs(t + half, tmp_, k2_);
    tmp_ = y + half * k2_;
    rhs(t + half, tmp_, k3_);
    tmp_ = y + dt * k3_;
    rhs(t + dt, tmp_, k4_);
    y += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

 private:
  Eigen::VectorXd k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace netsync
