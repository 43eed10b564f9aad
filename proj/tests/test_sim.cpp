#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "netsync/error.hpp"
#include "netsync/sim.hpp"
#include "oracles.hpp"

using namespace netsync;

namespace {

NetworkProblem scalar_problem(double a, double x0, double dt, double t_end) {
  Matrix am(1, 1);
  am << a;
  NetworkProblem p{std::make_shared<LinearModel>(am), zero_laplacian(1), Matrix::Identity(1, 1),
                   sample_mismatches(1, Vector::Zero(1), 1), ControllerSpec::open_loop(1), {}};
  p.integration.dt = dt;
  p.integration.t_end = t_end;
  p.integration.x0 = Matrix::Constant(1, 1, x0);
  p.integration.s0 = Vector::Constant(1, x0);
  return p;
}

NetworkProblem lorenz_problem(int nodes, Regime regime, double t_end, std::uint64_t seed) {
  NetworkProblem p{std::make_shared<LorenzModel>(),
                   nodes > 1 ? complete_laplacian(nodes) : zero_laplacian(1),
                   10.0 * Matrix::Identity(3, 3),
                   sample_mismatches(nodes, presets::lorenz_mismatch_caps(), seed),
                   ControllerSpec::open_loop(static_cast<std::size_t>(nodes)),
                   {}};
  if (regime == Regime::decentralized) {
    p.controller = ControllerSpec::decentralized(GainDiagonal::uniform(nodes, 10.0),
                                                 Vector::Ones(nodes));
  }
  p.integration.t_end = t_end;
  p.integration.seed = seed;
  p.integration.x0_lo = Vector::Constant(3, -10.0);
  p.integration.x0_hi = Vector::Constant(3, 10.0);
  return p;
}

}  // namespace

TEST_CASE("average error") {
  Matrix x(2, 3);
  x << 1, 0, 0, -1, 0, 0;
  const AverageError e = average_error(x);
  CHECK(e.per_node == x);
  CHECK(e.total == doctest::Approx(std::sqrt(2.0)));

  Matrix same(4, 3);
  same.rowwise() = Eigen::RowVector3d(1, 2, 3);
  CHECK(average_error(same).total == 0.0);
}

TEST_CASE("average error matches the R_N definition on random states") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int n : {2, 7, 50}) {
    Matrix x(n, 3);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = u(rng);
    const AverageError e = average_error(x);
    CHECK(e.per_node.colwise().sum().cwiseAbs().maxCoeff() <= 1e-9);
    // (R_N ⊗ I_3)·vec(x) with x stacked node by node is R_N·x in row layout.
    const double direct = (oracle::complete(n) * x).norm() / n;
    CHECK(e.total == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("reference error") {
  const Vector s = Eigen::Vector3d(1, -1, 2);
  Matrix x(2, 3);
  x.row(0) = (s + Eigen::Vector3d(3, 4, 0)).transpose();
  x.row(1) = s.transpose();
  const ReferenceError r = reference_error(x, s);
  CHECK(r.per_node(0) == doctest::Approx(5.0));
  CHECK(r.per_node(1) == 0.0);
  CHECK(r.total == doctest::Approx(5.0));
  CHECK(r.total * r.total == doctest::Approx(r.per_node.squaredNorm()));
}

TEST_CASE("network rhs agrees with the control laws") {
  NetworkProblem p = lorenz_problem(6, Regime::decentralized, 1.0, 3);
  NetworkState state = initial_state(p);
  state.gamma_hat.setRandom();
  const NetworkState d = network_rhs(state, p);
  const LorenzModel model;
  const Matrix coupling = p.l.matrix() * state.x;
  for (Eigen::Index i = 0; i < 6; ++i) {
    const Vector xi = state.x.row(i).transpose();
    const Vector gh = state.gamma_hat.row(i).transpose();
    const auto node = static_cast<std::size_t>(i);
    const Vector expected = model.drift(xi) + model.mismatch_basis(xi) * p.mismatch.at(node, 0.0) -
                            p.h * coupling.row(i).transpose() +
                            decentralized_input(xi, state.s, 10.0, gh, model, p.h);
    CHECK((d.x.row(i).transpose() - expected).norm() <= 1e-10 * (1.0 + expected.norm()));
    CHECK((d.gamma_hat.row(i).transpose() -
           decentralized_estimator_rate(xi, state.s, 1.0, model))
              .norm() <= 1e-10);
  }
  CHECK(d.s == model.drift(state.s));

  // Distributed route with B = 0 and unit pins everywhere matches the same formulas.
  p.controller = ControllerSpec::distributed(zero_laplacian(6), path_laplacian(6),
                                             GainDiagonal::uniform(6, 10.0),
                                             GainDiagonal::uniform(6, 2.0), Vector::Ones(6));
  const NetworkState dd = network_rhs(state, p);
  CHECK((dd.x - d.x).norm() <= 1e-10 * d.x.norm());
  for (std::size_t i = 0; i < 6; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    CHECK((dd.gamma_hat.row(row).transpose() -
           distributed_estimator_rate(i, state.x, state.s, p.controller, model))
              .norm() <= 1e-10);
  }
}

TEST_CASE("open-loop synchrony without mismatch is preserved") {
  NetworkProblem p = lorenz_problem(5, Regime::open_loop, 1.0, 1);
  p.mismatch = sample_mismatches(5, Vector::Zero(3), 1);
  NetworkState state = initial_state(p);
  state.x.rowwise() = state.s.transpose();
  const NetworkState d = network_rhs(state, p);
  const LorenzModel model;
  for (Eigen::Index i = 0; i < 5; ++i) CHECK(d.x.row(i).transpose() == model.drift(state.s));
  CHECK(average_error(d.x).total <= 1e-12 * d.x.norm());
}

TEST_CASE("single isolated node is the bare Lorenz field") {
  NetworkProblem p = lorenz_problem(1, Regime::open_loop, 1.0, 1);
  p.l = zero_laplacian(1);
  p.mismatch = sample_mismatches(1, Vector::Zero(3), 1);
  const NetworkState state = initial_state(p);
  const NetworkState d = network_rhs(state, p);
  CHECK(d.x.row(0).transpose() == LorenzModel().drift(Vector(state.x.row(0).transpose())));
}

TEST_CASE("rhs rejects non-finite states") {
  NetworkProblem p = lorenz_problem(2, Regime::open_loop, 1.0, 1);
  NetworkState state = initial_state(p);
  state.x(1, 2) = std::nan("");
  try {
    (void)network_rhs(state, p);
    FAIL("expected divergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::divergence);
  }
}

TEST_CASE("RK4 is fourth order on exponential decay") {
  std::vector<double> errors;
  for (double dt : {1e-2, 5e-3, 2.5e-3}) {
    const Trajectory traj = integrate(scalar_problem(-1.0, 1.0, dt, 5.0));
    CHECK(traj.final_state.t == doctest::Approx(5.0));
    errors.push_back(std::abs(traj.final_state.x(0, 0) - std::exp(-5.0)));
  }
  for (std::size_t i = 1; i < errors.size(); ++i) {
    const double ratio = errors[i - 1] / errors[i];
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 32.0);
  }
}

TEST_CASE("RK4 Richardson check on the Lorenz reference") {
  std::vector<Vector> finals;
  for (double dt : {1e-2, 5e-3, 2.5e-3}) {
    NetworkProblem p = lorenz_problem(1, Regime::open_loop, 1.0, 4);
    p.l = zero_laplacian(1);
    p.integration.dt = dt;
    finals.push_back(integrate(p).final_state.s);
  }
  const double coarse = (finals[0] - finals[1]).norm();
  const double fine = (finals[1] - finals[2]).norm();
  CHECK(coarse / fine >= 8.0);
  CHECK(coarse / fine <= 32.0);
}

TEST_CASE("zero dynamics stay constant") {
  const Trajectory traj = integrate(scalar_problem(0.0, 2.5, 1e-2, 1.0));
  CHECK(traj.final_state.x(0, 0) == 2.5);
  CHECK(traj.final_state.s(0) == 2.5);
  for (const auto& s : traj.samples) CHECK(s.e_avg == 0.0);
}

TEST_CASE("sampling records stride steps and the final time") {
  NetworkProblem p = scalar_problem(-1.0, 1.0, 0.1, 1.05);
  p.integration.stride = 3;
  const Trajectory traj = integrate(p);
  REQUIRE(traj.samples.size() >= 2);
  CHECK(traj.samples.front().t == 0.0);
  CHECK(traj.samples.back().t == doctest::Approx(1.05));
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    CHECK(traj.samples[i].t > traj.samples[i - 1].t);
  }
  CHECK(traj.samples[1].t == doctest::Approx(0.3));
}

TEST_CASE("integration is deterministic") {
  const NetworkProblem p = lorenz_problem(8, Regime::decentralized, 0.5, 12);
  std::ostringstream a, b;
  write_trajectory_csv(integrate(p), a);
  write_trajectory_csv(integrate(p), b);
  CHECK(a.str() == b.str());

  NetworkProblem other = p;
  other.integration.seed = 13;
  std::ostringstream c;
  write_trajectory_csv(integrate(other), c);
  CHECK(a.str() != c.str());
}

TEST_CASE("blow-up stops the run") {
  const Trajectory traj = integrate(scalar_problem(50.0, 1.0, 1e-3, 1.0));
  CHECK(traj.diverged);
  CHECK(traj.last_finite_t > 0.0);
  CHECK(traj.last_finite_t < 1.0);
  CHECK(std::isfinite(traj.final_state.x(0, 0)));
}

TEST_CASE("settling time") {
  Trajectory traj;
  for (int i = 0; i < 5; ++i) {
    TrajectorySample s;
    s.t = i;
    s.e_avg = std::vector<double>{3, 1, 2, 0.5, 0.4}[static_cast<std::size_t>(i)];
    traj.samples.push_back(s);
  }
  CHECK(settling_time(traj, 10.0) == 0.0);
  CHECK(settling_time(traj, 0.1) == std::nullopt);
  CHECK(settling_time(traj, 0.6) == 3.0);
  CHECK(settling_time(traj, 2.0) == 1.0);
  CHECK(settling_time(traj, 1.5) == 3.0);
  CHECK(settling_time(traj, 2.5) == 1.0);
  CHECK_THROWS_AS(settling_time(traj, 0.0), Error);
}

TEST_CASE("trajectory CSV") {
  NetworkProblem p = lorenz_problem(3, Regime::decentralized, 0.02, 2);
  p.integration.per_node = true;
  const Trajectory traj = integrate(p);
  std::ostringstream out;
  write_trajectory_csv(traj, out);
  std::istringstream in(out.str());
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "t,e_avg,e_ref,gamma_err,e_node_1,e_node_2,e_node_3");
  CHECK(std::count(first.begin(), first.end(), ',') == 6);
  CHECK(first.rfind("0,", 0) == 0);
}

TEST_CASE("problem validation") {
  NetworkProblem p = lorenz_problem(3, Regime::open_loop, 1.0, 1);
  p.h = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(p.validate(), Error);
  p = lorenz_problem(3, Regime::open_loop, 1.0, 1);
  p.integration.dt = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = lorenz_problem(3, Regime::open_loop, 1.0, 1);
  p.integration.x0_lo = Vector::Constant(2, -1.0);
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("initial estimate is configurable") {
  NetworkProblem p = lorenz_problem(4, Regime::decentralized, 0.1, 1);
  CHECK(initial_state(p).gamma_hat.isZero(0.0));
  p.integration.gamma_hat0 = Eigen::Vector3d(1.0, 2.0, 3.0);
  const NetworkState s = initial_state(p);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(s.gamma_hat.row(i) == Eigen::RowVector3d(1, 2, 3));
  p.integration.gamma_hat0 = Vector::Ones(2);
  CHECK_THROWS_AS(p.validate(), Error);
}
