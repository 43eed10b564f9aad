#include "doctest.h"

#include <random>

#include "netsync/dynamics.hpp"
#include "netsync/error.hpp"

using namespace netsync;

TEST_CASE("Lorenz drift") {
  const LorenzParams p;
  const Eigen::Vector3d f0 = lorenz_drift(Eigen::Vector3d::Zero(), p);
  CHECK(f0.isZero(0.0));

  const Eigen::Vector3d fx = lorenz_drift(Eigen::Vector3d(1, 0, 0), p);
  CHECK(fx.isApprox(Eigen::Vector3d(-10, 28, 0)));

  const Eigen::Vector3d f1 = lorenz_drift(Eigen::Vector3d(1, 1, 1), p);
  CHECK(f1(0) == doctest::Approx(0.0));
  CHECK(f1(1) == doctest::Approx(26.0));
  CHECK(f1(2) == doctest::Approx(1.0 - 8.0 / 3.0));

  // Nontrivial equilibrium (±√(c(b−1)), ±√(c(b−1)), b−1).
  const double r = std::sqrt(p.c * (p.b - 1.0));
  CHECK(lorenz_drift(Eigen::Vector3d(r, r, p.b - 1.0), p).norm() < 1e-12);

  const LorenzModel model;
  const Vector x = Vector::LinSpaced(3, -2.0, 4.0);
  CHECK((model.drift(x) - lorenz_drift(x, p)).norm() == 0.0);
}

TEST_CASE("Lorenz mismatch basis") {
  const Eigen::Matrix3d g = lorenz_mismatch_basis(Eigen::Vector3d(5, 5, 0));
  CHECK(g.isApprox(Eigen::Vector3d(0, 5, 0).asDiagonal().toDenseMatrix()));
  CHECK(lorenz_mismatch_basis(Eigen::Vector3d::Zero()).isZero(0.0));
  Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
  expected.diagonal() << 2, 1, -2;
  CHECK(lorenz_mismatch_basis(Eigen::Vector3d(1, 3, 2)) == expected);

  // A mismatch of exactly δ(a, b, c) reproduces the drift with perturbed parameters.
  const LorenzParams p;
  const LorenzParams q{p.a + 0.5, p.b - 1.0, p.c + 0.25};
  const Eigen::Vector3d x(1.5, -2.0, 7.0);
  const Eigen::Vector3d gamma(0.5, -1.0, 0.25);
  CHECK((lorenz_drift(x, p) + lorenz_mismatch_basis(x) * gamma - lorenz_drift(x, q)).norm() <
        1e-12);
}

TEST_CASE("structured mismatch products match the dense basis") {
  const LorenzModel lorenz;
  const LinearModel linear(Matrix::Identity(3, 3) * -2.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Vector x(3), gamma(3);
    for (int j = 0; j < 3; ++j) {
      x(j) = u(rng);
      gamma(j) = u(rng) / 10.0;
    }
    for (const OscillatorModel* m : {static_cast<const OscillatorModel*>(&lorenz),
                                     static_cast<const OscillatorModel*>(&linear)}) {
      const Matrix g = m->mismatch_basis(x);
      Vector out(3), back(3);
      m->apply_mismatch(x, gamma, out);
      m->apply_mismatch_transpose(x, gamma, back);
      CHECK((out - g * gamma).norm() <= 1e-12 * (1.0 + out.norm()));
      CHECK((back - g.transpose() * gamma).norm() <= 1e-12 * (1.0 + back.norm()));
      // Diagonal basis: ‖Gγ‖² = Σ_j G_jj² γ_j².
      const double energy = (g.diagonal().array().square() * gamma.array().square()).sum();
      CHECK(out.squaredNorm() == doctest::Approx(energy).epsilon(1e-12));
    }
  }
}

TEST_CASE("mismatch sampling") {
  const Vector caps = presets::lorenz_mismatch_caps();
  CHECK(caps(0) == doctest::Approx(1.0));
  CHECK(caps(1) == doctest::Approx(2.8));
  CHECK(caps(2) == doctest::Approx(0.26667).epsilon(1e-4));

  const MismatchEnsemble a = sample_mismatches(50, caps, 9);
  const MismatchEnsemble b = sample_mismatches(50, caps, 9);
  const MismatchEnsemble c = sample_mismatches(50, caps, 10);
  CHECK(a.gammas == b.gammas);
  CHECK(a.gammas != c.gammas);
  CHECK(a.gammas.rows() == 50);
  CHECK(a.within_bounds());
  for (int j = 0; j < 3; ++j) CHECK(a.gammas.col(j).cwiseAbs().maxCoeff() <= caps(j));
  CHECK(a.at(7, 3.0) == a.gammas.row(7).transpose());

  CHECK_THROWS_AS(sample_mismatches(4, Vector::Constant(3, -1.0), 1), Error);
  CHECK(sample_mismatches(5, Vector::Zero(3), 4).gammas.isZero(0.0));
  CHECK(corner_gamma_c(caps) == caps);
  CHECK(corner_gamma_c(Vector::Zero(3)).isZero(0.0));
  CHECK(corner_gamma_c(Eigen::Vector3d(1, 0, 2)) == Eigen::Vector3d(1, 0, 2));
}

TEST_CASE("sinusoidal variation stays inside the box") {
  MismatchEnsemble ens = sample_mismatches(10, presets::lorenz_mismatch_caps(), 2);
  attach_sinusoidal_variation(ens, 0.7);
  for (double t = 0.0; t < 20.0; t += 0.37) {
    for (std::size_t i = 0; i < ens.nodes(); ++i) {
      const Vector g = ens.at(i, t);
      CHECK((g.cwiseAbs().array() <= ens.gammas.row(i).transpose().cwiseAbs().array() + 1e-15)
                .all());
    }
  }
  CHECK(ens.at(0, 0.0).isApprox(ens.gammas.row(0).transpose()));
}

TEST_CASE("reference bound matrices") {
  Matrix f(3, 3);
  f << 21, 10, 0, 28, 23, 0, 0, 0, 40;
  CHECK(presets::lorenz_quad_bound().f == f);
  const Matrix gamma = presets::lorenz_gamma_matrix();
  CHECK(gamma.diagonal() == Eigen::Vector3d(213, 400, 2500));
  const UncertaintyBound bound = presets::lorenz_uncertainty_bound();
  const double energy = 213.0 * 1.0 + 400.0 * 2.8 * 2.8 + 2500.0 * (0.8 / 3.0) * (0.8 / 3.0);
  CHECK(bound.worst_case_energy() == doctest::Approx(energy).epsilon(1e-4));

  Matrix indefinite = Matrix::Identity(3, 3);
  indefinite(1, 1) = -1.0;
  CHECK_THROWS_AS(UncertaintyBound(indefinite, Vector::Ones(3)), Error);
  CHECK_THROWS_AS(UncertaintyBound(Matrix::Identity(3, 3), Vector::Ones(2)), Error);
}
