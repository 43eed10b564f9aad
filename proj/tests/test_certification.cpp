#include "doctest.h"

#include <random>
#include <vector>

#include "netsync/certification.hpp"
#include "netsync/error.hpp"
#include "oracles.hpp"

using namespace netsync;

namespace {

std::vector<double> nonzero(const Matrix& l) {
  const Vector ev = oracle::eigenvalues(l);
  return {ev.data() + 1, ev.data() + ev.size()};
}

std::vector<double> all_of(const Matrix& m) {
  const Vector ev = oracle::eigenvalues(m);
  return {ev.data(), ev.data() + ev.size()};
}

Matrix reference_h() { return 10.0 * Matrix::Identity(3, 3); }

}  // namespace

TEST_CASE("lambda star on the reference network") {
  const QuadBound f = presets::lorenz_quad_bound();
  const auto mu = nonzero(oracle::complete(50));
  const double closed_form = 500.0 - (22.0 + std::sqrt(362.0));
  CHECK(lambda_star(f, reference_h(), mu) == doctest::Approx(closed_form).epsilon(1e-12));
  CHECK(std::abs(lambda_star(f, reference_h(), mu) - 458.97) < 0.01);
  CHECK(std::abs(lambda_star(f, reference_h(), mu) -
                 oracle::bisect_lambda_star(f.f, reference_h(), mu)) < 1e-9);
}

TEST_CASE("lambda star small examples") {
  const std::vector<double> one{1.0};
  CHECK(lambda_star(QuadBound(Matrix::Zero(3, 3)), Matrix::Identity(3, 3), one) ==
        doctest::Approx(1.0));
  const std::vector<double> half{0.5};
  CHECK(lambda_star(QuadBound(Matrix::Identity(3, 3)), Matrix::Identity(3, 3), half) ==
        doctest::Approx(-0.5));
  CHECK_THROWS_AS(lambda_star(QuadBound(Matrix::Identity(2, 2)), Matrix::Identity(2, 2), {}),
                  Error);
}

TEST_CASE("epsilon bound") {
  const UncertaintyBound bound = presets::lorenz_uncertainty_bound();
  const double ls = 500.0 - (22.0 + std::sqrt(362.0));
  const double eps = epsilon_bound(50, bound, ls);
  CHECK(eps >= 0.89);
  CHECK(eps <= 0.93);
  CHECK(eps == doctest::Approx(std::sqrt(50.0 * bound.worst_case_energy()) / ls));

  const UncertaintyBound zero(bound.gamma_matrix, Vector::Zero(3));
  CHECK(epsilon_bound(50, zero, ls) == 0.0);
  const UncertaintyBound unit(Matrix::Identity(1, 1), Vector::Ones(1));
  CHECK(epsilon_bound(1, unit, 1.0) == doctest::Approx(1.0));

  try {
    (void)epsilon_bound(50, bound, -0.1);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::certificate_failed);
  }
}

TEST_CASE("epsilon scales linearly with the mismatch corner") {
  const UncertaintyBound base = presets::lorenz_uncertainty_bound();
  for (double scale : {0.5, 2.0, 3.7}) {
    const UncertaintyBound scaled(base.gamma_matrix, scale * base.gamma_c);
    CHECK(epsilon_bound(50, scaled, 458.97) ==
          doctest::Approx(scale * epsilon_bound(50, base, 458.97)).epsilon(1e-12));
  }
}

TEST_CASE("bounded error certificate") {
  const auto report =
      check_bounded_error(presets::lorenz_quad_bound(), reference_h(), complete_laplacian(50),
                          presets::lorenz_uncertainty_bound());
  CHECK(report.satisfied);
  REQUIRE(report.lambda_star.has_value());
  REQUIRE(report.epsilon_bound.has_value());
  CHECK(*report.epsilon_bound == doctest::Approx(0.914926585).epsilon(1e-8));
  CHECK(report.binding_eigenvalue == doctest::Approx(50.0));

  CHECK_THROWS_AS(check_bounded_error(presets::lorenz_quad_bound(), reference_h(),
                                      zero_laplacian(4), presets::lorenz_uncertainty_bound()),
                  Error);
}

TEST_CASE("decentralized certificate") {
  const auto report = check_decentralized(presets::lorenz_quad_bound(), reference_h(),
                                          complete_laplacian(50), GainDiagonal::uniform(50, 10.0));
  CHECK(report.satisfied);
  // eig(R_50 + 10 I) ⊂ {10, 60}; the binding one is 10.
  CHECK(report.margin == doctest::Approx(100.0 - (22.0 + std::sqrt(362.0))));
  CHECK(report.binding_eigenvalue == doctest::Approx(10.0));

  const auto open = check_decentralized(presets::lorenz_quad_bound(), reference_h(),
                                        complete_laplacian(5), GainDiagonal::zeros(5));
  CHECK_FALSE(open.satisfied);
  CHECK_FALSE(open.warnings.empty());
}

TEST_CASE("distributed certificate") {
  const std::vector<std::size_t> pins{4, 15, 25, 34, 45};
  const GainDiagonal z = GainDiagonal::pinned(50, pins, 1.0);
  const Laplacian l = complete_laplacian(50);
  const Laplacian b = zero_laplacian(50);
  const auto report = check_distributed(presets::lorenz_quad_bound(), reference_h(), l, b, z);
  CHECK_FALSE(report.satisfied);
  CHECK(report.margin < 0.0);
  const double min_eig = oracle::eigenvalues(l.matrix() + z.as_matrix()).minCoeff();
  CHECK(report.binding_eigenvalue == doctest::Approx(min_eig).epsilon(1e-9));
  CHECK(report.margin ==
        doctest::Approx(oracle::bisect_lambda_star(presets::lorenz_quad_bound().f, reference_h(),
                                                   all_of(l.matrix() + z.as_matrix())))
            .epsilon(1e-9));

  const auto strong = check_distributed(presets::lorenz_quad_bound(), reference_h(), l, l,
                                        GainDiagonal::uniform(50, 10.0));
  CHECK(strong.satisfied);

  CHECK_THROWS_AS(check_distributed(presets::lorenz_quad_bound(), reference_h(), l,
                                    zero_laplacian(3), z),
                  Error);
}

TEST_CASE("mu threshold") {
  const double reference = mu_threshold(presets::lorenz_quad_bound(), reference_h());
  CHECK(reference == doctest::Approx((22.0 + std::sqrt(362.0)) / 10.0));
  CHECK(reference == doctest::Approx(4.1026).epsilon(1e-4));
  CHECK(mu_threshold(QuadBound(Matrix::Zero(3, 3)), Matrix::Identity(3, 3)) ==
        doctest::Approx(0.0).scale(1.0));
  CHECK(mu_threshold(QuadBound(Matrix::Identity(3, 3)), Matrix::Identity(3, 3)) ==
        doctest::Approx(1.0));
  Matrix singular = Matrix::Identity(3, 3);
  singular(2, 2) = 0.0;
  CHECK_THROWS_AS(mu_threshold(presets::lorenz_quad_bound(), singular), Error);
}

TEST_CASE("greedy pin selection") {
  const GainDiagonal complete = greedy_pin_selection(complete_laplacian(6), 3, 2.0);
  CHECK(complete.support() == std::vector<std::size_t>{0, 1, 2});
  CHECK(complete[0] == 2.0);

  // Exhaustive oracle for one pin on the 5-path.
  const Laplacian path = path_laplacian(5);
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < 5; ++i) {
    Matrix m = path.matrix();
    m(i, i) += 1.0;
    const double v = oracle::eigenvalues(m).minCoeff();
    if (v > best_value + 1e-12) {
      best_value = v;
      best = i;
    }
  }
  CHECK(best == 2);
  CHECK(greedy_pin_selection(path, 1, 1.0).support() == std::vector<std::size_t>{best});

  const GainDiagonal all = greedy_pin_selection(path, 5, 3.0);
  CHECK(all.as_matrix().isApprox(3.0 * Matrix::Identity(5, 5)));

  CHECK_THROWS_AS(greedy_pin_selection(path, 6, 1.0), Error);
  CHECK_THROWS_AS(greedy_pin_selection(path, -1, 1.0), Error);
}

TEST_CASE("closed form matches bisection on random instances") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> entry(-5.0, 5.0);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = dim(rng);
    Matrix f(n, n), root(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        f(i, j) = entry(rng);
        root(i, j) = entry(rng);
      }
    }
    const Matrix h = root * root.transpose() + 0.5 * Matrix::Identity(n, n);
    const auto mu = nonzero(oracle::random_laplacian(6, rng) + 0.1 * oracle::complete(6));
    CHECK(std::abs(lambda_star(QuadBound(f), h, mu) - oracle::bisect_lambda_star(f, h, mu)) <
          1e-9);
  }
}

TEST_CASE("margin never decreases when pinning gains grow") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> step(0.0, 2.0);
  std::uniform_int_distribution<int> node(0, 9);
  const QuadBound f = presets::lorenz_quad_bound();
  for (int trial = 0; trial < 20; ++trial) {
    const Laplacian l = Laplacian::from_matrix(oracle::random_laplacian(10, rng));
    Vector gains = Vector::Zero(10);
    gains(node(rng)) = 1.0;
    double previous = check_decentralized(f, reference_h(), l, GainDiagonal(gains)).margin;
    for (int k = 0; k < 5; ++k) {
      gains(node(rng)) += step(rng);
      const double next = check_decentralized(f, reference_h(), l, GainDiagonal(gains)).margin;
      CHECK(next >= previous - 1e-9);
      previous = next;
    }
  }
}

TEST_CASE("positive margin means negative definite at every eigenvalue") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  const QuadBound f = presets::lorenz_quad_bound();
  const Matrix h = reference_h();
  const Matrix fs = 0.5 * (f.f + f.f.transpose());
  const auto report =
      check_decentralized(f, h, complete_laplacian(8), GainDiagonal::uniform(8, 10.0));
  REQUIRE(report.satisfied);
  for (double mu : all_of(oracle::complete(8) + 10.0 * Matrix::Identity(8, 8))) {
    const Matrix m = fs - mu * h;
    for (int trial = 0; trial < 1000; ++trial) {
      Vector v(3);
      for (int j = 0; j < 3; ++j) v(j) = normal(rng);
      v.normalize();
      CHECK(v.dot(m * v) <= -report.margin + 1e-9);
    }
  }
}
