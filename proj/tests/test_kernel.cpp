#include <cinfrbf/kernel.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "support/fd_oracle.hpp"
#include "support/random_rotation.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace cinfrbf;

TEST_CASE("profile values at reference points") {
  CHECK_THAT(phi(0.0, 2.0).value, Catch::Matchers::WithinRel(std::exp(-2.0), 1e-15));
  CHECK(phi(1.0, 2.0).value == 0.0);
  CHECK_FALSE(phi(1.0, 2.0).underflowed);
  // tan(pi/8) = sqrt(2) - 1, so (1+u)^2 = 2 exactly
  CHECK_THAT(phi(0.5, 2.0).value, Catch::Matchers::WithinRel(std::exp(-4.0), 1e-14));
  const profile_value near_edge = phi(0.999, 2.0);
  CHECK(near_edge.value == 0.0);
  CHECK(near_edge.underflowed);
}

TEST_CASE("profile rejects bad arguments") {
  CHECK_THROWS_AS(phi(-0.1, 2.0), std::domain_error);
  CHECK_THROWS_AS(phi(std::nan(""), 2.0), std::domain_error);
  CHECK_THROWS_AS(phi(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(phi(0.5, -1.0), std::domain_error);
}

TEST_CASE("compact support, range, and monotone decrease") {
  for (double t : {1.0, 1.5, 7.0, 1e9}) {
    CHECK(phi(t, 2.0).value == 0.0);
    CHECK(phi(t, 0.5).value == 0.0);
  }
  const double peak = std::exp(-2.0);
  double prev = peak;
  for (int i = 0; i <= 400; ++i) {
    const double t = i / 400.0;
    const double v = phi(t, 2.0).value;
    CHECK(v >= 0.0);
    CHECK(v <= peak * (1 + 1e-15));
    CHECK(v <= prev * (1 + 1e-15));  // decreasing for alpha >= 2
    prev = v;
  }
}

TEST_CASE("boundary flatness through the cot branch") {
  // approach t = 1 from below: values decay to exact zero with no sign change
  double prev = phi(1.0 - 1e-6, 2.0).value;
  for (double gap : {1e-7, 1e-8, 1e-9, 1e-10, 1e-12}) {
    const profile_value v = phi(1.0 - gap, 2.0);
    CHECK(v.value >= 0.0);
    CHECK(v.value <= prev);
    prev = v.value;
  }
  CHECK(phi(1.0 - 1e-12, 2.0).underflowed);
}

TEST_CASE("multivariate kernel and radial symmetry") {
  const kernel_params p21(2.0, 1.0);
  std::vector<double> origin{0.0, 0.0, 0.0};
  CHECK_THAT(phi_nd(origin, p21), Catch::Matchers::WithinRel(std::exp(-2.0), 1e-15));

  std::vector<double> boundary{0.6, 0.8};
  CHECK(phi_nd(boundary, p21) == 0.0);

  const kernel_params phalf(2.0, 0.5);
  std::vector<double> scaled{0.3, 0.4};
  CHECK(phi_nd(scaled, phalf) == 0.0);  // ||x||/delta = 1

  CHECK_THROWS_AS(phi_nd(std::vector<double>{}, p21), std::domain_error);
  std::vector<double> bad{0.1, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(phi_nd(bad, p21), std::domain_error);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  for (int d : {2, 3, 5}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> x(static_cast<std::size_t>(d));
      for (double& c : x) c = unif(rng);
      const auto q = random_rotation::orthogonal(d, rng);
      const std::vector<double> qx = random_rotation::apply(q, d, x);
      CHECK_THAT(phi_nd(qx, p21), Catch::Matchers::WithinAbs(phi_nd(x, p21), 1e-15));
    }
  }
}

TEST_CASE("derivative evaluation at the closed-form point") {
  const auto seq = f_sequence(2);
  // u = tan(pi/4) = 1: value is -8 pi e^{-8}
  const double expected = -8.0 * std::numbers::pi * std::exp(-8.0);
  CHECK_THAT(phi_sqrt_deriv(0.5, 2.0, 1, seq[0]), Catch::Matchers::WithinRel(expected, 1e-13));
}

TEST_CASE("derivative sign matches the sign rule") {
  const auto seq = f_sequence(2);
  for (double t : {0.1, 0.3, 0.5, 0.7}) {
    // j=1: F_1 > 0 on u >= 0, so the derivative is negative
    CHECK(phi_sqrt_deriv(t, 2.0, 1, seq[0]) < 0.0);
    // j=2 at alpha=2: F_2 >= 0, so the second derivative is positive
    CHECK(phi_sqrt_deriv(t, 2.0, 2, seq[1]) > 0.0);
  }
}

TEST_CASE("derivative argument checking") {
  const auto seq = f_sequence(3);
  CHECK_THROWS_AS(phi_sqrt_deriv(0.0, 2.0, 1, seq[0]), std::domain_error);
  CHECK_THROWS_AS(phi_sqrt_deriv(1.0, 2.0, 1, seq[0]), std::domain_error);
  CHECK_THROWS_AS(phi_sqrt_deriv(0.5, -2.0, 1, seq[0]), std::domain_error);
  // mismatched order/polynomial
  CHECK_THROWS_AS(phi_sqrt_deriv(0.5, 2.0, 2, seq[0]), std::domain_error);
  CHECK_THROWS_AS(phi_sqrt_deriv(0.5, 2.0, 1, seq[2]), std::domain_error);
}

TEST_CASE("derivatives agree with the finite-difference oracle up to order four") {
  const auto seq = f_sequence(4);
  for (double alpha : {2.0, 3.0}) {
    for (int i = 0; i < 10; ++i) {
      const double t = 0.05 + (0.8 - 0.05) * i / 9.0;
      for (int j = 1; j <= 4; ++j) {
        const double impl = phi_sqrt_deriv(t, alpha, j, seq[static_cast<std::size_t>(j - 1)]);
        const double ref = fd_oracle::derivative(t, alpha, j);
        CHECK_THAT(impl, Catch::Matchers::WithinRel(ref, 1e-5));
      }
    }
  }
}

TEST_CASE("recurrence consistency with the oracle up to order six") {
  const auto seq = f_sequence(6);
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> tdist(0.05, 0.8);
  std::uniform_real_distribution<double> adist(2.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double t = tdist(rng);
    const double alpha = adist(rng);
    for (int j = 1; j <= 6; ++j) {
      const double impl = phi_sqrt_deriv(t, alpha, j, seq[static_cast<std::size_t>(j - 1)]);
      const double ref = fd_oracle::derivative(t, alpha, j);
      CHECK_THAT(impl, Catch::Matchers::WithinRel(ref, 1e-5));
    }
  }
}

TEST_CASE("comparison kernel") {
  CHECK(wendland_c2(0.0) == 1.0);
  CHECK(wendland_c2(1.0) == 0.0);
  CHECK(wendland_c2(2.5) == 0.0);
  CHECK_THAT(wendland_c2(0.5), Catch::Matchers::WithinRel(0.1875, 1e-15));
  CHECK_THROWS_AS(wendland_c2(-0.25), std::domain_error);
}

TEST_CASE("kernel parameter validation") {
  CHECK_THROWS_AS(kernel_params(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(kernel_params(2.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(kernel_params(2.0, -0.4), std::domain_error);
  CHECK_NOTHROW(kernel_params(2.0, 0.4));
}
