#include <cinfrbf/sturm.hpp>

#include <cinfrbf/bivar_poly.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace cinfrbf;

namespace {

std::vector<Rat> poly(std::initializer_list<long> coeffs) {
  std::vector<Rat> p;
  for (long c : coeffs) p.emplace_back(c);
  return p;
}

double eval_double(const std::vector<Rat>& p, double x) {
  double acc = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + to_double(p[k]);
  return acc;
}

}  // namespace

TEST_CASE("perfect square is nonnegative") {
  // (u-1)^2
  const auto v = sturm_nonneg_on_ray(poly({1, -2, 1}));
  CHECK(v.nonnegative);
  CHECK_FALSE(v.trivially_zero);
  CHECK(v.isolated_roots == 1);
}

TEST_CASE("dip below zero yields an exact counterexample") {
  // u^2 + 2u - 1 < 0 on (0, sqrt(2)-1)
  const std::vector<Rat> p = poly({-1, 2, 1});
  const auto v = sturm_nonneg_on_ray(p);
  REQUIRE_FALSE(v.nonnegative);
  CHECK(v.witness >= 0);
  CHECK(v.witness < Rat(1));  // inside the dip, left of sqrt(2)-1 < 1
  CHECK(v.witness_value < 0);
  // spot value from the contract: p(1/5) = -14/25
  Rat at_fifth = detail::rat_poly_eval(p, Rat(1, 5));
  CHECK(at_fifth == Rat(-14, 25));
}

TEST_CASE("third derivative polynomial at alpha 2 is certified") {
  const auto seq = f_sequence(3);
  const auto v = sturm_nonneg_on_ray(seq[2].restrict_a(Rat(2)));
  CHECK(v.nonnegative);
}

TEST_CASE("zero polynomial is flagged trivially nonnegative") {
  const auto v = sturm_nonneg_on_ray({});
  CHECK(v.nonnegative);
  CHECK(v.trivially_zero);
  const auto v2 = sturm_nonneg_on_ray(std::vector<Rat>{Rat(0), Rat(0)});
  CHECK(v2.nonnegative);
  CHECK(v2.trivially_zero);
}

TEST_CASE("negative leading coefficient is refuted") {
  // 100 + u - u^3
  const auto v = sturm_nonneg_on_ray(poly({100, 1, 0, -1}));
  REQUIRE_FALSE(v.nonnegative);
  CHECK(v.witness_value < 0);
}

TEST_CASE("negative constant term is refuted at zero") {
  const auto v = sturm_nonneg_on_ray(poly({-3, 10, 10}));
  REQUIRE_FALSE(v.nonnegative);
  CHECK(v.witness == 0);
  CHECK(v.witness_value == Rat(-3));
}

TEST_CASE("stripped zero root with a negative slope behind it") {
  // u(u - 1)^2 - touches zero, stays nonnegative
  const auto ok = sturm_nonneg_on_ray(poly({0, 1, -2, 1}));
  CHECK(ok.nonnegative);
  // u(u^2 + 2u - 1) = 2u^2... dips: x^3+2x^2-x
  const auto bad = sturm_nonneg_on_ray(poly({0, -1, 2, 1}));
  REQUIRE_FALSE(bad.nonnegative);
  CHECK(bad.witness > 0);
  CHECK(bad.witness_value < 0);
}

TEST_CASE("positive polynomial with no real roots") {
  const auto v = sturm_nonneg_on_ray(poly({5, 0, 1}));  // u^2 + 5
  CHECK(v.nonnegative);
  CHECK(v.isolated_roots == 0);
}

TEST_CASE("roots found exactly at dyadic bisection points") {
  // (u - 1/2)^2 (u - 3/2)^2: bisection of (0, B) walks straight into both roots
  std::vector<Rat> p{Rat(1)};
  auto mul_linear = [&](const Rat& root) {
    std::vector<Rat> q(p.size() + 1, Rat(0));
    for (std::size_t k = 0; k < p.size(); ++k) {
      q[k + 1] += p[k];
      q[k] -= p[k] * root;
    }
    p = std::move(q);
  };
  for (const Rat& r : {Rat(1, 2), Rat(1, 2), Rat(3, 2), Rat(3, 2)}) mul_linear(r);
  const auto v = sturm_nonneg_on_ray(p);
  CHECK(v.nonnegative);
  CHECK(v.isolated_roots == 2);

  // sink the whole curve slightly: both bumps dip below zero
  std::vector<Rat> q = p;
  q[0] -= Rat(1, 64);
  const auto w = sturm_nonneg_on_ray(q);
  REQUIRE_FALSE(w.nonnegative);
  CHECK(w.witness_value < 0);
}

TEST_CASE("verdicts agree with dense numeric scanning on random products") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> nfac(1, 3);
  std::uniform_int_distribution<long> root_num(-8, 8);
  std::uniform_int_distribution<long> shift(0, 6);
  for (int trial = 0; trial < 60; ++trial) {
    // product of (u - r_i)^2 (nonnegative) and possibly (u^2 + s) factors,
    // then optionally a sign-breaking linear factor
    std::vector<Rat> p{Rat(1)};
    auto mul_linear = [&](const Rat& root) {
      std::vector<Rat> q(p.size() + 1, Rat(0));
      for (std::size_t k = 0; k < p.size(); ++k) {
        q[k + 1] += p[k];
        q[k] -= p[k] * root;
      }
      p = std::move(q);
    };
    const int nf = nfac(rng);
    for (int f = 0; f < nf; ++f) {
      const Rat r(root_num(rng), 4);
      mul_linear(r);
      mul_linear(r);  // square it
    }
    const bool break_sign = trial % 3 == 0;
    if (break_sign) mul_linear(Rat(shift(rng) + 1));  // odd-multiplicity positive root

    const auto v = sturm_nonneg_on_ray(p);

    double numeric_min = 1e300;
    for (int i = 0; i <= 4000; ++i) {
      const double x = 12.0 * i / 4000.0;
      numeric_min = std::min(numeric_min, eval_double(p, x));
    }
    if (v.nonnegative) {
      CHECK(numeric_min >= -1e-9 * std::max(1.0, std::abs(numeric_min)));
    } else {
      CHECK(v.witness_value < 0);
      CHECK(detail::rat_poly_eval(p, v.witness) == v.witness_value);
    }
    if (break_sign) CHECK_FALSE(v.nonnegative);
  }
}

TEST_CASE("isolation handles clustered roots") {
  // roots at 1, 65/64, 33/32: squares keep it nonnegative
  std::vector<Rat> p{Rat(1)};
  auto mul_linear = [&](const Rat& root) {
    std::vector<Rat> q(p.size() + 1, Rat(0));
    for (std::size_t k = 0; k < p.size(); ++k) {
      q[k + 1] += p[k];
      q[k] -= p[k] * root;
    }
    p = std::move(q);
  };
  for (const Rat& r : {Rat(1), Rat(65, 64), Rat(33, 32)}) {
    mul_linear(r);
    mul_linear(r);
  }
  const auto v = sturm_nonneg_on_ray(p);
  CHECK(v.nonnegative);
  CHECK(v.isolated_roots == 3);
}
