#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "kinetx/iterate.hpp"
#include "kinetx/solver.hpp"
#include "test_support.hpp"

using namespace kinetx;
using testutil::Sampler;

namespace {
const RateParams fig1{2.0, 0.5};
const RateParams fig2{2.0, 50.0};

// x drawn uniformly inside the tanh-branch interval between its physical
// boundary and the fixed point, shrunk away from the saturated end where
// the conjugacy coordinate diverges.
double tanh_branch_point(Sampler& gen, const RateParams& rates) {
  const double x_eq = equilibrium_concentration(rates);
  const double boundary = rates.a > rates.b ? 0.0 : 1.0;
  const double q = gen.uniform(0.02, 0.98);
  return x_eq + (boundary - x_eq) * q;
}
}  // namespace

TEST_CASE("conjugacy context invariants") {
  const auto ctx = ConjugacyContext::make(fig2);
  CHECK_FALSE(ctx.degenerate);
  CHECK(ctx.tau == characteristic_time(fig2));
  CHECK(std::abs(ctx.step_shift - 1.0) <= 1e-15);

  const auto deg = ConjugacyContext::make({3.0, 3.0});
  CHECK(deg.degenerate);
  CHECK(deg.tau == characteristic_time({3.0, 3.0}));
}

TEST_CASE("w_inverse") {
  const auto ctx = ConjugacyContext::make(fig1);
  SUBCASE("tanh saturation reproduces the equilibrium") {
    CHECK(std::abs(w_inverse(ctx, 500.0) - equilibrium_concentration(fig1)) <=
          1e-14);
  }
  SUBCASE("inverse of the x0 = 0 offset") {
    CHECK(std::abs(w_inverse(ctx, std::atanh(0.5))) <= 1e-15);
  }
  SUBCASE("rejects the degenerate map") {
    CHECK_THROWS_AS(w_inverse(ConjugacyContext::make({1.0, 1.0}), 0.3),
                    std::invalid_argument);
  }
}

TEST_CASE("w_forward") {
  const auto ctx = ConjugacyContext::make(fig1);
  CHECK(w_forward(ctx, 0.0) ==
        doctest::Approx(0.5493061443340548).epsilon(1e-15));

  SUBCASE("fixed point saturates the domain") {
    CHECK_THROWS_AS(w_forward(ctx, 1.0 / 3.0), std::domain_error);
  }
  SUBCASE("coth side is out of domain") {
    CHECK_THROWS_AS(w_forward(ctx, 1.0), std::domain_error);
  }
  SUBCASE("round trip with w_inverse") {
    Sampler gen(301);
    for (int i = 0; i < 200; ++i) {
      const auto rates = gen.rates(1e-2, 1e2, 1.05, 1e2);
      const auto c = ConjugacyContext::make(rates);
      const double x = tanh_branch_point(gen, rates);
      CHECK(std::abs(w_inverse(c, w_forward(c, x)) - x) <= 1e-12);
    }
  }
}

TEST_CASE("step_v") {
  const auto ctx = ConjugacyContext::make(fig1);
  SUBCASE("fixed point of the map") {
    const double x_eq = equilibrium_concentration(fig1);
    CHECK(step_v(ctx, x_eq) == x_eq);
  }
  SUBCASE("one step equals the flow over tau") {
    CHECK(std::abs(step_v(ctx, 0.0) - solve_at(fig1, 0.0, ctx.tau)) <= 1e-12);
    CHECK(step_v(ctx, 0.0) ==
          doctest::Approx(0.2757806226933383).epsilon(1e-12));
  }
  SUBCASE("50 steps reach the equilibrium") {
    double x = 0.0;
    for (int i = 0; i < 50; ++i) x = step_v(ctx, x);
    CHECK(std::abs(x - 1.0 / 3.0) <= 1e-9);
  }
  SUBCASE("works on the coth side too") {
    Sampler gen(302);
    for (int i = 0; i < 100; ++i) {
      const auto rates = gen.rates(1e-2, 1e2, 1.05, 1e2);
      const auto c = ConjugacyContext::make(rates);
      const double x_eq = equilibrium_concentration(rates);
      const double boundary = rates.a > rates.b ? 1.0 : 0.0;  // far side
      const double x = x_eq + (boundary - x_eq) * gen.uniform(0.01, 1.0);
      CHECK(std::abs(step_v(c, x) - solve_at(rates, x, c.tau)) <= 1e-12);
    }
  }
  SUBCASE("rejects bad input") {
    CHECK_THROWS_AS(step_v(ctx, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(step_v(ConjugacyContext::make({1.0, 1.0}), 0.5),
                    std::invalid_argument);
  }
}

TEST_CASE("degenerate one-step map") {
  CHECK(step_v_degenerate(2.0, 0.5) == 0.5);
  CHECK(step_v_degenerate(1.0, 1.0) ==
        doctest::Approx(0.6839397205857212).epsilon(1e-15));

  SUBCASE("consistent with the exponential solution at tau = 1/(2b)") {
    Sampler gen(303);
    for (int i = 0; i < 100; ++i) {
      const double b = gen.log_uniform(1e-3, 1e3);
      const double x = gen.uniform(0.0, 1.0);
      CHECK(std::abs(step_v_degenerate(b, x) -
                     solve_a_equals_b(b, x, 1.0 / (2.0 * b))) <= 1e-12);
    }
  }
}

TEST_CASE("iterate_n") {
  const auto ctx = ConjugacyContext::make(fig1);
  SUBCASE("zero steps is the identity") {
    CHECK(iterate_n(ctx, 0.37, 0) == 0.37);
  }
  SUBCASE("three steps equal the flow at t = 3 tau") {
    const double got = iterate_n(ctx, 0.0, 3);
    CHECK(std::abs(got - solve_at(fig1, 0.0, 3.0)) <= 1e-10);
    CHECK(got == doctest::Approx(0.33223257520146454).epsilon(1e-12));
  }
  SUBCASE("fig. 2 parameters reach 5/6 after 100 steps") {
    const auto c2 = ConjugacyContext::make(fig2);
    CHECK(std::abs(iterate_n(c2, 1.0, 100) - 5.0 / 6.0) <= 1e-9);
  }
  SUBCASE("saturated iterates return the fixed point beyond the cap") {
    const double far = iterate_n(ctx, 0.0, 2'000'000'000);
    CHECK(std::abs(far - equilibrium_concentration(fig1)) <= 1e-14);
  }
  SUBCASE("degenerate context iterates the degenerate map") {
    const auto deg = ConjugacyContext::make({2.0, 2.0});
    const double got = iterate_n(deg, 1.0, 4);
    CHECK(std::abs(got - solve_a_equals_b(2.0, 1.0, 4.0 * deg.tau)) <= 1e-12);
  }
  SUBCASE("rejects negative m") {
    CHECK_THROWS_AS(iterate_n(ctx, 0.5, -1), std::invalid_argument);
  }
}

TEST_CASE("discrete iterates interpolate the continuous flow") {
  Sampler gen(304);
  for (int i = 0; i < 60; ++i) {
    const auto rates = gen.rates(1e-2, 1e2, 1.05, 1e2);
    const auto ctx = ConjugacyContext::make(rates);
    const double x0 = gen.uniform(0.0, 1.0);
    const auto m = static_cast<std::int64_t>(
        i % 2 == 0 ? gen.uniform(0.0, 30.0) : gen.uniform(0.0, 10000.0));
    const double discrete = iterate_n(ctx, x0, m);
    const double continuous =
        solve_at(rates, x0, static_cast<double>(m) * ctx.tau);
    CHECK(std::abs(discrete - continuous) <= 1e-10);
  }
}

TEST_CASE("additive Schroeder residual on the tanh branch") {
  Sampler gen(305);
  for (int i = 0; i < 200; ++i) {
    const auto rates = gen.rates(1e-2, 1e2, 1.05, 1e2);
    const auto ctx = ConjugacyContext::make(rates);
    CHECK(schroder_residual(ctx, tanh_branch_point(gen, rates)) <= 1e-10);
  }
  SUBCASE("midpoint between x0 = 0 and the fig. 1 equilibrium") {
    const auto ctx = ConjugacyContext::make(fig1);
    CHECK(schroder_residual(ctx, 0.5 / 3.0) <= 1e-10);
  }
}

TEST_CASE("multiplicative Schroeder constant of the degenerate map is 1/e") {
  Sampler gen(306);
  const double c = std::exp(-1.0);
  for (int i = 0; i < 200; ++i) {
    const double b = gen.log_uniform(1e-3, 1e3);
    double x = gen.uniform(0.0, 1.0);
    if (std::abs(x - 0.5) < 1e-8) x = 0.75;
    const double ratio = (step_v_degenerate(b, x) - 0.5) / (x - 0.5);
    CHECK(std::abs(ratio - c) <= 1e-10);
  }
}

TEST_CASE("semigroup residual") {
  SUBCASE("zero time legs are exact") {
    CHECK(semigroup_residual(fig1, 0.2, 0.0, 1.7) <= 1e-15);
    CHECK(semigroup_residual(fig1, 0.2, 1.7, 0.0) <= 1e-15);
  }
  SUBCASE("randomized sweep") {
    Sampler gen(307);
    for (int i = 0; i < 300; ++i) {
      const auto rates = gen.rates(1e-3, 1e3, 1.0, 1e4);
      const double tau = characteristic_time(rates);
      CHECK(semigroup_residual(rates, gen.uniform(0.0, 1.0),
                               gen.uniform(0.0, 5.0 * tau),
                               gen.uniform(0.0, 5.0 * tau)) <= 1e-10);
    }
  }
  SUBCASE("the exponential flow composes to tighter tolerance") {
    Sampler gen(308);
    for (int i = 0; i < 100; ++i) {
      const double b = gen.log_uniform(1e-2, 1e2);
      CHECK(semigroup_residual({b, b}, gen.uniform(0.0, 1.0),
                               gen.uniform(0.0, 5.0 / b),
                               gen.uniform(0.0, 5.0 / b)) <= 1e-12);
    }
  }
}

TEST_CASE("one step contracts toward the equilibrium") {
  Sampler gen(309);
  for (int i = 0; i < 200; ++i) {
    const auto rates = gen.rates(1e-2, 1e2, 1.0 + 1e-6, 1e4);
    const auto ctx = ConjugacyContext::make(rates);
    const double x_eq = equilibrium_concentration(rates);
    const double x = gen.uniform(0.0, 1.0);
    if (x == x_eq) continue;
    CHECK(std::abs(step_v(ctx, x) - x_eq) < std::abs(x - x_eq));
  }
}

TEST_CASE("one step closes at least 40% of the gap from either endpoint") {
  Sampler gen(310);
  for (int i = 0; i < 200; ++i) {
    const auto rates = gen.rates(1e-2, 1e2, 1.0 + 1e-6, 1e6);
    const auto ctx = ConjugacyContext::make(rates);
    const double x_eq = equilibrium_concentration(rates);
    for (const double x0 : {0.0, 1.0}) {
      const double before = std::abs(x0 - x_eq);
      const double after = std::abs(step_v(ctx, x0) - x_eq);
      CHECK(after <= 0.6 * before);
    }
  }
}
