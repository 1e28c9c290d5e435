#include <cmath>
#include <limits>
#include <stdexcept>

#include <doctest.h>

#include "kinetx/kinetics.hpp"
#include "test_support.hpp"

using namespace kinetx;
using testutil::Sampler;

TEST_CASE("rates_from_spec forms the products n v sigma") {
  SUBCASE("unit inputs") {
    const auto r = rates_from_spec({1.0, 1.0, 1.0, 1.0, 1.0});
    CHECK(r.a == 1.0);
    CHECK(r.b == 1.0);
  }
  SUBCASE("fast forward reaction") {
    const auto r = rates_from_spec({2.0, 5.0, 1.0, 5.0, 1.0});
    CHECK(r.a == 2.0);
    CHECK(r.b == 50.0);
  }
  SUBCASE("fast backward reaction") {
    const auto r = rates_from_spec({1.0, 0.5, 2.0, 1.0, 1.0});
    CHECK(r.a == 2.0);
    CHECK(r.b == 0.5);
  }
}

TEST_CASE("rates_from_spec rejects non-positive or non-finite inputs") {
  CHECK_THROWS_AS(rates_from_spec({0.0, 1.0, 1.0, 1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(rates_from_spec({1.0, -1.0, 1.0, 1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      rates_from_spec({1.0, 1.0, std::numeric_limits<double>::quiet_NaN(), 1.0,
                       1.0}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      rates_from_spec({1.0, 1.0, 1.0, std::numeric_limits<double>::infinity(),
                       1.0}),
      std::invalid_argument);
  CHECK_THROWS_AS(rates_from_spec({1.0, 1.0, 1.0, 1.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("fixed points of the rate polynomial") {
  SUBCASE("a=2, b=1/2") {
    const auto fp = fixed_points({2.0, 0.5});
    REQUIRE_FALSE(fp.degenerate);
    CHECK(fp.x_stable == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    REQUIRE(fp.x_unstable.has_value());
    CHECK(*fp.x_unstable == doctest::Approx(-1.0).epsilon(1e-12));
  }
  SUBCASE("a=2, b=50") {
    const auto fp = fixed_points({2.0, 50.0});
    CHECK(fp.x_stable == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    REQUIRE(fp.x_unstable.has_value());
    CHECK(*fp.x_unstable == doctest::Approx(1.25).epsilon(1e-12));
  }
  SUBCASE("degenerate a=b") {
    const auto fp = fixed_points({3.0, 3.0});
    CHECK(fp.degenerate);
    CHECK(fp.x_stable == 0.5);
    CHECK_FALSE(fp.x_unstable.has_value());
  }
  SUBCASE("stable root is the equilibrium formula, bit for bit") {
    Sampler gen(101);
    for (int i = 0; i < 50; ++i) {
      const auto rates = gen.rates(1e-6, 1e6, 1.0 + 1e-6, 1e6);
      CHECK(fixed_points(rates).x_stable == equilibrium_concentration(rates));
    }
  }
  SUBCASE("root locations over a wide parameter sweep") {
    Sampler gen(102);
    for (int i = 0; i < 200; ++i) {
      const auto rates = gen.rates(1e-6, 1e6, 1.0 + 1e-9, 1e6);
      const auto fp = fixed_points(rates);
      CHECK(fp.x_stable >= 0.0);
      CHECK(fp.x_stable <= 1.0);
      REQUIRE(fp.x_unstable.has_value());
      const bool outside = *fp.x_unstable <= 0.0 || *fp.x_unstable >= 1.0;
      CHECK(outside);
    }
  }
}

TEST_CASE("equilibrium concentration and ratio") {
  CHECK(equilibrium_concentration({2.0, 0.5}) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(equilibrium_concentration({2.0, 50.0}) ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(equilibrium_concentration({7.0, 7.0}) == 0.5);

  CHECK(equilibrium_ratio({3.0, 3.0}) == 1.0);
  CHECK(equilibrium_ratio({2.0, 50.0}) == 5.0);
  CHECK(equilibrium_ratio({2.0, 0.5}) == 0.5);

  SUBCASE("complement symmetry and ratio product") {
    Sampler gen(103);
    for (int i = 0; i < 200; ++i) {
      const auto rates = gen.rates(1e-6, 1e6, 1.0, 1e6);
      const RateParams swapped{rates.b, rates.a};
      CHECK(equilibrium_concentration(rates) +
                equilibrium_concentration(swapped) ==
            doctest::Approx(1.0).epsilon(1e-12));
      CHECK(equilibrium_ratio(rates) * equilibrium_ratio(swapped) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("characteristic time: both branches") {
  CHECK(characteristic_time({2.0, 0.5}) == 1.0);
  CHECK(characteristic_time({2.0, 50.0}) == 0.1);
  CHECK(characteristic_time({2.0, 2.0}) == 0.25);  // 1/(2b), not the a!=b limit

  SUBCASE("swap invariance is exact") {
    Sampler gen(104);
    for (int i = 0; i < 100; ++i) {
      const auto rates = gen.rates(1e-6, 1e6, 1.0, 1e6);
      CHECK(characteristic_time(rates) ==
            characteristic_time({rates.b, rates.a}));
    }
  }
  SUBCASE("doubling n halves tau exactly") {
    Sampler gen(105);
    for (int i = 0; i < 100; ++i) {
      const ReactionSpec spec{gen.log_uniform(1e-3, 1e3),
                              gen.log_uniform(1e-3, 1e3),
                              gen.log_uniform(1e-3, 1e3),
                              gen.log_uniform(1e-3, 1e3),
                              gen.log_uniform(1e-3, 1e3)};
      ReactionSpec doubled = spec;
      doubled.n = 2.0 * spec.n;
      const auto r1 = rates_from_spec(spec);
      const auto r2 = rates_from_spec(doubled);
      CHECK(r2.a == 2.0 * r1.a);
      CHECK(r2.b == 2.0 * r1.b);
      CHECK(characteristic_time(r2) == 0.5 * characteristic_time(r1));
    }
  }
}

TEST_CASE("near-degenerate flag") {
  CHECK(near_degenerate({1.0, 1.0}));
  CHECK(near_degenerate({1.0, 1.0 + 0x1.0p-30}));  // gap ~9.3e-10
  CHECK_FALSE(near_degenerate({1.0, 1.000001}));
  CHECK_FALSE(near_degenerate({2.0, 0.5}));
}

TEST_CASE("gain/loss form of the characteristic time") {
  SUBCASE("worked example, a=2 b=1/2 at X_A = X_C = 1/2") {
    CHECK(tau_gain_loss_form(1.0, 1.0, 0.25, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("symmetric reduction to 1/(2r)") {
    CHECK(tau_gain_loss_form(3.0, 3.0, 2.0, 2.0) ==
          doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("identity with characteristic_time on self-consistent states") {
    Sampler gen(106);
    for (int i = 0; i < 200; ++i) {
      const auto rates = gen.rates(1e-3, 1e3, 1.0, 1e4);
      const double n = gen.log_uniform(1e-3, 1e3);
      const double x_c = gen.uniform(1e-3, 1.0 - 1e-3);
      const double x_a = 1.0 - x_c;
      const double tau = tau_gain_loss_form(n * x_a, n * x_c, rates.b * x_a,
                                            rates.a * x_c);
      CHECK(testutil::rel_err(tau, characteristic_time(rates)) <= 1e-12);
    }
  }
  SUBCASE("rejects non-positive inputs") {
    CHECK_THROWS_AS(tau_gain_loss_form(0.0, 1.0, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(tau_gain_loss_form(1.0, 1.0, -1.0, 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("free-flight quantities") {
  CHECK(mean_free_path(1.0, 1.0) == 1.0);
  CHECK(mean_free_path(2.0, 0.5) == 1.0);
  CHECK(mean_free_path(10.0, 0.1) == 1.0);
  CHECK_THROWS_AS(mean_free_path(0.0, 1.0), std::invalid_argument);

  CHECK(free_flight_time(1.0, 1.0, 1.0) == 1.0);
  CHECK(free_flight_time(1.0, 2.0, 1.0) == 0.5);
  CHECK(free_flight_time(4.0, 0.5, 0.5) == 1.0);
  CHECK_THROWS_AS(free_flight_time(1.0, -2.0, 1.0), std::invalid_argument);
}

TEST_CASE("pure-loss decay") {
  CHECK(pure_loss_fraction(0.0, 2.0) == 1.0);
  CHECK(pure_loss_fraction(2.0, 2.0) ==
        doctest::Approx(0.36787944117144233).epsilon(1e-15));
  CHECK(pure_loss_fraction(1e6, 1.0) == 0.0);  // underflows to the asymptote
  CHECK_THROWS_AS(pure_loss_fraction(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(pure_loss_fraction(1.0, 0.0), std::invalid_argument);

  SUBCASE("monotone non-increasing in t") {
    double prev = 1.0;
    for (int i = 1; i <= 100; ++i) {
      const double f = pure_loss_fraction(0.3 * i, 7.0);
      CHECK(f <= prev);
      prev = f;
    }
  }
}

TEST_CASE("concentration rate vanishes at the stable fixed point") {
  Sampler gen(107);
  for (int i = 0; i < 100; ++i) {
    const auto rates = gen.rates(1e-3, 1e3, 1.0, 1e4);
    const double rate =
        concentration_rate(rates, equilibrium_concentration(rates));
    CHECK(std::abs(rate) <= 1e-12 * std::max(rates.a, rates.b));
  }
}
