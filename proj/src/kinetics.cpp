#include "kinetx/kinetics.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace kinetx {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void ReactionSpec::validate() const {
  require(positive_finite(n), "ReactionSpec: n must be positive and finite");
  require(positive_finite(v_B), "ReactionSpec: v_B must be positive and finite");
  require(positive_finite(v_D), "ReactionSpec: v_D must be positive and finite");
  require(positive_finite(sigma_fwd),
          "ReactionSpec: sigma_fwd must be positive and finite");
  require(positive_finite(sigma_bwd),
          "ReactionSpec: sigma_bwd must be positive and finite");
}

void RateParams::validate() const {
  require(positive_finite(a), "RateParams: a must be positive and finite");
  require(positive_finite(b), "RateParams: b must be positive and finite");
}

bool is_concentration(double x) { return x >= 0.0 && x <= 1.0; }

double concentration_rate(const RateParams& rates, double x) {
  return rates.b + (rates.b - rates.a) * x * x - 2.0 * rates.b * x;
}

RateParams rates_from_spec(const ReactionSpec& spec) {
  spec.validate();
  return {spec.n * spec.v_D * spec.sigma_bwd, spec.n * spec.v_B * spec.sigma_fwd};
}

double equilibrium_concentration(const RateParams& rates) {
  rates.validate();
  const double sa = std::sqrt(rates.a);
  const double sb = std::sqrt(rates.b);
  return sb / (sa + sb);
}

FixedPoints fixed_points(const RateParams& rates) {
  rates.validate();
  if (rates.a == rates.b) return {0.5, std::nullopt, true};

  const double x_eq = equilibrium_concentration(rates);
  // Second root via the root product b / (b - a); avoids the cancellation
  // of the quadratic-formula difference when a is close to b.
  const double other = rates.b / ((rates.b - rates.a) * x_eq);

  // Classify by the slope of the rate polynomial rather than by formula.
  const auto slope = [&](double x) {
    return 2.0 * (rates.b - rates.a) * x - 2.0 * rates.b;
  };
  double stable = x_eq;
  double unstable = other;
  if (slope(stable) > 0.0) std::swap(stable, unstable);
  return {stable, unstable, false};
}

double equilibrium_ratio(const RateParams& rates) {
  rates.validate();
  return std::sqrt(rates.b / rates.a);
}

double characteristic_time(const RateParams& rates) {
  rates.validate();
  if (rates.a == rates.b) return 1.0 / (2.0 * rates.b);
  return 1.0 / std::sqrt(rates.a * rates.b);
}

bool near_degenerate(const RateParams& rates) {
  rates.validate();
  return std::abs(rates.a - rates.b) <= 1e-9 * std::max(rates.a, rates.b);
}

double tau_gain_loss_form(double n_A, double n_C, double rate_AC,
                          double rate_CA) {
  require(positive_finite(n_A), "tau_gain_loss_form: n_A must be positive");
  require(positive_finite(n_C), "tau_gain_loss_form: n_C must be positive");
  require(positive_finite(rate_AC),
          "tau_gain_loss_form: rate_AC must be positive");
  require(positive_finite(rate_CA),
          "tau_gain_loss_form: rate_CA must be positive");
  return std::sqrt(n_A * n_C) / ((n_A + n_C) * std::sqrt(rate_AC * rate_CA));
}

double mean_free_path(double n_B, double sigma) {
  require(positive_finite(n_B), "mean_free_path: n_B must be positive");
  require(positive_finite(sigma), "mean_free_path: sigma must be positive");
  return 1.0 / (n_B * sigma);
}

double free_flight_time(double n_B, double v_A, double sigma) {
  require(positive_finite(v_A), "free_flight_time: v_A must be positive");
  return mean_free_path(n_B, sigma) / v_A;
}

double pure_loss_fraction(double t, double tau_A) {
  require(t >= 0.0 && !std::isnan(t), "pure_loss_fraction: t must be >= 0");
  require(positive_finite(tau_A), "pure_loss_fraction: tau_A must be positive");
  return std::exp(-t / tau_A);
}

}  // namespace kinetx
