#include "kinetx/iterate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kinetx/solver.hpp"

namespace kinetx {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_general(const ConjugacyContext& ctx, const char* what) {
  if (ctx.degenerate) {
    throw std::invalid_argument(std::string(what) +
                                ": a == b; use the degenerate map");
  }
}

constexpr std::int64_t max_composed_steps = 1'000'000;

}  // namespace

ConjugacyContext ConjugacyContext::make(const RateParams& rates) {
  rates.validate();
  ConjugacyContext ctx;
  ctx.rates = rates;
  ctx.degenerate = rates.a == rates.b;
  ctx.sqrt_ab = std::sqrt(rates.a * rates.b);
  ctx.tau = characteristic_time(rates);
  ctx.step_shift = ctx.sqrt_ab * ctx.tau;
  return ctx;
}

double w_inverse(const ConjugacyContext& ctx, double z) {
  require_general(ctx, "w_inverse");
  require(!std::isnan(z), "w_inverse: z must not be NaN");
  return (-ctx.rates.b + ctx.sqrt_ab * std::tanh(z)) /
         (ctx.rates.a - ctx.rates.b);
}

double w_forward(const ConjugacyContext& ctx, double x) {
  require_general(ctx, "w_forward");
  require(is_concentration(x), "w_forward: x must lie in [0,1]");
  const double s =
      (ctx.rates.b + (ctx.rates.a - ctx.rates.b) * x) / ctx.sqrt_ab;
  if (std::abs(s) >= 1.0) {
    throw std::domain_error(
        "w_forward: point outside the tanh branch (phase saturated)");
  }
  return std::atanh(s);
}

double step_v(const ConjugacyContext& ctx, double x) {
  require_general(ctx, "step_v");
  require(is_concentration(x), "step_v: x must lie in [0,1]");
  const auto parts = detail::riccati_parts(ctx.rates);
  return detail::mobius_flow(parts, x, ctx.step_shift);
}

double step_v_degenerate(double b, double x) {
  require(std::isfinite(b) && b > 0.0, "step_v_degenerate: b must be positive");
  require(is_concentration(x), "step_v_degenerate: x must lie in [0,1]");
  return 0.5 + std::exp(-1.0) * (x - 0.5);
}

double iterate_n(const ConjugacyContext& ctx, double x0, std::int64_t m) {
  require(is_concentration(x0), "iterate_n: x0 must lie in [0,1]");
  require(m >= 0, "iterate_n: m must be non-negative");
  const std::int64_t steps = std::min(m, max_composed_steps);
  double x = x0;
  for (std::int64_t i = 0; i < steps; ++i) {
    const double next =
        ctx.degenerate ? step_v_degenerate(ctx.rates.b, x) : step_v(ctx, x);
    if (next == x) return x;  // saturated at the fixed point
    x = next;
  }
  return x;
}

double schroder_residual(const ConjugacyContext& ctx, double x) {
  require_general(ctx, "schroder_residual");
  const double w_x = w_forward(ctx, x);
  const double w_vx = w_forward(ctx, step_v(ctx, x));
  return std::abs(w_vx - w_x - ctx.step_shift);
}

double semigroup_residual(const RateParams& rates, double x0, double t1,
                          double t2) {
  const double chained = solve_at(rates, solve_at(rates, x0, t1), t2);
  const double swapped = solve_at(rates, solve_at(rates, x0, t2), t1);
  const double direct = solve_at(rates, x0, t1 + t2);
  return std::max(std::abs(chained - direct), std::abs(chained - swapped));
}

}  // namespace kinetx
