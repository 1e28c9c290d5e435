#include "kinetx/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kinetx {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_concentration(double x) {
  require(is_concentration(x), "concentration must lie in [0,1]");
}

void require_time(double t) {
  require(t >= 0.0 && !std::isnan(t), "time must be >= 0");
}

// Below this relative separation 1/(b-a) amplifies rounding past use;
// the degenerate exponential solution with the mean rate is accurate to
// O(|a-b|/b) there, far below any contract tolerance.
constexpr double degenerate_rel_gap = 1e-12;

bool effectively_degenerate(const RateParams& rates) {
  return std::abs(rates.a - rates.b) <=
         degenerate_rel_gap * std::max(rates.a, rates.b);
}

// Phase beyond which tanh is 1 to double precision.
constexpr double phase_saturation = 20.0;

}  // namespace

const char* branch_name(Branch branch) {
  switch (branch) {
    case Branch::Tanh:
      return "tanh";
    case Branch::Coth:
      return "coth";
    case Branch::Fixed:
      return "fixed";
  }
  return "unknown";
}

namespace detail {

RiccatiParts riccati_parts(const RateParams& rates) {
  RiccatiParts parts;
  parts.x_stable = equilibrium_concentration(rates);
  parts.x_unstable = rates.b / ((rates.b - rates.a) * parts.x_stable);
  parts.sqrt_ab = std::sqrt(rates.a * rates.b);
  return parts;
}

double mobius_flow(const RiccatiParts& parts, double x, double phase_shift) {
  // u stays in (-1,1) for physical x, so 1 - u never vanishes.
  const double u0 = (x - parts.x_stable) / (x - parts.x_unstable);
  const double u = u0 * std::exp(-2.0 * phase_shift);
  const double value =
      parts.x_stable + (parts.x_stable - parts.x_unstable) * (u / (1.0 - u));
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace detail

BranchOffset integration_offset(const RateParams& rates, double x0) {
  rates.validate();
  require_concentration(x0);
  require(rates.a != rates.b,
          "integration_offset: a == b has no branch structure; use the "
          "degenerate solver");
  const double sqrt_ab = std::sqrt(rates.a * rates.b);
  const double s = (rates.b + (rates.a - rates.b) * x0) / sqrt_ab;
  if (s == 1.0) return {Branch::Fixed, 0.0};
  if (s < 1.0) return {Branch::Tanh, std::atanh(s)};
  return {Branch::Coth, std::atanh(1.0 / s)};  // arccoth(s), positive for s > 1
}

double solve_a_equals_b(double b, double x0, double t) {
  require(std::isfinite(b) && b > 0.0, "solve_a_equals_b: b must be positive");
  require_concentration(x0);
  require_time(t);
  if (t == 0.0) return x0;
  return 0.5 + std::exp(-2.0 * b * t) * (x0 - 0.5);
}

double solve_at(const RateParams& rates, double x0, double t) {
  rates.validate();
  require_concentration(x0);
  require_time(t);
  if (t == 0.0) return x0;
  if (effectively_degenerate(rates))
    return solve_a_equals_b(0.5 * (rates.a + rates.b), x0, t);
  const auto parts = detail::riccati_parts(rates);
  return detail::mobius_flow(parts, x0, parts.sqrt_ab * t);
}

double solve_at_branch_form(const RateParams& rates, double x0, double t) {
  rates.validate();
  require_concentration(x0);
  require_time(t);
  const auto offset = integration_offset(rates, x0);  // rejects a == b
  if (offset.branch == Branch::Fixed) return x0;
  const double sqrt_ab = std::sqrt(rates.a * rates.b);
  const double z = sqrt_ab * t + offset.offset;
  if (z > phase_saturation) return equilibrium_concentration(rates);
  const double hyper =
      offset.branch == Branch::Tanh ? std::tanh(z) : 1.0 / std::tanh(z);
  return (rates.b - sqrt_ab * hyper) / (rates.b - rates.a);
}

Trajectory solve_series(const RateParams& rates, double x0,
                        std::span<const double> times) {
  rates.validate();
  require_concentration(x0);
  Trajectory out;
  out.times.reserve(times.size());
  out.values.reserve(times.size());
  double prev = -1.0;
  for (const double t : times) {
    require_time(t);
    require(t > prev, "solve_series: times must be strictly increasing");
    prev = t;
    out.times.push_back(t);
    out.values.push_back(solve_at(rates, x0, t));
  }
  return out;
}

double solve_complement(const RateParams& rates, double x0_A, double t) {
  rates.validate();
  return solve_at({rates.b, rates.a}, x0_A, t);
}

}  // namespace kinetx
