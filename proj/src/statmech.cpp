#include "kinetx/statmech.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kinetx {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void ThermoSpecies::validate() const {
  require(positive_finite(mass), "ThermoSpecies: mass must be positive");
  require(degeneracy >= 1, "ThermoSpecies: degeneracy must be >= 1");
  require(std::isfinite(chem_potential),
          "ThermoSpecies: chem_potential must be finite");
}

void ThermoContext::validate() const {
  require(positive_finite(temperature),
          "ThermoContext: temperature must be positive");
  require(positive_finite(hbar), "ThermoContext: hbar must be positive");
  require(positive_finite(k_B), "ThermoContext: k_B must be positive");
}

ThermoContext ThermoContext::si(double temperature) {
  ThermoContext ctx{temperature, codata_hbar, codata_k_B, false};
  ctx.validate();
  return ctx;
}

ThermoContext ThermoContext::natural(double temperature) {
  ThermoContext ctx{temperature, 1.0, 1.0, true};
  ctx.validate();
  return ctx;
}

void ReactionQuartet::validate() const {
  A.validate();
  B.validate();
  C.validate();
  D.validate();
}

void SpeedSet::validate() const {
  require(positive_finite(v_A), "SpeedSet: v_A must be positive");
  require(positive_finite(v_B), "SpeedSet: v_B must be positive");
  require(positive_finite(v_C), "SpeedSet: v_C must be positive");
  require(positive_finite(v_D), "SpeedSet: v_D must be positive");
}

double thermal_wavelength(const ThermoSpecies& species,
                          const ThermoContext& ctx) {
  species.validate();
  ctx.validate();
  return ctx.hbar *
         std::sqrt(2.0 * std::numbers::pi /
                   (species.mass * ctx.k_B * ctx.temperature));
}

double fugacity(double mu, const ThermoContext& ctx) {
  ctx.validate();
  require(std::isfinite(mu), "fugacity: mu must be finite");
  const double arg = mu / (ctx.k_B * ctx.temperature);
  if (arg > 700.0) {
    throw std::overflow_error("fugacity: mu/(k_B T) > 700 overflows a double");
  }
  return std::exp(arg);
}

double classical_concentration(const ThermoSpecies& species,
                               const ThermoContext& ctx) {
  const double lambda = thermal_wavelength(species, ctx);
  const double z = fugacity(species.chem_potential, ctx);
  return static_cast<double>(species.degeneracy) * z /
         (lambda * lambda * lambda);
}

double equipartition_speed(double mass, const ThermoContext& ctx) {
  ctx.validate();
  require(positive_finite(mass), "equipartition_speed: mass must be positive");
  return std::sqrt(3.0 * ctx.k_B * ctx.temperature / mass);
}

double detailed_balance_residual(const ReactionQuartet& quartet,
                                 const SpeedSet& speeds, double sigma_fwd,
                                 double sigma_bwd, const ThermoContext& ctx) {
  quartet.validate();
  speeds.validate();
  ctx.validate();
  require(positive_finite(sigma_fwd),
          "detailed_balance_residual: sigma_fwd must be positive");
  require(positive_finite(sigma_bwd),
          "detailed_balance_residual: sigma_bwd must be positive");

  const double g_ratio =
      (static_cast<double>(quartet.C.degeneracy) * quartet.D.degeneracy) /
      (static_cast<double>(quartet.A.degeneracy) * quartet.B.degeneracy);
  const double m_ratio =
      (quartet.C.mass * quartet.D.mass) / (quartet.A.mass * quartet.B.mass);
  const double lhs = g_ratio * std::pow(m_ratio, 1.5);
  const double rhs = std::sqrt((speeds.v_A * speeds.v_B) /
                               (speeds.v_C * speeds.v_D)) *
                     (sigma_fwd / sigma_bwd);
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
}

double predicted_sigma_ratio(const ReactionQuartet& quartet) {
  quartet.validate();
  const double g_ratio =
      (static_cast<double>(quartet.C.degeneracy) * quartet.D.degeneracy) /
      (static_cast<double>(quartet.A.degeneracy) * quartet.B.degeneracy);
  const double m_ratio =
      (quartet.C.mass * quartet.D.mass) / (quartet.A.mass * quartet.B.mass);
  return g_ratio * std::pow(m_ratio, 1.25);
}

}  // namespace kinetx
