#ifndef KINETX_STATMECH_HPP
#define KINETX_STATMECH_HPP

// Equilibrium statistical-mechanics cross-check for the kinetic
// equilibrium: thermal wavelengths, fugacities, classical concentrations,
// equipartition speeds, and the detailed-balance relation
//
//   (g_C g_D / g_A g_B) (m_C m_D / m_A m_B)^(3/2)
//       = sqrt(v_A v_B / (v_C v_D)) * sigma_fwd / sigma_bwd
//
// which, with equipartition speeds v = sqrt(3 k T / m), collapses to
//   sigma_fwd / sigma_bwd = (g_C g_D / g_A g_B) (m_C m_D / m_A m_B)^(5/4).
//
// Restricted to the classical (non-relativistic, non-quantal) regime.

namespace kinetx {

// CODATA-2018 values; k_B is exact by definition, hbar derives from the
// exact h = 6.62607015e-34 J s.
inline constexpr double codata_hbar = 1.054571817e-34;  // J s
inline constexpr double codata_k_B = 1.380649e-23;      // J / K

struct ThermoSpecies {
  double mass;
  int degeneracy;         // internal degrees of freedom count, >= 1
  double chem_potential;  // mu, any sign

  void validate() const;
};

struct ThermoContext {
  double temperature;
  double hbar;
  double k_B;
  bool natural_units;  // hbar = k_B = 1

  static ThermoContext si(double temperature);
  static ThermoContext natural(double temperature);

  void validate() const;
};

struct ReactionQuartet {
  ThermoSpecies A, B, C, D;

  void validate() const;
};

struct SpeedSet {
  double v_A, v_B, v_C, v_D;

  void validate() const;
};

// de Broglie thermal wavelength hbar * sqrt(2 pi / (m k T)).
double thermal_wavelength(const ThermoSpecies& species,
                          const ThermoContext& ctx);

// Fugacity exp(mu / (k T)). Throws std::overflow_error when
// mu / (k T) > 700; large negative arguments underflow to 0 silently.
double fugacity(double mu, const ThermoContext& ctx);

// Classical equilibrium concentration g * fugacity / lambda^3.
double classical_concentration(const ThermoSpecies& species,
                               const ThermoContext& ctx);

// Equipartition mean speed sqrt(3 k T / m).
double equipartition_speed(double mass, const ThermoContext& ctx);

// Relative defect |LHS - RHS| / max(|LHS|, |RHS|) of the detailed-balance
// relation for caller-supplied speeds and cross-sections.
double detailed_balance_residual(const ReactionQuartet& quartet,
                                 const SpeedSet& speeds, double sigma_fwd,
                                 double sigma_bwd, const ThermoContext& ctx);

// Cross-section ratio sigma_fwd / sigma_bwd implied when all speeds
// follow equipartition: (g_C g_D / g_A g_B) (m_C m_D / m_A m_B)^(5/4).
double predicted_sigma_ratio(const ReactionQuartet& quartet);

}  // namespace kinetx

#endif  // KINETX_STATMECH_HPP
