#ifndef KINETX_KINETICS_HPP
#define KINETX_KINETICS_HPP

#include <optional>

// Rate construction, equilibria, fixed points and characteristic times for
// the reversible binary reaction A + B <-> C + D described by the master
// equation dX_C/dt = b + (b - a) X_C^2 - 2 b X_C on the relative
// concentration X_C = n_C / (n_A + n_C).
//
// All quantities are unit-agnostic: computations are valid in any consistent
// unit system (SI recommended).

namespace kinetx {

// Physical inputs of the reaction. All fields must be strictly positive
// and finite.
struct ReactionSpec {
  double n;          // total number density of species A + C
  double v_B;        // mean speed of species B
  double v_D;        // mean speed of species D
  double sigma_fwd;  // cross-section of A + B -> C + D
  double sigma_bwd;  // cross-section of C + D -> A + B

  void validate() const;  // throws std::invalid_argument
};

// Rate constants of the master equation, units 1/time.
//   a = n * v_D * sigma_bwd   (backward)
//   b = n * v_B * sigma_fwd   (forward)
struct RateParams {
  double a;
  double b;

  void validate() const;  // throws std::invalid_argument
};

// The two roots of dX_C/dt = 0. The stable root is the chemical
// equilibrium and always lies in [0,1]; the unstable root lies outside
// (0,1) and is absent in the degenerate a == b case, where the single
// physical value is 1/2.
struct FixedPoints {
  double x_stable;
  std::optional<double> x_unstable;
  bool degenerate;
};

// True iff x is a valid relative concentration in [0,1].
bool is_concentration(double x);

// Right side of the master equation, b + (b - a) x^2 - 2 b x.
double concentration_rate(const RateParams& rates, double x);

RateParams rates_from_spec(const ReactionSpec& spec);

// Roots of the rate polynomial classified by the sign of its derivative.
FixedPoints fixed_points(const RateParams& rates);

// Equilibrium concentration sqrt(b) / (sqrt(a) + sqrt(b)); equals
// fixed_points(rates).x_stable by construction, and 1/2 when a == b.
double equilibrium_concentration(const RateParams& rates);

// Equilibrium ratio X_C(inf) / X_A(inf) = sqrt(b / a).
double equilibrium_ratio(const RateParams& rates);

// One-step relaxation time: 1/sqrt(a b) for a != b, and 1/(2 b) for
// exact a == b. The two branches do not join continuously (the a -> b
// limit of the general formula is 1/b); near_degenerate() reports when a
// caller sits close enough to the jump that the choice matters.
double characteristic_time(const RateParams& rates);

// |a - b| <= 1e-9 * max(a, b).
bool near_degenerate(const RateParams& rates);

// Gain/loss form of the characteristic time,
// sqrt(n_A n_C) / ((n_A + n_C) sqrt(rate_AC * rate_CA)).
// For rates derived from a common (a, b) state this reduces to 1/sqrt(a b).
double tau_gain_loss_form(double n_A, double n_C, double rate_AC,
                          double rate_CA);

// Mean free path 1 / (n_B * sigma) of a beam particle in a medium.
double mean_free_path(double n_B, double sigma);

// Free-flight time 1 / (n_B * v_A * sigma).
double free_flight_time(double n_B, double v_A, double sigma);

// Pure-loss survival fraction exp(-t / tau_A), t >= 0.
double pure_loss_fraction(double t, double tau_A);

}  // namespace kinetx

#endif  // KINETX_KINETICS_HPP
