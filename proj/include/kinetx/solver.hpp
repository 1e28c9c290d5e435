#ifndef KINETX_SOLVER_HPP
#define KINETX_SOLVER_HPP

#include <span>
#include <vector>

#include "kinetx/kinetics.hpp"

// Closed-form solution of the master equation for any admissible initial
// condition and time.
//
// For a != b the solution is X_C(t) = [b - sqrt(ab) tanh(sqrt(ab) t + K)]
// / (b - a) with K fixed by the initial condition. The tanh form is only
// defined when s = (b + (a - b) x0) / sqrt(ab) < 1, which holds on one
// side of the equilibrium; initial conditions on the far side need the
// coth continuation (same expression with coth/arccoth). Internally both
// branches are evaluated through the equivalent two-fixed-point Moebius
// form (X - X+) / (X - X-) = u0 exp(-2 sqrt(ab) t), which has no branch
// switch and no pole for physical inputs; the explicit branch formulas
// are kept as a reference path (solve_at_branch_form) and the two agree
// to 1e-12 wherever both are defined.

namespace kinetx {

enum class Branch { Tanh, Coth, Fixed };

// Integration constant of the closed form together with the branch it
// belongs to. offset is the paper-form phase: arctanh(s) on the tanh
// branch, arccoth(s) on the coth branch, 0 at the fixed point (s == 1).
struct BranchOffset {
  Branch branch;
  double offset;
};

// Sampled concentration curve: times strictly increasing, values in [0,1].
struct Trajectory {
  std::vector<double> times;
  std::vector<double> values;
};

const char* branch_name(Branch branch);

// Branch classification and phase for a != b; rejects a == b.
BranchOffset integration_offset(const RateParams& rates, double x0);

// X_C(t) from initial value x0 at t >= 0. Handles both branches and the
// degenerate regime (|a - b| <= 1e-12 max(a,b) delegates to
// solve_a_equals_b with the mean rate). Exact identity at t == 0.
double solve_at(const RateParams& rates, double x0, double t);

// Literal tanh/coth evaluation of the closed form (reference path).
// Returns the equilibrium value once the phase exceeds tanh saturation.
double solve_at_branch_form(const RateParams& rates, double x0, double t);

// Degenerate a == b solution 1/2 + exp(-2 b t) (x0 - 1/2).
double solve_a_equals_b(double b, double x0, double t);

// Element-wise solve_at over a strictly increasing, non-negative grid.
Trajectory solve_series(const RateParams& rates, double x0,
                        std::span<const double> times);

// X_A(t) for initial value x0_A, computed with the parameters exchanged;
// equals 1 - solve_at(rates, 1 - x0_A, t).
double solve_complement(const RateParams& rates, double x0_A, double t);

namespace detail {

// Fixed points and decay rate of the Moebius form. x_unstable is computed
// from the root product b / (b - a), which stays well-conditioned as
// a -> b where the quadratic-formula difference cancels.
struct RiccatiParts {
  double x_stable;
  double x_unstable;
  double sqrt_ab;
};

RiccatiParts riccati_parts(const RateParams& rates);

// One Moebius update of the flow: decay of u = (x - x+) / (x - x-) by a
// factor exp(-2 * phase_shift).
double mobius_flow(const RiccatiParts& parts, double x, double phase_shift);

}  // namespace detail

}  // namespace kinetx

#endif  // KINETX_SOLVER_HPP
