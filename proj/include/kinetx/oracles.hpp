#ifndef KINETX_ORACLES_HPP
#define KINETX_ORACLES_HPP

#include <cstdint>
#include <span>

#include "kinetx/kinetics.hpp"
#include "kinetx/solver.hpp"

// Independent ground-truth generators used to validate the closed-form
// solver: a fixed-step RK4 integration of the master equation and an
// exact finite-N stochastic event simulation whose ensemble mean
// converges to the kinetic solution. Neither touches the analytic path.

namespace kinetx {

// One stochastic realization: counts[i] is the number of C particles
// after the event at times[i] (times[0] == 0 holds the initial state).
// A-particle counts are n_total - counts[i]; the pair total is conserved
// exactly by construction.
struct StochasticRun {
  std::vector<double> times;
  std::vector<std::int64_t> counts;
  std::int64_t n_total = 0;
  std::uint64_t seed = 0;
};

// Ensemble mean of X_C over independent trials with per-point standard
// error of the mean.
struct EnsembleMean {
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> std_error;
  std::int64_t n_total = 0;
  int trials = 0;
  std::uint64_t seed = 0;
};

// Classical fixed-step fourth-order integration of the master equation
// from x0 to t_end. Values are clamped to [0,1]; if max_excursion is
// non-null it receives the largest distance any raw step landed outside
// [0,1] (anything above ~1e-12 means dt is too coarse for the rates).
Trajectory rk4_integrate(const RateParams& rates, double x0, double t_end,
                         double dt, double* max_excursion = nullptr);

// Nearest integer to x0 * n_total with ties rounded to even.
std::int64_t round_particle_count(double x0, std::int64_t n_total);

// Exact event-driven simulation with total event rates
// N b X_A^2 (A -> C) and N a X_C^2 (C -> A), exponential waiting times
// and proportional event selection. Bit-reproducible for a fixed seed.
StochasticRun gillespie_simulate(const RateParams& rates,
                                 std::int64_t n_total, double x0,
                                 double t_end, std::uint64_t seed);

// Piecewise-constant sample of a run at time t (count after the last
// event at or before t).
std::int64_t run_count_at(const StochasticRun& run, double t);

// Mean and standard error of X_C over `trials` independent runs sampled
// on `grid`. Per-trial seeds are a pure function of (seed, trial index),
// so results are deterministic regardless of how trials are scheduled;
// trials execute concurrently and are merged by index.
EnsembleMean gillespie_ensemble_mean(const RateParams& rates,
                                     std::int64_t n_total, double x0,
                                     std::span<const double> grid, int trials,
                                     std::uint64_t seed);

}  // namespace kinetx

#endif  // KINETX_ORACLES_HPP
