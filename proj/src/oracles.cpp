#include "kinetx/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace kinetx {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// splitmix64 of (seed, index); the standard per-stream seed derivation.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform draw in the open interval (0,1); never 0, so logs are safe.
double uniform_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Hard budget on generated events; a config implying more than this is a
// mistake, not a workload.
constexpr std::int64_t max_events = 100'000'000;

// Core event loop shared by the run-recording and grid-sampling paths.
// Emits (t, count) for the initial state and after every event.
template <typename Emit>
void simulate_events(const RateParams& rates, std::int64_t n_total,
                     std::int64_t count0, double t_end, std::uint64_t seed,
                     Emit&& emit) {
  std::mt19937_64 rng(seed);
  std::int64_t k = count0;
  double t = 0.0;
  emit(t, k);
  const double inv_n = 1.0 / static_cast<double>(n_total);
  std::int64_t events = 0;
  while (true) {
    const double n_a = static_cast<double>(n_total - k);
    const double n_c = static_cast<double>(k);
    const double rate_fwd = rates.b * n_a * n_a * inv_n;  // N b X_A^2
    const double rate_bwd = rates.a * n_c * n_c * inv_n;  // N a X_C^2
    const double total = rate_fwd + rate_bwd;
    if (total <= 0.0) break;
    const double wait = -std::log(uniform_open(rng)) / total;
    if (t + wait > t_end) break;
    if (++events > max_events) {
      throw std::runtime_error(
          "gillespie: event budget exceeded; reduce n_total, the rates or "
          "t_end");
    }
    t += wait;
    if (uniform_open(rng) * total < rate_fwd) {
      ++k;
    } else {
      --k;
    }
    emit(t, k);
  }
}

}  // namespace

Trajectory rk4_integrate(const RateParams& rates, double x0, double t_end,
                         double dt, double* max_excursion) {
  rates.validate();
  require(is_concentration(x0), "rk4_integrate: x0 must lie in [0,1]");
  require(std::isfinite(t_end) && std::isfinite(dt),
          "rk4_integrate: t_end and dt must be finite");
  require(dt > 0.0 && dt <= t_end, "rk4_integrate: need 0 < dt <= t_end");
  require(t_end / dt <= 1e9, "rk4_integrate: step count exceeds 1e9");

  const auto rhs = [&](double x) { return concentration_rate(rates, x); };
  const auto step = [&](double x, double h) {
    const double k1 = rhs(x);
    const double k2 = rhs(x + 0.5 * h * k1);
    const double k3 = rhs(x + 0.5 * h * k2);
    const double k4 = rhs(x + h * k3);
    return x + h * (k1 + 2.0 * (k2 + k3) + k4) / 6.0;
  };

  const auto full_steps = static_cast<std::int64_t>(
      std::floor(t_end / dt + 1e-9));
  const double remainder = t_end - static_cast<double>(full_steps) * dt;
  const bool partial = remainder > 1e-12 * t_end;

  Trajectory out;
  out.times.reserve(static_cast<std::size_t>(full_steps) + 2);
  out.values.reserve(static_cast<std::size_t>(full_steps) + 2);
  out.times.push_back(0.0);
  out.values.push_back(x0);

  double x = x0;
  double worst = 0.0;
  for (std::int64_t i = 1; i <= full_steps; ++i) {
    x = step(x, dt);
    worst = std::max(worst, std::max(-x, x - 1.0));
    x = std::clamp(x, 0.0, 1.0);
    out.times.push_back(static_cast<double>(i) * dt);
    out.values.push_back(x);
  }
  if (partial) {
    x = step(x, remainder);
    worst = std::max(worst, std::max(-x, x - 1.0));
    x = std::clamp(x, 0.0, 1.0);
    out.times.push_back(t_end);
    out.values.push_back(x);
  }
  if (max_excursion) *max_excursion = std::max(worst, 0.0);
  return out;
}

std::int64_t round_particle_count(double x0, std::int64_t n_total) {
  const double scaled = x0 * static_cast<double>(n_total);
  // remainder() rounds its implicit quotient half-to-even, independent of
  // the FP environment.
  const double rounded = scaled - std::remainder(scaled, 1.0);
  const auto k = static_cast<std::int64_t>(rounded);
  return std::clamp<std::int64_t>(k, 0, n_total);
}

StochasticRun gillespie_simulate(const RateParams& rates,
                                 std::int64_t n_total, double x0,
                                 double t_end, std::uint64_t seed) {
  rates.validate();
  require(n_total >= 2, "gillespie_simulate: n_total must be >= 2");
  require(is_concentration(x0), "gillespie_simulate: x0 must lie in [0,1]");
  require(std::isfinite(t_end) && t_end >= 0.0,
          "gillespie_simulate: t_end must be >= 0");

  StochasticRun run;
  run.n_total = n_total;
  run.seed = seed;
  simulate_events(rates, n_total, round_particle_count(x0, n_total), t_end,
                  seed, [&](double t, std::int64_t k) {
                    run.times.push_back(t);
                    run.counts.push_back(k);
                  });
  return run;
}

std::int64_t run_count_at(const StochasticRun& run, double t) {
  require(!run.times.empty(), "run_count_at: empty run");
  const auto it =
      std::upper_bound(run.times.begin(), run.times.end(), t);
  if (it == run.times.begin()) return run.counts.front();
  const auto idx = static_cast<std::size_t>(it - run.times.begin()) - 1;
  return run.counts[idx];
}

EnsembleMean gillespie_ensemble_mean(const RateParams& rates,
                                     std::int64_t n_total, double x0,
                                     std::span<const double> grid, int trials,
                                     std::uint64_t seed) {
  rates.validate();
  require(n_total >= 2, "gillespie_ensemble_mean: n_total must be >= 2");
  require(is_concentration(x0), "gillespie_ensemble_mean: x0 must lie in [0,1]");
  require(trials >= 2, "gillespie_ensemble_mean: trials must be >= 2");
  require(!grid.empty(), "gillespie_ensemble_mean: empty time grid");
  double prev = -1.0;
  for (const double t : grid) {
    require(std::isfinite(t) && t >= 0.0 && t > prev,
            "gillespie_ensemble_mean: grid must be strictly increasing, >= 0");
    prev = t;
  }

  const std::size_t points = grid.size();
  const double t_end = grid.back();
  const std::int64_t count0 = round_particle_count(x0, n_total);
  const double inv_n = 1.0 / static_cast<double>(n_total);

  // One trial: sample the piecewise-constant count on the grid while the
  // event stream is generated, without retaining the events.
  const auto run_trial = [&](int trial, double* samples) {
    std::size_t cursor = 0;
    std::int64_t last = count0;
    simulate_events(rates, n_total, count0, t_end,
                    trial_seed(seed, static_cast<std::uint64_t>(trial)),
                    [&](double t, std::int64_t k) {
                      while (cursor < points && grid[cursor] < t) {
                        samples[cursor++] = static_cast<double>(last) * inv_n;
                      }
                      last = k;
                    });
    while (cursor < points) {
      samples[cursor++] = static_cast<double>(last) * inv_n;
    }
  };

  std::vector<double> samples(static_cast<std::size_t>(trials) * points);
  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(),
                            static_cast<unsigned>(trials)));
  std::vector<std::future<void>> futures;
  futures.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (int trial = static_cast<int>(w); trial < trials;
           trial += static_cast<int>(workers)) {
        run_trial(trial, samples.data() +
                             static_cast<std::size_t>(trial) * points);
      }
    }));
  }
  for (auto& f : futures) f.get();

  EnsembleMean out;
  out.times.assign(grid.begin(), grid.end());
  out.mean.resize(points);
  out.std_error.resize(points);
  out.n_total = n_total;
  out.trials = trials;
  out.seed = seed;
  for (std::size_t j = 0; j < points; ++j) {
    double sum = 0.0;
    for (int i = 0; i < trials; ++i)
      sum += samples[static_cast<std::size_t>(i) * points + j];
    const double mean = sum / trials;
    double ss = 0.0;
    for (int i = 0; i < trials; ++i) {
      const double d = samples[static_cast<std::size_t>(i) * points + j] - mean;
      ss += d * d;
    }
    out.mean[j] = mean;
    out.std_error[j] = std::sqrt(ss / (trials - 1) / trials);
  }
  return out;
}

}  // namespace kinetx
