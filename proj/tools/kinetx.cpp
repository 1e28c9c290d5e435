// kinetx: command-line surface for the reversible binary-reaction kinetics
// library. Subcommands: solve, iterate, equilibrium, chartime, validate,
// statmech. Inputs come from a JSON config file and/or flags (flags win);
// trajectories are written as CSV, summaries as key=value lines.
//
// Exit codes: 0 ok, 1 numeric failure, 2 invalid input, 3 validation failure.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kinetx/iterate.hpp"
#include "kinetx/kinetics.hpp"
#include "kinetx/oracles.hpp"
#include "kinetx/solver.hpp"
#include "kinetx/statmech.hpp"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_numeric = 1;
constexpr int exit_invalid = 2;
constexpr int exit_validation = 3;

[[noreturn]] void config_error(const std::string& msg) {
  throw std::invalid_argument(msg);
}

// Shortest round-trip decimal representation; locale-independent.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Config {
  std::optional<double> a, b, x0, t_end, tolerance;
  std::optional<kinetx::ReactionSpec> spec;
  std::optional<std::vector<double>> times;
  std::optional<std::int64_t> steps, m, n_particles, trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> oracle, out;
  // statmech inputs
  std::optional<kinetx::ReactionQuartet> quartet;
  std::optional<kinetx::SpeedSet> speeds;
  std::optional<double> sigma_fwd, sigma_bwd, temperature;
  std::optional<bool> natural_units;
};

double get_number(const json& j, const std::string& key) {
  if (!j.at(key).is_number()) config_error("config: " + key + " must be a number");
  return j.at(key).get<double>();
}

kinetx::ReactionSpec parse_spec(const json& j) {
  for (const auto& [key, _] : j.items()) {
    if (key != "n" && key != "v_B" && key != "v_D" && key != "sigma_fwd" &&
        key != "sigma_bwd")
      config_error("config: unknown spec field '" + key + "'");
  }
  return {get_number(j, "n"), get_number(j, "v_B"), get_number(j, "v_D"),
          get_number(j, "sigma_fwd"), get_number(j, "sigma_bwd")};
}

kinetx::ThermoSpecies parse_species(const json& j, const std::string& label) {
  if (!j.is_object()) config_error("config: quartet." + label + " must be an object");
  kinetx::ThermoSpecies sp{};
  sp.mass = get_number(j, "mass");
  if (!j.at("degeneracy").is_number_integer())
    config_error("config: quartet." + label + ".degeneracy must be an integer");
  sp.degeneracy = j.at("degeneracy").get<int>();
  sp.chem_potential = j.contains("chem_potential")
                          ? get_number(j, "chem_potential")
                          : 0.0;
  return sp;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    config_error("config: " + std::string(e.what()));
  }
  if (!j.is_object()) config_error("config: top level must be an object");

  Config c;
  for (const auto& [key, value] : j.items()) {
    if (key == "a") c.a = get_number(j, key);
    else if (key == "b") c.b = get_number(j, key);
    else if (key == "x0") c.x0 = get_number(j, key);
    else if (key == "t_end") c.t_end = get_number(j, key);
    else if (key == "tolerance") c.tolerance = get_number(j, key);
    else if (key == "spec") c.spec = parse_spec(value);
    else if (key == "times") {
      if (!value.is_array()) config_error("config: times must be an array");
      c.times = value.get<std::vector<double>>();
    } else if (key == "steps") c.steps = value.get<std::int64_t>();
    else if (key == "m") c.m = value.get<std::int64_t>();
    else if (key == "n_particles") c.n_particles = value.get<std::int64_t>();
    else if (key == "trials") c.trials = value.get<std::int64_t>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else if (key == "oracle") c.oracle = value.get<std::string>();
    else if (key == "out") c.out = value.get<std::string>();
    else if (key == "quartet") {
      kinetx::ReactionQuartet q{parse_species(value.at("A"), "A"),
                                parse_species(value.at("B"), "B"),
                                parse_species(value.at("C"), "C"),
                                parse_species(value.at("D"), "D")};
      c.quartet = q;
    } else if (key == "speeds") {
      c.speeds = kinetx::SpeedSet{get_number(value, "v_A"), get_number(value, "v_B"),
                                  get_number(value, "v_C"), get_number(value, "v_D")};
    } else if (key == "sigma_fwd") c.sigma_fwd = get_number(j, key);
    else if (key == "sigma_bwd") c.sigma_bwd = get_number(j, key);
    else if (key == "temperature") c.temperature = get_number(j, key);
    else if (key == "natural_units") c.natural_units = value.get<bool>();
    else config_error("config: unknown field '" + key + "'");
  }
  return c;
}

kinetx::RateParams resolve_rates(const Config& c) {
  const bool has_rates = c.a.has_value() || c.b.has_value();
  if (has_rates && c.spec)
    config_error("config: give either rates {a,b} or a spec block, not both");
  if (c.spec) return kinetx::rates_from_spec(*c.spec);
  if (!c.a || !c.b)
    config_error("config: rates {a,b} or a spec block are required");
  kinetx::RateParams rates{*c.a, *c.b};
  rates.validate();
  return rates;
}

double resolve_x0(const Config& c) {
  const double x0 = c.x0.value_or(0.0);
  if (!kinetx::is_concentration(x0)) config_error("config: x0 must lie in [0,1]");
  return x0;
}

std::vector<double> resolve_grid(const Config& c) {
  if (c.times) {
    if (c.times->empty()) config_error("config: times must be non-empty");
    return *c.times;  // monotonicity enforced by solve_series
  }
  if (!c.t_end) config_error("config: t_end (or times) is required");
  if (!(std::isfinite(*c.t_end) && *c.t_end >= 0.0))
    config_error("config: t_end must be >= 0");
  const std::int64_t steps = c.steps.value_or(101);
  if (steps < 1) config_error("config: steps must be >= 1");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    grid.push_back(0.0);
    return grid;
  }
  for (std::int64_t i = 0; i < steps; ++i)
    grid.push_back(*c.t_end * static_cast<double>(i) /
                   static_cast<double>(steps - 1));
  return grid;
}

// CSV goes to the out file when one is given (summary on stdout);
// otherwise CSV goes to stdout and the summary to stderr.
struct Sink {
  std::ofstream file;
  bool to_file = false;

  explicit Sink(const std::optional<std::string>& out) {
    if (out && !out->empty()) {
      file.open(*out);
      if (!file) config_error("config: cannot write to '" + *out + "'");
      to_file = true;
    }
  }
  std::ostream& csv() { return to_file ? file : std::cout; }
  std::ostream& summary() {
    return to_file ? std::cout : std::cerr;
  }
};

void print_rate_summary(std::ostream& os, const kinetx::RateParams& rates) {
  os << "X_eq=" << fmt(kinetx::equilibrium_concentration(rates)) << "\n";
  os << "ratio=" << fmt(kinetx::equilibrium_ratio(rates)) << "\n";
  os << "tau=" << fmt(kinetx::characteristic_time(rates)) << "\n";
  os << "tau_formula=" << (rates.a == rates.b ? "1/(2b)" : "1/sqrt(ab)") << "\n";
  os << "near_degenerate=" << (kinetx::near_degenerate(rates) ? 1 : 0) << "\n";
}

int cmd_solve(const Config& c) {
  const auto rates = resolve_rates(c);
  const double x0 = resolve_x0(c);
  const auto grid = resolve_grid(c);
  const auto traj = kinetx::solve_series(rates, x0, grid);

  Sink sink(c.out);
  auto& csv = sink.csv();
  csv << "t,X_C,X_A\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    csv << fmt(traj.times[i]) << ',' << fmt(traj.values[i]) << ','
        << fmt(1.0 - traj.values[i]) << "\n";

  auto& summary = sink.summary();
  const char* branch = rates.a == rates.b
                           ? "degenerate"
                           : kinetx::branch_name(
                                 kinetx::integration_offset(rates, x0).branch);
  summary << "branch=" << branch << "\n";
  print_rate_summary(summary, rates);
  return exit_ok;
}

int cmd_iterate(const Config& c) {
  const auto rates = resolve_rates(c);
  const double x0 = resolve_x0(c);
  if (!c.m) config_error("config: m is required for iterate");
  const std::int64_t m = *c.m;
  if (m < 0) config_error("config: m must be >= 0");

  const auto ctx = kinetx::ConjugacyContext::make(rates);
  Sink sink(c.out);
  auto& csv = sink.csv();
  csv << "m,X_C\n";
  double x = x0;
  csv << "0," << fmt(x) << "\n";
  for (std::int64_t i = 1; i <= m; ++i) {
    x = ctx.degenerate ? kinetx::step_v_degenerate(rates.b, x)
                       : kinetx::step_v(ctx, x);
    csv << i << ',' << fmt(x) << "\n";
  }
  print_rate_summary(sink.summary(), rates);
  return exit_ok;
}

int cmd_scalar_summary(const Config& c) {
  const auto rates = resolve_rates(c);
  print_rate_summary(std::cout, rates);
  return exit_ok;
}

int cmd_validate(const Config& c) {
  const auto rates = resolve_rates(c);
  const double x0 = resolve_x0(c);
  const std::string oracle = c.oracle.value_or("rk4");
  const double tau = kinetx::characteristic_time(rates);

  if (oracle == "rk4") {
    const double t_end = c.t_end.value_or(10.0 * tau);
    if (!(t_end > 0.0)) config_error("config: t_end must be > 0 for validate");
    const double dt = tau / 1000.0;
    double excursion = 0.0;
    const auto traj =
        kinetx::rk4_integrate(rates, x0, t_end, std::min(dt, t_end), &excursion);

    Sink sink(c.out);
    auto& csv = sink.csv();
    csv << "t,analytic,rk4,abs_dev\n";
    double max_dev = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      const double ref = kinetx::solve_at(rates, x0, traj.times[i]);
      const double dev = std::abs(traj.values[i] - ref);
      max_dev = std::max(max_dev, dev);
      csv << fmt(traj.times[i]) << ',' << fmt(ref) << ',' << fmt(traj.values[i])
          << ',' << fmt(dev) << "\n";
    }
    const double tolerance = c.tolerance.value_or(1e-8);
    const bool pass = max_dev <= tolerance && excursion <= 1e-12;
    auto& summary = sink.summary();
    summary << "oracle=rk4\n";
    summary << "max_abs_dev=" << fmt(max_dev) << "\n";
    summary << "tolerance=" << fmt(tolerance) << "\n";
    summary << "result=" << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? exit_ok : exit_validation;
  }

  if (oracle == "gillespie") {
    if (!c.t_end) config_error("config: t_end is required for gillespie");
    const double t_end = *c.t_end;
    if (!(t_end > 0.0)) config_error("config: t_end must be > 0");
    const std::int64_t n_particles = c.n_particles.value_or(100000);
    const auto trials = static_cast<int>(c.trials.value_or(50));
    const std::uint64_t seed = c.seed.value_or(12345);
    constexpr int points = 50;
    std::vector<double> grid;
    grid.reserve(points);
    for (int i = 1; i <= points; ++i)
      grid.push_back(t_end * static_cast<double>(i) / points);

    const auto ens = kinetx::gillespie_ensemble_mean(rates, n_particles, x0,
                                                     grid, trials, seed);
    Sink sink(c.out);
    auto& csv = sink.csv();
    csv << "t,analytic,mean,std_error\n";
    int within = 0;
    for (std::size_t i = 0; i < ens.times.size(); ++i) {
      const double ref = kinetx::solve_at(rates, x0, ens.times[i]);
      if (std::abs(ens.mean[i] - ref) <= 3.0 * ens.std_error[i] + 1e-15)
        ++within;
      csv << fmt(ens.times[i]) << ',' << fmt(ref) << ',' << fmt(ens.mean[i])
          << ',' << fmt(ens.std_error[i]) << "\n";
    }
    const double fraction = static_cast<double>(within) / points;
    const bool pass = fraction >= 0.95;
    auto& summary = sink.summary();
    summary << "oracle=gillespie\n";
    summary << "n_particles=" << n_particles << "\n";
    summary << "trials=" << trials << "\n";
    summary << "seed=" << seed << "\n";
    summary << "pass_fraction=" << fmt(fraction) << "\n";
    summary << "result=" << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? exit_ok : exit_validation;
  }

  config_error("config: oracle must be 'rk4' or 'gillespie'");
}

int cmd_statmech(const Config& c) {
  if (!c.quartet) config_error("config: quartet {A,B,C,D} is required");
  const auto& quartet = *c.quartet;
  const bool natural = c.natural_units.value_or(false);
  const double temperature = c.temperature.value_or(natural ? 1.0 : 0.0);
  if (!natural && !c.temperature)
    config_error("config: temperature is required unless natural_units");
  const auto ctx = natural ? kinetx::ThermoContext::natural(temperature)
                           : kinetx::ThermoContext::si(temperature);

  kinetx::SpeedSet speeds{};
  if (c.speeds) {
    speeds = *c.speeds;
  } else {
    speeds = {kinetx::equipartition_speed(quartet.A.mass, ctx),
              kinetx::equipartition_speed(quartet.B.mass, ctx),
              kinetx::equipartition_speed(quartet.C.mass, ctx),
              kinetx::equipartition_speed(quartet.D.mass, ctx)};
  }
  const double sigma_fwd = c.sigma_fwd.value_or(1.0);
  const double sigma_bwd = c.sigma_bwd.value_or(1.0);

  const double residual = kinetx::detailed_balance_residual(
      quartet, speeds, sigma_fwd, sigma_bwd, ctx);
  const double ratio = kinetx::predicted_sigma_ratio(quartet);

  std::cout << "residual=" << fmt(residual) << "\n";
  std::cout << "predicted_ratio=" << fmt(ratio) << "\n";
  std::cout << "natural_units=" << (natural ? 1 : 0) << "\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reversible binary-reaction kinetics toolkit"};
  app.require_subcommand(1);

  // Flag values land in this overlay and override the config file.
  Config flags;
  std::string config_path;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--a", flags.a, "backward rate constant");
    sub->add_option("--b", flags.b, "forward rate constant");
    sub->add_option("--x0", flags.x0, "initial concentration X_C(0)");
    sub->add_option("--t-end", flags.t_end, "end of the time grid");
    sub->add_option("--steps", flags.steps, "number of grid points");
    sub->add_option("--m", flags.m, "number of iteration steps");
    sub->add_option("--oracle", flags.oracle, "validation oracle: rk4|gillespie");
    sub->add_option("--n-particles", flags.n_particles, "stochastic particle count");
    sub->add_option("--trials", flags.trials, "stochastic trial count");
    sub->add_option("--seed", flags.seed, "random seed");
    sub->add_option("--tolerance", flags.tolerance, "validation tolerance (rk4)");
    sub->add_option("--out", flags.out, "output CSV path");
    return sub;
  };

  auto* solve = add_common(app.add_subcommand("solve", "closed-form trajectory"));
  auto* iterate = add_common(app.add_subcommand("iterate", "discrete iterate map"));
  auto* equilibrium =
      add_common(app.add_subcommand("equilibrium", "equilibrium summary"));
  auto* chartime =
      add_common(app.add_subcommand("chartime", "characteristic time summary"));
  auto* validate =
      add_common(app.add_subcommand("validate", "compare against an oracle"));
  auto* statmech = add_common(
      app.add_subcommand("statmech", "detailed-balance cross-check"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_invalid;
  }

  try {
    Config c = config_path.empty() ? Config{} : load_config(config_path);
    // overlay flags onto file values
    if (flags.a) c.a = flags.a;
    if (flags.b) c.b = flags.b;
    if (flags.x0) c.x0 = flags.x0;
    if (flags.t_end) c.t_end = flags.t_end;
    if (flags.steps) c.steps = flags.steps;
    if (flags.m) c.m = flags.m;
    if (flags.oracle) c.oracle = flags.oracle;
    if (flags.n_particles) c.n_particles = flags.n_particles;
    if (flags.trials) c.trials = flags.trials;
    if (flags.seed) c.seed = flags.seed;
    if (flags.tolerance) c.tolerance = flags.tolerance;
    if (flags.out) c.out = flags.out;

    if (solve->parsed()) return cmd_solve(c);
    if (iterate->parsed()) return cmd_iterate(c);
    if (equilibrium->parsed() || chartime->parsed()) return cmd_scalar_summary(c);
    if (validate->parsed()) return cmd_validate(c);
    if (statmech->parsed()) return cmd_statmech(c);
    return exit_invalid;
  } catch (const json::exception& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return exit_invalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_numeric;
  }
}
