// mevd: command-line front end.
//
//   mevd closed-form --example LinkedPeriodic --alpha-grid 0.01
//   mevd exact --config configs/LinkedPeriodic.ini
//   mevd mc --example CatMap --tau 0.5,0.5 --n-schedule 1000 --orbit-length 10000000 --seed 7
//   mevd verify [--example X] [--mode exact-only] [--inject-fault catalog:LinkedPeriodic:1/2]
//   mevd pickands-table [--example X] [--beta 0.1,0.5]
//   mevd delta-prime --example LinkedPeriodic --tau 4,1 --n-schedule 2^40 --j-max 20
//
// Exit codes: 0 ok, 2 verification failure, 3 config error, 4 a headline value
// (theta_limit, or a delta_prime cell without Monte Carlo fallback) ran out of
// component budget.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mevd/commands.hpp"
#include "mevd/config.hpp"
#include "mevd/verify.hpp"

namespace {

using namespace mevd;

constexpr int kExitVerify = 2;
constexpr int kExitConfig = 3;
constexpr int kExitBudget = 4;

struct Flags {
  std::string example;
  std::string config_file;
  std::vector<std::string> tau;
  std::string alpha_grid;
  std::string n_schedule;
  std::optional<unsigned> q_max;
  std::optional<unsigned> q;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> orbit_length;
  std::optional<std::uint64_t> seed;
  std::string boundary;
  std::string out;
  std::string mode;
  std::string fault;
  std::string beta;
  std::optional<unsigned> j_max;
  unsigned threads = 0;
  bool rational = false;
};

config::ExperimentConfig resolve(const Flags& f) {
  config::ExperimentConfig c;
  auto boundary = f.boundary.empty() ? geometry::Boundary::Circle : config::parse_boundary(f.boundary);
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    if (!in) throw ConfigError("cannot open config file " + f.config_file);
    c = config::parse(in);
    if (!f.example.empty() && (!c.preset || *c.preset != config::parse_example_id(f.example))) {
      throw ConfigError("--example contradicts the config file");
    }
    if (!f.boundary.empty()) c.system.boundary = boundary;
  } else if (!f.example.empty()) {
    c = config::from_preset(config::parse_example_id(f.example), boundary);
  } else {
    throw ConfigError("give --example or --config");
  }
  if (!f.tau.empty()) {
    c.taus.clear();
    for (const auto& t : f.tau) c.taus.push_back(config::parse_tau(t));
  }
  if (!f.alpha_grid.empty()) {
    Rational h = config::rational_field("alpha-grid", f.alpha_grid);
    if (h <= 0 || h > 1) throw ConfigError("--alpha-grid step must lie in (0, 1]");
    c.alpha_step = h;
  }
  if (!f.n_schedule.empty()) c.n_schedule = config::parse_n_schedule(f.n_schedule);
  if (f.q_max) c.q_max = *f.q_max;
  if (f.q) c.q = *f.q;
  if (f.trials) c.trials = *f.trials;
  if (f.orbit_length) c.orbit_length = *f.orbit_length;
  if (f.seed) c.seed = *f.seed;
  if (!f.mode.empty()) c.mode = config::parse_mode(f.mode);
  if (c.taus.empty() && !c.alpha_step) {
    engine::Tau ones(c.system.dim(), Rational(1));
    c.taus.push_back(ones);
  }
  c.check();
  return c;
}

void emit(const Flags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(f.out, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + f.out);
  out << text;
}

Rational grid_step(const Flags& f, const char* fallback) {
  return config::rational_field("alpha-grid", f.alpha_grid.empty() ? fallback : f.alpha_grid);
}

int run_closed_form(const Flags& f) {
  if (f.example.empty()) throw ConfigError("closed-form needs --example");
  emit(f, commands::closed_form(config::parse_example_id(f.example), grid_step(f, "1/100")).str());
  return 0;
}

int run_pickands(const Flags& f) {
  auto t = commands::pickands_table_header();
  auto step = grid_step(f, "1/100");
  if (!f.example.empty()) {
    commands::pickands_rows(t, config::parse_example_id(f.example), step);
  } else {
    std::vector<double> betas = commands::default_betas();
    if (!f.beta.empty()) {
      betas.clear();
      for (const auto& b : config::split(f.beta, ',')) betas.push_back(to_double(config::rational_field("beta", b)));
    }
    try {
      commands::logistic_rows(t, betas, step);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  emit(f, t.str());
  return 0;
}

int finish(const Flags& f, const commands::EstimateTable& t) {
  emit(f, t.table.str());
  if (t.budget_rows > 0) std::cerr << "mevd: " << t.budget_rows << " rows exceeded the component budget\n";
  if (t.undefined_rows > 0) std::cerr << "mevd: " << t.undefined_rows << " rows saw no exceedances\n";
  if (t.fatal_budget > 0 || (t.budget_rows > 0 && t.ok_exact_rows == 0)) return kExitBudget;
  return 0;
}

int run_exact(const Flags& f) {
  auto c = resolve(f);
  if (!c.system.circle()) throw ConfigError("exact mode needs an expanding circle map");
  return finish(f, commands::exact(c, f.rational, f.threads));
}

int run_mc(const Flags& f) {
  auto c = resolve(f);
  if (f.mode.empty()) c.mode = config::Mode::MonteCarlo;
  c.check();
  return finish(f, commands::monte_carlo(c, f.rational, f.threads));
}

int run_delta(const Flags& f) {
  auto c = resolve(f);
  if (!c.system.circle() && c.mode == config::Mode::Exact) c.mode = config::Mode::MonteCarlo;
  c.check();
  return finish(f, commands::delta_prime(c, f.j_max, f.rational));
}

int run_verify(const Flags& f) {
  verify::Options o;
  o.threads = f.threads;
  if (!f.mode.empty()) o.mc = config::parse_mode(f.mode) != config::Mode::Exact;
  if (!f.example.empty() && f.example != "all") o.only = config::parse_example_id(f.example);
  if (!f.fault.empty()) o.fault = verify::parse_fault(f.fault);
  bool ok = true;
  std::string text;
  for (const auto& c : verify::run_all(o)) {
    text += c.line() + "\n";
    ok = ok && c.passed();
  }
  emit(f, text);
  return ok ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivariate extremes of chaotic maps: exact, Monte Carlo and closed-form dependence functions"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--example", f.example, "worked example (e.g. LinkedPeriodic)");
    s->add_option("--out", f.out, "write CSV here instead of stdout");
    s->add_option("--alpha-grid", f.alpha_grid, "simplex grid step");
    s->add_option("--threads", f.threads, "worker threads (0: all cores)");
  };
  auto add_experiment = [&](CLI::App* s) {
    add_common(s);
    s->add_option("--config", f.config_file, "experiment INI file")->check(CLI::ExistingFile);
    s->add_option("--tau", f.tau, "frequency vector a,b[,c]; repeatable");
    s->add_option("--n-schedule", f.n_schedule, "comma-separated block lengths (2^k allowed)");
    s->add_option("--q-max", f.q_max, "largest q");
    s->add_option("--q", f.q, "q for single-q quantities (default: the preset's)");
    s->add_option("--trials", f.trials, "block-maxima trials");
    s->add_option("--orbit-length", f.orbit_length, "orbit length for runs estimators");
    s->add_option("--seed", f.seed, "Monte Carlo seed");
    s->add_option("--boundary", f.boundary, "circle | interval");
    s->add_option("--mode", f.mode, "exact | mc | both");
    s->add_flag("--rational", f.rational, "append exact values as p/q");
  };

  auto* closed = app.add_subcommand("closed-form", "catalog curves of theta, D, Gamma, G over the simplex");
  add_common(closed);
  auto* exact = app.add_subcommand("exact", "exact gamma_hat, theta and delta_prime over the schedules");
  add_experiment(exact);
  auto* mc = app.add_subcommand("mc", "Monte Carlo block maxima and runs estimates");
  add_experiment(mc);
  auto* ver = app.add_subcommand("verify", "acceptance checks of engine against catalog");
  add_common(ver);
  ver->add_option("--mode", f.mode, "exact | exact-only | mc | both");
  ver->add_option("--inject-fault", f.fault, "catalog:<example>:<alpha> perturbs one catalog cell");
  auto* pick = app.add_subcommand("pickands-table", "Pickands function tables (examples or logistic family)");
  add_common(pick);
  pick->add_option("--beta", f.beta, "logistic beta values, comma-separated");
  auto* delta = app.add_subcommand("delta-prime", "anti-clustering partial sums and autocovariance diagnostic");
  add_experiment(delta);
  delta->add_option("--j-max", f.j_max, "cap on the summation index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (closed->parsed()) return run_closed_form(f);
    if (exact->parsed()) return run_exact(f);
    if (mc->parsed()) return run_mc(f);
    if (ver->parsed()) return run_verify(f);
    if (pick->parsed()) return run_pickands(f);
    if (delta->parsed()) return run_delta(f);
  } catch (const ConfigError& e) {
    std::cerr << "mevd: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TypeMismatch& e) {
    std::cerr << "mevd: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    std::cerr << "mevd: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "mevd: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
