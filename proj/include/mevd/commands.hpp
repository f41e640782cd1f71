#pragma once

// The CLI commands as functions returning CSV tables, so the command-line
// tool and the acceptance suite produce identical bytes.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mevd/catalog.hpp"
#include "mevd/config.hpp"
#include "mevd/csv.hpp"
#include "mevd/dependence.hpp"
#include "mevd/extremes.hpp"
#include "mevd/monte_carlo.hpp"
#include "mevd/observables.hpp"
#include "mevd/parallel.hpp"
#include "mevd/report.hpp"

namespace mevd::commands {

using catalog::ExampleId;
using engine::EstimateResult;
using engine::Status;

// ---------------------------------------------------------------------------
// closed-form

namespace detail {
inline std::vector<Rational> grid(const Rational& step) {
  if (step <= 0 || step > 1) throw ConfigError("alpha grid step must lie in (0, 1]");
  std::vector<Rational> out;
  for (Rational a = 0; a < 1; a += step) out.push_back(a);
  out.push_back(1);
  return out;
}
}  // namespace detail

// Bivariate rows over α ∈ {0, h, 2h, ..., 1}: θ and D from the case tables,
// Γ at τ = (α, 1-α) and G = exp(-θ Γ̂) there. The trivariate example uses
// (α, β) over the simplex grid and the curves2 schema.
inline csv::Table closed_form(ExampleId id, const Rational& step, std::optional<std::vector<Rational>> alphas = {}) {
  const auto points = alphas ? *alphas : detail::grid(step);
  const bool tri = id == ExampleId::Trivariate;
  csv::Table t(tri ? std::vector<std::string>{"schema", "example", "alpha", "beta", "theta", "D", "Gamma", "G"}
                   : std::vector<std::string>{"schema", "example", "alpha", "theta", "D", "Gamma", "G"});
  const std::string name = catalog::to_string(id);

  if (tri) {
    for (const auto& a : points) {
      for (const auto& b : points) {
        if (a + b > 1) continue;
        std::vector<Rational> tau = {a, b, Rational(1) - a - b};
        Rational th = catalog::theta<Rational>(id, tau);
        Rational D = catalog::pickands_table<Rational>(id, {a, b});
        Rational G = catalog::gamma<Rational>(id, tau);
        double g = std::exp(-to_double(th * catalog::gamma_hat<Rational>(id, tau)));
        t.add({csv::kCurves2, name, csv::cell(a), csv::cell(b), csv::cell(th), csv::cell(D), csv::cell(G), csv::cell(g)});
      }
    }
    return t;
  }
  for (const auto& a : points) {
    if (a < 0 || a > 1) throw ConfigError("alpha outside [0, 1]");
    if (id == ExampleId::CatMap) {
      double x = to_double(a);
      std::vector<double> tau = {x, 1 - x};
      double th = catalog::theta<double>(id, tau);
      double g = std::exp(-th * catalog::gamma_hat<double>(id, tau));
      t.add({csv::kCurves, name, csv::cell(a), csv::cell(th), csv::cell(catalog::pickands_table<double>(id, {x})),
             csv::cell(catalog::gamma<double>(id, tau)), csv::cell(g)});
      continue;
    }
    std::vector<Rational> tau = {a, Rational(1) - a};
    Rational th = catalog::theta<Rational>(id, tau);
    double g = std::exp(-to_double(th * catalog::gamma_hat<Rational>(id, tau)));
    t.add({csv::kCurves, name, csv::cell(a), csv::cell(th), csv::cell(catalog::pickands_table<Rational>(id, {a})),
           csv::cell(catalog::gamma<Rational>(id, tau)), csv::cell(g)});
  }
  return t;
}

// ---------------------------------------------------------------------------
// pickands-table

inline csv::Table pickands_table_header() { return csv::Table({"schema", "family", "beta", "alpha", "D"}); }

inline void pickands_rows(csv::Table& t, ExampleId id, const Rational& step) {
  const auto df = dependence::closed_form(id);
  if (df.dim != 2) throw ConfigError("pickands-table covers bivariate examples only");
  for (const auto& a : detail::grid(step)) {
    t.add({csv::kPickands, catalog::to_string(id), "", csv::cell(a), csv::cell(df.pickands({to_double(a)}))});
  }
}

inline void logistic_rows(csv::Table& t, const std::vector<double>& betas, const Rational& step) {
  for (double beta : betas) {
    for (const auto& a : detail::grid(step)) {
      t.add({csv::kPickands, "logistic", csv::cell(beta), csv::cell(a), csv::cell(dependence::logistic_D(to_double(a), beta))});
    }
  }
}

inline std::vector<double> default_betas() { return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}; }

// ---------------------------------------------------------------------------
// estimates

struct EstimateTable {
  csv::Table table;
  bool rational_column = false;
  std::size_t rows = 0;
  std::size_t budget_rows = 0;
  std::size_t ok_exact_rows = 0;
  std::size_t undefined_rows = 0;
  std::size_t fatal_budget = 0;  // headline values lost to the budget with no fallback
};

inline EstimateTable estimate_table(std::size_t dim, bool rational_column) {
  std::vector<std::string> h = {"schema", "example"};
  for (std::size_t i = 1; i <= dim; ++i) h.push_back("tau" + std::to_string(i));
  for (const char* c : {"n", "q", "quantity", "value", "stderr", "exact_flag", "status"}) h.emplace_back(c);
  if (rational_column) h.emplace_back("fraction");
  return {csv::Table(std::move(h)), rational_column};
}

inline void add_estimate(EstimateTable& out, const std::string& example, const engine::Tau& tau,
                         const std::string& quantity, const EstimateResult& r) {
  std::vector<std::string> row = {csv::kEstimates, example};
  for (const auto& t : tau) row.push_back(csv::cell(t));
  row.push_back(csv::cell(r.n));
  row.push_back(csv::cell(r.q));
  row.push_back(quantity);
  row.push_back(csv::cell(r.value));
  row.push_back(r.exact ? "0" : csv::cell(r.std_error));
  row.push_back(r.exact ? "1" : "0");
  row.push_back(engine::to_string(r.status));
  if (out.rational_column) row.push_back(r.exact_value ? to_fraction_string(*r.exact_value) : "");
  out.table.add(std::move(row));
  ++out.rows;
  if (r.status == Status::BudgetExceeded) ++out.budget_rows;
  if (r.status == Status::Undefined) ++out.undefined_rows;
  if (r.exact && r.status == Status::Ok) ++out.ok_exact_rows;
}

inline EstimateResult plain(double v, std::uint64_t n, unsigned q, bool exact = false) {
  EstimateResult r;
  r.value = v;
  r.n = n;
  r.q = q;
  r.exact = exact;
  return r;
}

// Some maximal point belongs to two observables.
inline bool has_shared_points(const engine::System& sys) {
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    for (std::size_t j = i + 1; j < sys.dim(); ++j) {
      for (const auto& z : sys.obs[i].points()) {
        const auto& other = sys.obs[j].points();
        if (std::find(other.begin(), other.end(), z) != other.end()) return true;
      }
    }
  }
  return false;
}

// Finite-n overlap fractions p_i, q_i along the n schedule, then the spread
// max - min of each q_i over the schedule.
inline void add_overlap_rows(EstimateTable& out, const config::ExperimentConfig& cfg, const engine::Tau& tau) {
  const std::size_t d = cfg.system.dim();
  std::vector<Rational> lo(d), hi(d);
  for (std::size_t k = 0; k < cfg.n_schedule.size(); ++k) {
    const auto n = cfg.n_schedule[k];
    auto f = observables::overlap_fractions(cfg.system.obs, tau, n, cfg.system.boundary);
    for (std::size_t i = 0; i < d; ++i) {
      add_estimate(out, cfg.name(), tau, "overlap_p" + std::to_string(i + 1), EstimateResult::exactly(f.p[i], n, 0));
      add_estimate(out, cfg.name(), tau, "overlap_q" + std::to_string(i + 1), EstimateResult::exactly(f.q[i], n, 0));
      if (k == 0 || f.q[i] < lo[i]) lo[i] = f.q[i];
      if (k == 0 || f.q[i] > hi[i]) hi[i] = f.q[i];
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    add_estimate(out, cfg.name(), tau, "overlap_q" + std::to_string(i + 1) + "_drift",
                 EstimateResult::exactly(hi[i] - lo[i], cfg.n_schedule.back(), 0));
  }
}

// Exact cells are computed in parallel, one task per (τ, n), and written in
// schedule order.
inline EstimateTable exact(const config::ExperimentConfig& cfg, bool rational_column = false, unsigned threads = 0) {
  engine::require_circle(cfg.system, "exact");
  auto out = estimate_table(cfg.system.dim(), rational_column);
  const auto taus = cfg.tau_rows();
  std::vector<unsigned> qs;
  for (unsigned q = 0; q <= cfg.q_max; ++q) qs.push_back(q);

  struct Cell {
    EstimateResult gh;
    std::vector<EstimateResult> theta;
  };
  const std::size_t nn = cfg.n_schedule.size();
  auto cells = map_chunks<Cell>(taus.size() * nn, 1, threads, [&](std::uint64_t, std::uint64_t b, std::uint64_t) {
    const auto& tau = taus[b / nn];
    const auto n = cfg.n_schedule[b % nn];
    Cell c;
    c.gh = engine::gamma_hat(cfg.system, tau, n);
    for (auto q : qs) c.theta.push_back(engine::theta_exact(cfg.system, tau, n, q));
    return c;
  });

  for (std::size_t ti = 0; ti < taus.size(); ++ti) {
    const auto& tau = taus[ti];
    for (std::size_t ni = 0; ni < nn; ++ni) {
      const auto& c = cells[ti * nn + ni];
      add_estimate(out, cfg.name(), tau, "gamma_hat", c.gh);
      for (const auto& th : c.theta) add_estimate(out, cfg.name(), tau, "theta", th);
    }
    if (has_shared_points(cfg.system)) add_overlap_rows(out, cfg, tau);
    // stabilisation verdict over the full q and n schedules
    auto lim = engine::theta_limit(cfg.system, tau, qs, cfg.n_schedule);
    const auto n_last = cfg.n_schedule.back();
    add_estimate(out, cfg.name(), tau, "theta_limit", lim.result);
    if (lim.result.status == Status::BudgetExceeded) ++out.fatal_budget;
    if (lim.q_star) add_estimate(out, cfg.name(), tau, "q_star", plain(*lim.q_star, n_last, *lim.q_star, true));
    if (lim.n0) add_estimate(out, cfg.name(), tau, "n0", plain(static_cast<double>(*lim.n0), *lim.n0, *lim.q_star, true));
    auto gh_last = cells[ti * nn + nn - 1].gh;
    add_estimate(out, cfg.name(), tau, "G", engine::g_value(lim.result, gh_last));
    auto dcfg = engine::ConditionCheckConfig::defaults(n_last);
    auto dp = engine::delta_prime_exact(cfg.system, tau, n_last, cfg.q, dcfg);
    add_estimate(out, cfg.name(), tau, "delta_prime", dp);
    add_estimate(out, cfg.name(), tau, "delta_prime_last_j", plain(static_cast<double>(dcfg.last_index(n_last)), n_last, cfg.q, true));
  }
  return out;
}

inline EstimateTable monte_carlo(const config::ExperimentConfig& cfg, bool rational_column = false,
                                 unsigned threads = 0) {
  if (!cfg.seed) throw ConfigError("mc needs --seed");
  if (cfg.trials == 0 && cfg.orbit_length == 0) throw ConfigError("mc needs trials or orbit_length");
  auto out = estimate_table(cfg.system.dim(), rational_column);
  for (const auto& tau : cfg.tau_rows()) {
    for (auto n : cfg.n_schedule) {
      if (cfg.trials > 0) {
        auto g = mc::mc_block_maxima(cfg.system, tau, n, cfg.trials, *cfg.seed, threads);
        g.q = cfg.q;
        add_estimate(out, cfg.name(), tau, "block_maxima", g);
      }
      if (cfg.orbit_length > 0) {
        add_estimate(out, cfg.name(), tau, "theta_runs",
                     mc::mc_theta_runs(cfg.system, tau, n, cfg.q, cfg.orbit_length, *cfg.seed));
      }
      if (cfg.system.torus()) {
        add_estimate(out, cfg.name(), tau, "bias_bound", plain(report::cat_bias_bound(cfg.system, tau, n), n, cfg.q));
      }
    }
  }
  return out;
}

inline constexpr unsigned kAutocovLags = 8;

// Δ^(q) partial sums for q = 0..q_max at every n; exact when possible, with
// a Monte Carlo fallback for cells over the component budget (when the mode
// allows it). Lag autocovariances of 1_A are appended as the mixing
// diagnostic.
inline EstimateTable delta_prime(const config::ExperimentConfig& cfg, std::optional<unsigned> j_max = std::nullopt,
                                 bool rational_column = false) {
  auto out = estimate_table(cfg.system.dim(), rational_column);
  const bool circle = cfg.system.circle();
  for (const auto& tau : cfg.tau_rows()) {
    for (auto n : cfg.n_schedule) {
      auto dcfg = engine::ConditionCheckConfig::defaults(n);
      dcfg.j_max = j_max;
      for (unsigned q = 0; q <= cfg.q_max; ++q) {
        bool mc_done = false;
        auto run_mc = [&] {
          add_estimate(out, cfg.name(), tau, "delta_prime_mc",
                       mc::mc_delta_prime(cfg.system, tau, n, q, dcfg, cfg.orbit_length, *cfg.seed));
          mc_done = true;
        };
        const bool mc_ready = cfg.seed && cfg.orbit_length > 0;
        if (circle && cfg.wants_exact()) {
          auto r = engine::delta_prime_exact(cfg.system, tau, n, q, dcfg);
          add_estimate(out, cfg.name(), tau, "delta_prime", r);
          if (r.status == Status::BudgetExceeded) {
            if (mc_ready) run_mc();
            else ++out.fatal_budget;
          }
        }
        if (cfg.wants_mc() && mc_ready && !mc_done) run_mc();
      }
      add_estimate(out, cfg.name(), tau, "delta_prime_last_j",
                   plain(static_cast<double>(dcfg.last_index(n)), n, 0, true));
      if (circle && cfg.wants_exact()) {
        auto cov = engine::autocovariance_exact(cfg.system, tau, n, cfg.q, kAutocovLags);
        for (unsigned lag = 1; lag <= cov.size(); ++lag) {
          auto r = EstimateResult::exactly(cov[lag - 1], n, cfg.q);
          add_estimate(out, cfg.name(), tau, "autocov_lag" + std::to_string(lag), r);
        }
      }
    }
  }
  return out;
}

}  // namespace mevd::commands
