#pragma once

// DependenceReport: Γ̂, θ, Γ, G, H, D at one frequency vector, each row tagged
// with where it came from (exact set algebra, Monte Carlo, or closed form).

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "mevd/catalog.hpp"
#include "mevd/dependence.hpp"
#include "mevd/extremes.hpp"
#include "mevd/monte_carlo.hpp"
#include "mevd/presets.hpp"

namespace mevd::report {

using engine::EstimateResult;
using engine::Status;

enum class Provenance { Exact, MonteCarlo, ClosedForm };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Exact: return "exact";
    case Provenance::MonteCarlo: return "mc";
    case Provenance::ClosedForm: return "closed-form";
  }
  return "?";
}

struct Row {
  std::string quantity;  // gamma_hat, theta, Gamma, G, H, D
  Provenance source;
  EstimateResult estimate;
};

struct DependenceReport {
  std::string example;
  engine::Tau tau;
  std::uint64_t n = 0;
  unsigned q = 0;
  std::vector<Row> rows;
  // Stable-direction-only distance drops the half-discs at the segment ends;
  // their mass is bounded by n Σ π r_i², reported against Γ̂.
  std::optional<double> bias_bound;

  const Row* find(const std::string& quantity, Provenance p) const {
    for (const auto& r : rows) {
      if (r.quantity == quantity && r.source == p) return &r;
    }
    return nullptr;
  }
};

struct ReportOptions {
  bool exact = true;
  bool mc = false;
  std::uint64_t trials = 0;
  std::uint64_t orbit_length = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

inline std::vector<double> to_doubles(const engine::Tau& tau) {
  std::vector<double> out;
  for (const auto& t : tau) out.push_back(to_double(t));
  return out;
}

inline double cat_bias_bound(const engine::System& sys, const engine::Tau& tau, std::uint64_t n) {
  auto th = observables::thresholds(sys.obs, tau, n, sys.boundary);
  double b = 0;
  for (const auto& r : th.radius) {
    double x = to_double(r);
    b += std::numbers::pi * x * x;
  }
  return static_cast<double>(n) * b;
}

inline DependenceReport build(const presets::Preset& p, const engine::Tau& tau, std::uint64_t n,
                              const ReportOptions& opt) {
  DependenceReport rep;
  rep.example = catalog::to_string(p.id);
  rep.tau = tau;
  rep.n = n;
  rep.q = p.q;
  const auto& sys = p.system;

  auto closed = [&](const std::string& what, double v) {
    EstimateResult e;
    e.value = v;
    e.exact = false;
    e.n = 0;
    e.q = p.q;
    rep.rows.push_back({what, Provenance::ClosedForm, e});
  };
  const auto df = dependence::closed_form(p.id);
  const auto td = to_doubles(tau);
  double total = 0;
  for (double t : td) total += t;
  closed("gamma_hat", df.gamma_hat(td));
  closed("theta", df.theta(td));
  closed("Gamma", df.gamma(td));
  closed("G", df.G(td));
  std::vector<double> e(td.size());
  for (std::size_t j = 0; j < td.size(); ++j) e[j] = std::exp(-td[j]);
  closed("H", df.H(e));
  std::vector<double> head;
  for (std::size_t j = 0; j + 1 < td.size(); ++j) head.push_back(td[j] / total);
  closed("D", df.pickands(head));

  if (opt.exact && sys.circle()) {
    auto gh = engine::gamma_hat(sys, tau, n);
    auto th = engine::theta_exact(sys, tau, n, p.q);
    rep.rows.push_back({"gamma_hat", Provenance::Exact, gh});
    rep.rows.push_back({"theta", Provenance::Exact, th});
    rep.rows.push_back({"G", Provenance::Exact, engine::g_value(th, gh)});
  }
  if (opt.mc) {
    if (opt.trials > 0) {
      auto g = mc::mc_block_maxima(sys, tau, n, opt.trials, opt.seed, opt.threads);
      g.q = p.q;
      rep.rows.push_back({"G", Provenance::MonteCarlo, g});
    }
    if (opt.orbit_length > 0) {
      rep.rows.push_back({"theta", Provenance::MonteCarlo, mc::mc_theta_runs(sys, tau, n, p.q, opt.orbit_length, opt.seed)});
    }
  }
  if (sys.torus()) rep.bias_bound = cat_bias_bound(sys, tau, n);
  return rep;
}

}  // namespace mevd::report
