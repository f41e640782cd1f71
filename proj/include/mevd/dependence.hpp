#pragma once

// Dependence-function algebra: Γ, G, H, the copula and the Pickands function
// of a DependenceFunctions bundle, the logistic model, and a validator for
// the structural properties every extreme-value dependence function has.

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mevd/catalog.hpp"
#include "mevd/error.hpp"
#include "mevd/rational.hpp"

namespace mevd::dependence {

using Vec = std::vector<double>;
using Fn = std::function<double(const Vec&)>;

struct DependenceFunctions {
  std::string name;
  std::size_t dim = 2;
  Fn gamma_hat;
  Fn theta;
  Fn gamma;            // Γ, the stable dependence function of H
  Fn pickands_table;   // published D on the simplex (first d-1 coordinates); may be empty
  Vec marginals;       // θ_j

  double G(const Vec& tau) const { return std::exp(-theta(tau) * gamma_hat(tau)); }

  // C(t) = exp(-Γ(-log t)); 0 as soon as some t_j = 0.
  double copula(const Vec& t) const {
    Vec x(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[j] < 0 || t[j] > 1) throw Error("copula argument outside [0,1]");
      if (t[j] == 0) return 0;
      x[j] = -std::log(t[j]);
    }
    return std::exp(-gamma(x));
  }

  // H(t) = C(t_1^θ_1, ..., t_d^θ_d)
  double H(const Vec& t) const {
    Vec s(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) s[j] = std::pow(t[j], marginals[j]);
    return copula(s);
  }

  // D on the simplex, read off Γ with total mass 1.
  double pickands(const Vec& alpha) const {
    Vec tau = simplex_point(alpha);
    return gamma(tau);
  }

  // Completes (α_1..α_{d-1}) or checks (α_1..α_d).
  Vec simplex_point(const Vec& alpha) const {
    Vec tau = alpha;
    double s = 0;
    for (double a : alpha) {
      if (a < -1e-15) throw Error("simplex coordinate is negative");
      s += a;
    }
    if (tau.size() + 1 == dim) {
      if (s > 1 + 1e-12) throw Error("simplex coordinates sum above 1");
      tau.push_back(std::max(0.0, 1 - s));
    } else if (tau.size() == dim) {
      if (std::fabs(s - 1) > 1e-12) throw Error("simplex point does not sum to 1");
    } else {
      throw Error("simplex point has the wrong length");
    }
    return tau;
  }
};

inline double pickands(const DependenceFunctions& df, const Vec& alpha) { return df.pickands(alpha); }
inline double to_copula(const DependenceFunctions& df, const Vec& t) { return df.copula(t); }
inline double to_H(const DependenceFunctions& df, const Vec& t) { return df.H(t); }

inline DependenceFunctions closed_form(catalog::ExampleId id) {
  DependenceFunctions df;
  df.name = catalog::to_string(id);
  df.dim = catalog::dimension(id);
  df.gamma_hat = [id](const Vec& tau) { return catalog::gamma_hat<double>(id, tau); };
  df.theta = [id](const Vec& tau) { return catalog::theta<double>(id, tau); };
  df.gamma = [id](const Vec& tau) { return catalog::gamma<double>(id, tau); };
  df.pickands_table = [id](const Vec& alpha) { return catalog::pickands_table<double>(id, alpha); };
  df.marginals = catalog::marginals(id);
  return df;
}

inline double logistic_D(double alpha, double beta) {
  if (!(beta > 0 && beta <= 1)) throw Error("logistic beta must lie in (0, 1]");
  if (alpha < 0 || alpha > 1) throw Error("logistic alpha must lie in [0, 1]");
  return std::pow(std::pow(alpha, 1 / beta) + std::pow(1 - alpha, 1 / beta), beta);
}

// Logistic model: Γ̂ = Γ = (Σ τ_j^{1/β})^β, no clustering.
inline DependenceFunctions logistic(double beta, std::size_t dim = 2) {
  if (!(beta > 0 && beta <= 1)) throw Error("logistic beta must lie in (0, 1]");
  DependenceFunctions df;
  std::ostringstream name;
  name << "logistic(beta=" << beta << ")";
  df.name = name.str();
  df.dim = dim;
  df.gamma_hat = [beta](const Vec& tau) {
    double s = 0;
    for (double t : tau) s += std::pow(t, 1 / beta);
    return std::pow(s, beta);
  };
  df.theta = [](const Vec&) { return 1.0; };
  df.gamma = df.gamma_hat;
  if (dim == 2) df.pickands_table = [beta](const Vec& a) { return logistic_D(a[0], beta); };
  df.marginals = Vec(dim, 1.0);
  return df;
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string check;
  std::string where;
  double got = 0;
  double bound = 0;
};

struct ValidationReport {
  std::string name;
  std::size_t points_checked = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline constexpr double kValidateTolerance = 1e-12;

namespace detail {
inline std::string show(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << format_decimal(v[i]);
  os << ")";
  return os.str();
}

// Simplex grid with spacing `step` in d dimensions, all coordinates listed.
inline std::vector<Vec> simplex_grid(std::size_t d, double step) {
  const int m = static_cast<int>(std::lround(1 / step));
  std::vector<Vec> out;
  std::vector<int> idx(d, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k + 1 == d) {
      idx[k] = left;
      Vec p(d);
      for (std::size_t j = 0; j < d; ++j) p[j] = static_cast<double>(idx[j]) / m;
      out.push_back(p);
      return;
    }
    for (int i = 0; i <= left; ++i) {
      idx[k] = i;
      rec(k + 1, left - i);
    }
  };
  rec(0, m);
  return out;
}
}  // namespace detail

inline ValidationReport validate(const DependenceFunctions& df, double step = 0.01, double tol = kValidateTolerance) {
  ValidationReport rep;
  rep.name = df.name;
  auto fail = [&](std::string check, const Vec& at, double got, double bound) {
    rep.violations.push_back({std::move(check), detail::show(at), got, bound});
  };
  const auto grid = detail::simplex_grid(df.dim, step);
  const std::vector<double> scales = {0.5, 2.0, 3.0};
  const std::vector<double> masses = {0.5, 1.0, 2.5};

  for (const auto& alpha : grid) {
    for (double m : masses) {
      Vec tau = alpha;
      for (auto& t : tau) t *= m;
      ++rep.points_checked;
      const double gh = df.gamma_hat(tau), th = df.theta(tau), g = df.gamma(tau);
      double mx = 0, sm = 0, mx_theta = 0, sm_theta = 0;
      for (std::size_t j = 0; j < tau.size(); ++j) {
        mx = std::max(mx, tau[j]);
        sm += tau[j];
        mx_theta = std::max(mx_theta, df.marginals[j] * tau[j]);
        sm_theta += df.marginals[j] * tau[j];
      }
      double scale_tol = tol * std::max(1.0, sm);

      for (double c : scales) {
        Vec ct = tau;
        for (auto& t : ct) t *= c;
        if (std::fabs(df.gamma_hat(ct) - c * gh) > scale_tol * c) fail("homogeneity gamma_hat", tau, df.gamma_hat(ct), c * gh);
        if (std::fabs(df.theta(ct) - th) > tol) fail("homogeneity theta", tau, df.theta(ct), th);
        if (std::fabs(df.gamma(ct) - c * g) > scale_tol * c) fail("homogeneity gamma", tau, df.gamma(ct), c * g);
      }
      if (gh < mx - scale_tol) fail("gamma_hat lower bound", tau, gh, mx);
      if (gh > sm + scale_tol) fail("gamma_hat upper bound", tau, gh, sm);
      if (g < mx - scale_tol) fail("gamma lower bound", tau, g, mx);
      if (g > sm + scale_tol) fail("gamma upper bound", tau, g, sm);
      if (th * gh < mx_theta - scale_tol) fail("theta*gamma_hat lower bound", tau, th * gh, mx_theta);
      if (th * gh > sm_theta + scale_tol) fail("theta*gamma_hat upper bound", tau, th * gh, sm_theta);

      // Γ(θ τ) = θ(τ) Γ̂(τ)
      Vec scaled = tau;
      for (std::size_t j = 0; j < tau.size(); ++j) scaled[j] *= df.marginals[j];
      if (std::fabs(df.gamma(scaled) - th * gh) > scale_tol) fail("gamma(theta tau) = theta gamma_hat", tau, df.gamma(scaled), th * gh);

      // consistency chain G = H(e^-τ)
      Vec t(tau.size());
      for (std::size_t j = 0; j < tau.size(); ++j) t[j] = std::exp(-tau[j]);
      if (std::fabs(df.G(tau) - df.H(t)) > tol) fail("G = H(exp(-tau))", tau, df.H(t), df.G(tau));

      // copula bounds and max-stability at t = e^-τ
      double c = df.copula(t);
      double lo = 1, hi = 1;
      for (double tj : t) {
        lo *= tj;
        hi = std::min(hi, tj);
      }
      if (c > hi + tol) fail("copula upper bound", t, c, hi);
      if (c < lo - tol) fail("copula lower bound", t, c, lo);
      for (double k : scales) {
        Vec tk = t;
        for (auto& x : tk) x = std::pow(x, k);
        if (std::fabs(df.copula(tk) - std::pow(c, k)) > tol) fail("max-stability", t, df.copula(tk), std::pow(c, k));
      }
    }

    // Pickands bounds, table agreement
    Vec head(alpha.begin(), alpha.end() - 1);
    double D = df.pickands(head);
    double mx = *std::max_element(alpha.begin(), alpha.end());
    if (D < mx - tol) fail("pickands lower bound", alpha, D, mx);
    if (D > 1 + tol) fail("pickands upper bound", alpha, D, 1);
    if (df.pickands_table) {
      double published = df.pickands_table(head);
      if (std::fabs(published - D) > tol) fail("pickands table = gamma on simplex", alpha, published, D);
    }
  }

  // convexity of D along the first coordinate (second difference, d = 2) or
  // along both axes (d = 3)
  if (df.dim == 2) {
    const int m = static_cast<int>(std::lround(1 / step));
    for (int i = 1; i < m; ++i) {
      double a = static_cast<double>(i) / m;
      double l = df.pickands({a - step}), c = df.pickands({a}), r = df.pickands({a + step});
      if (l + r - 2 * c < -tol) fail("pickands convexity", {a}, l + r - 2 * c, 0);
    }
  } else {
    for (const auto& alpha : grid) {
      Vec head(alpha.begin(), alpha.end() - 1);
      for (std::size_t axis = 0; axis < head.size(); ++axis) {
        Vec lo = head, hi = head;
        lo[axis] -= step;
        hi[axis] += step;
        double shi = 0;
        for (double x : hi) shi += x;
        if (lo[axis] < -1e-12 || shi > 1 + 1e-12) continue;
        double second = df.pickands(lo) + df.pickands(hi) - 2 * df.pickands(head);
        if (second < -tol) fail("pickands convexity", alpha, second, 0);
      }
    }
  }
  return rep;
}

}  // namespace mevd::dependence
