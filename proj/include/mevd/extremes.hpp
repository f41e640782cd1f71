#pragma once

// Exact finite-n limit objects for circle systems: Γ̂ = n μ(U), the sets
// A_n^(q), the ratio μ(A^(q)) / μ(A^(0)) and the anti-clustering sum Δ^(q).

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mevd/circle_geometry.hpp"
#include "mevd/dynamics.hpp"
#include "mevd/error.hpp"
#include "mevd/observables.hpp"
#include "mevd/rational.hpp"

namespace mevd::engine {

using geometry::Boundary;
using geometry::IntervalSet;
using observables::ObservableSpec;
using Tau = std::vector<Rational>;

struct System {
  dynamics::MapSpec map = dynamics::MapSpec::doubling();
  std::vector<ObservableSpec> obs;
  Boundary boundary = Boundary::Circle;

  std::size_t dim() const noexcept { return obs.size(); }

  bool circle() const {
    if (!map.is_expanding()) return false;
    for (const auto& o : obs) {
      if (!o.on_circle()) return false;
    }
    return true;
  }
  bool torus() const {
    if (!map.is_toral()) return false;
    for (const auto& o : obs) {
      if (o.on_circle()) return false;
    }
    return true;
  }
};

enum class Status { Ok, NonConverged, BudgetExceeded, Undefined };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::NonConverged: return "non-converged";
    case Status::BudgetExceeded: return "budget-exceeded";
    case Status::Undefined: return "undefined";
  }
  return "?";
}

struct EstimateResult {
  double value = 0;
  double std_error = 0;
  bool exact = false;
  std::optional<Rational> exact_value;
  std::uint64_t n = 0;
  unsigned q = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  Status status = Status::Ok;
  std::string note;

  static EstimateResult exactly(const Rational& v, std::uint64_t n, unsigned q) {
    EstimateResult r;
    r.value = to_double(v);
    r.exact = true;
    r.exact_value = v;
    r.n = n;
    r.q = q;
    return r;
  }
};

inline void require_circle(const System& sys, const char* what) {
  if (!sys.circle()) throw TypeMismatch(std::string(what) + " needs an expanding circle map with finite maximal sets");
}

inline IntervalSet exceedance_union(const System& sys, const Tau& tau, std::uint64_t n) {
  auto th = observables::thresholds(sys.obs, tau, n, sys.boundary);
  return observables::union_exceedance(sys.obs, th, sys.boundary);
}

inline Rational big(std::uint64_t n) { return Rational(BigInt(n)); }

inline EstimateResult gamma_hat(const System& sys, const Tau& tau, std::uint64_t n) {
  require_circle(sys, "gamma_hat");
  return EstimateResult::exactly(big(n) * exceedance_union(sys, tau, n).measure(), n, 0);
}

struct AqSet {
  IntervalSet set;
  std::uint64_t n = 0;
  unsigned q = 0;
  Tau tau;
  std::size_t components() const { return set.components(); }
};

// A^(q) = U minus the points of U that return to U within q steps.
inline IntervalSet aq_from_union(const dynamics::MapSpec& map, const IntervalSet& u, unsigned q,
                                 std::size_t budget = dynamics::kDefaultComponentBudget) {
  IntervalSet returning;
  for (unsigned j = 1; j <= q; ++j) returning = returning | dynamics::pullback_within(map, u, u, j, budget);
  return u - returning;
}

inline AqSet aq_set(const System& sys, const Tau& tau, std::uint64_t n, unsigned q,
                    std::size_t budget = dynamics::kDefaultComponentBudget) {
  require_circle(sys, "aq_set");
  return {aq_from_union(sys.map, exceedance_union(sys, tau, n), q, budget), n, q, tau};
}

// Same set by the textbook route: U ∩ ⋂_j f^{-j}(complement U). Used as an
// oracle; its cost grows like b^q.
inline IntervalSet aq_set_global(const System& sys, const Tau& tau, std::uint64_t n, unsigned q,
                                 std::size_t budget = dynamics::kDefaultComponentBudget) {
  require_circle(sys, "aq_set_global");
  IntervalSet u = exceedance_union(sys, tau, n);
  IntervalSet out = u;
  IntervalSet outside = geometry::complement(u);
  for (unsigned j = 1; j <= q; ++j) out = out & dynamics::iterated_preimage(sys.map, outside, j, budget);
  return out;
}

inline EstimateResult theta_exact(const System& sys, const Tau& tau, std::uint64_t n, unsigned q,
                                  std::size_t budget = dynamics::kDefaultComponentBudget) {
  require_circle(sys, "theta_exact");
  IntervalSet u = exceedance_union(sys, tau, n);
  Rational base = u.measure();
  if (base == 0) throw Error("theta_exact: empty exceedance set");
  try {
    return EstimateResult::exactly(aq_from_union(sys.map, u, q, budget).measure() / base, n, q);
  } catch (const BudgetExceeded& e) {
    EstimateResult r;
    r.n = n;
    r.q = q;
    r.status = Status::BudgetExceeded;
    r.value = std::nan("");
    r.note = e.what();
    return r;
  }
}

// ---------------------------------------------------------------------------
// Double limit

struct ThetaLimit {
  EstimateResult result;
  std::vector<std::uint64_t> n_schedule;
  std::vector<unsigned> q_schedule;
  std::vector<std::vector<EstimateResult>> table;  // [n index][q index]
  std::optional<unsigned> q_star;                  // smallest q from which the ratio stays put
  std::optional<std::uint64_t> n0;                 // smallest n from which the ratio at q_star stays put
};

inline constexpr double kStableTolerance = 1e-9;

namespace detail {
// First index from which every later value agrees with it; nullopt when that
// is only the last entry (nothing to compare against).
inline std::optional<std::size_t> settles_at(const std::vector<double>& v, double tol) {
  if (v.size() < 2) return std::nullopt;
  std::size_t k = v.size() - 1;
  while (k > 0 && std::fabs(v[k - 1] - v.back()) < tol && !std::isnan(v[k - 1])) --k;
  if (k == v.size() - 1) return std::nullopt;
  for (std::size_t i = k; i < v.size(); ++i) {
    if (!(std::fabs(v[i] - v[k]) < tol)) return std::nullopt;
  }
  return k;
}
}  // namespace detail

inline ThetaLimit theta_limit(const System& sys, const Tau& tau, const std::vector<unsigned>& q_schedule,
                              const std::vector<std::uint64_t>& n_schedule,
                              std::size_t budget = dynamics::kDefaultComponentBudget) {
  if (q_schedule.empty() || n_schedule.empty()) throw Error("theta_limit: empty schedule");
  for (std::size_t i = 1; i < q_schedule.size(); ++i) {
    if (q_schedule[i] <= q_schedule[i - 1]) throw Error("theta_limit: q schedule must increase");
  }
  for (std::size_t i = 1; i < n_schedule.size(); ++i) {
    if (n_schedule[i] <= n_schedule[i - 1]) throw Error("theta_limit: n schedule must increase");
  }
  ThetaLimit out;
  out.n_schedule = n_schedule;
  out.q_schedule = q_schedule;
  for (auto n : n_schedule) {
    std::vector<EstimateResult> row;
    for (auto q : q_schedule) row.push_back(theta_exact(sys, tau, n, q, budget));
    out.table.push_back(std::move(row));
  }

  // q_star: the latest settling index over all n
  std::optional<std::size_t> qk;
  bool q_ok = true;
  for (const auto& row : out.table) {
    std::vector<double> v;
    for (const auto& r : row) v.push_back(r.value);
    auto k = detail::settles_at(v, kStableTolerance);
    if (!k) {
      q_ok = false;
      break;
    }
    if (!qk || *k > *qk) qk = k;
  }

  out.result = out.table.back().back();
  if (out.result.status == Status::BudgetExceeded) return out;
  if (!q_ok) {
    out.result.status = Status::NonConverged;
    out.result.note = "ratio still moving at the end of the q schedule";
    return out;
  }
  out.q_star = q_schedule[*qk];

  std::vector<double> along_n;
  for (const auto& row : out.table) along_n.push_back(row.back().value);
  auto nk = detail::settles_at(along_n, kStableTolerance);
  if (!nk) {
    out.result.status = Status::NonConverged;
    out.result.note = "ratio still moving at the end of the n schedule";
    return out;
  }
  out.n0 = n_schedule[*nk];
  out.result.note = "q*=" + std::to_string(*out.q_star) + " n0=" + std::to_string(*out.n0);
  return out;
}

// ---------------------------------------------------------------------------
// Anti-clustering diagnostic

struct ConditionCheckConfig {
  std::uint64_t k_n = 0;
  std::uint64_t t_n = 0;
  std::optional<unsigned> j_max;  // cap on the summation index

  static ConditionCheckConfig defaults(std::uint64_t n) {
    ConditionCheckConfig c;
    c.k_n = static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<long double>(n))));
    c.t_n = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<long double>(n), 0.25L)));
    while ((c.k_n + 1) * (c.k_n + 1) <= n) ++c.k_n;
    while (c.k_n * c.k_n > n) --c.k_n;
    auto p4 = [](std::uint64_t t) { return t * t * t * t; };
    while (p4(c.t_n + 1) <= n) ++c.t_n;
    while (c.t_n > 0 && p4(c.t_n) > n) --c.t_n;
    return c;
  }

  // Last j of the sum: floor(n / k_n) - 1, cut at j_max.
  std::uint64_t last_index(std::uint64_t n) const {
    if (k_n == 0) throw Error("k_n must be positive");
    std::uint64_t j = n / k_n;
    j = j == 0 ? 0 : j - 1;
    if (j_max && *j_max < j) j = *j_max;
    return j;
  }
};

// k_n t_n / n along the schedule; it must decrease for the block/gap choice to
// be o(n).
inline bool schedule_is_sparse(const std::vector<std::uint64_t>& n_schedule) {
  double prev = std::numeric_limits<double>::infinity();
  for (auto n : n_schedule) {
    auto c = ConditionCheckConfig::defaults(n);
    double r = static_cast<double>(c.k_n * c.t_n) / static_cast<double>(n);
    if (!(r < prev)) return false;
    prev = r;
  }
  return true;
}

// n Σ_{j=q+1}^{J} μ(A^(q) ∩ f^{-j} A^(q)), exact.
inline EstimateResult delta_prime_exact(const System& sys, const Tau& tau, std::uint64_t n, unsigned q,
                                        const ConditionCheckConfig& cfg,
                                        std::size_t budget = dynamics::kDefaultComponentBudget) {
  require_circle(sys, "delta_prime");
  EstimateResult r;
  r.n = n;
  r.q = q;
  IntervalSet a;
  try {
    a = aq_set(sys, tau, n, q, budget).set;
  } catch (const BudgetExceeded& e) {
    r.status = Status::BudgetExceeded;
    r.value = std::nan("");
    r.note = e.what();
    return r;
  }
  std::uint64_t last = cfg.last_index(n);
  Rational sum = 0;
  for (std::uint64_t j = q + 1; j <= last; ++j) {
    sum += dynamics::pullback_measure_within(sys.map, a, a, static_cast<unsigned>(j));
  }
  r = EstimateResult::exactly(big(n) * sum, n, q);
  r.note = "j=" + std::to_string(q + 1) + ".." + std::to_string(last);
  return r;
}

// Lag-j autocovariance of the indicator of A^(q), exact. Reported as a
// mixing diagnostic only.
inline std::vector<Rational> autocovariance_exact(const System& sys, const Tau& tau, std::uint64_t n, unsigned q,
                                                  unsigned max_lag) {
  IntervalSet a = aq_set(sys, tau, n, q).set;
  Rational m = a.measure();
  std::vector<Rational> out;
  for (unsigned j = 1; j <= max_lag; ++j) out.push_back(dynamics::pullback_measure_within(sys.map, a, a, j) - m * m);
  return out;
}

// G = exp(-θ Γ̂), with first-order error propagation.
inline EstimateResult g_value(const EstimateResult& theta, const EstimateResult& gamma_hat) {
  EstimateResult r;
  r.n = theta.n;
  r.q = theta.q;
  r.value = std::exp(-theta.value * gamma_hat.value);
  r.std_error = r.value * std::hypot(gamma_hat.value * theta.std_error, theta.value * gamma_hat.std_error);
  r.exact = false;
  r.status = theta.status != Status::Ok ? theta.status : gamma_hat.status;
  return r;
}

}  // namespace mevd::engine
