#pragma once

// Cross-checks of the engine against the catalog, one function per
// acceptance criterion. Every tolerance is a named constant below. Used by
// `mevd verify` and by the acceptance test binary.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mevd/catalog.hpp"
#include "mevd/circle_geometry.hpp"
#include "mevd/commands.hpp"
#include "mevd/csv.hpp"
#include "mevd/dependence.hpp"
#include "mevd/extremes.hpp"
#include "mevd/monte_carlo.hpp"
#include "mevd/presets.hpp"

namespace mevd::verify {

using catalog::ExampleId;

// C1, C2: exact rational comparison, no tolerance.
inline constexpr std::uint64_t kExactN = 1ull << 18;
// C3
inline constexpr std::uint64_t kBlockN = 5000;
inline constexpr std::uint64_t kBlockTrials = 200'000;
inline constexpr double kStderrMultiple = 3.0;
inline constexpr double kFiniteNAllowance = 0.01;
// C4, C5 (cat map)
inline constexpr std::uint64_t kCatN = 1000;
inline constexpr std::uint64_t kCatOrbit = 10'000'000;
inline constexpr double kCatBreakLo = 0.70;
inline constexpr double kCatBreakHi = 0.82;
// C6
inline constexpr double kGridStep = 0.01;
inline constexpr int kGeometryInstances = 10'000;
// C7
inline constexpr std::uint64_t kDeltaN = 1ull << 40;
inline constexpr unsigned kDeltaJMax = 20;
// C8
inline constexpr double kSlopeTolerance = 1e-7;
inline constexpr double kKinkTolerance = 1e-6;
inline constexpr double kPlateauTolerance = 1e-12;

inline constexpr std::uint64_t kSeed = 20240601;

struct Criterion {
  Criterion(std::string id_, std::string name_) : id(std::move(id_)), name(std::move(name_)) {}

  std::string id;
  std::string name;
  enum class Verdict { Pass, Fail, Skip } verdict = Verdict::Pass;
  std::vector<std::string> failures;
  std::string detail;

  bool passed() const { return verdict != Verdict::Fail; }
  void fail(std::string why) {
    verdict = Verdict::Fail;
    failures.push_back(std::move(why));
  }
  std::string line() const {
    std::ostringstream os;
    os << (verdict == Verdict::Pass ? "PASS" : verdict == Verdict::Fail ? "FAIL" : "SKIP") << " " << id << " " << name;
    if (!detail.empty()) os << " | " << detail;
    for (std::size_t i = 0; i < failures.size() && i < 8; ++i) os << "\n    " << failures[i];
    if (failures.size() > 8) os << "\n    ... " << failures.size() - 8 << " more";
    return os.str();
  }
};

// Perturbs the catalog θ by 1/1000 at one (example, α) cell.
struct Fault {
  ExampleId id;
  Rational alpha;
};

// "catalog:LinkedPeriodic:1/2"
inline Fault parse_fault(const std::string& text) {
  auto parts = config::split(text, ':');
  if (parts.size() != 3 || parts[0] != "catalog") throw ConfigError("fault must look like catalog:<example>:<alpha>");
  return {config::parse_example_id(parts[1]), config::rational_field("fault", parts[2])};
}

struct Options {
  bool mc = true;
  std::optional<ExampleId> only;
  std::optional<Fault> fault;
  unsigned threads = 0;
};

namespace detail {

inline bool selected(const Options& o, ExampleId id) { return !o.only || *o.only == id; }

inline std::string show(const Rational& r) { return to_fraction_string(r); }

inline std::string show(const engine::Tau& tau) {
  std::string s = "(";
  for (std::size_t i = 0; i < tau.size(); ++i) s += (i ? "," : "") + show(tau[i]);
  return s + ")";
}

inline std::string num(double x) { return format_decimal(x, 6); }

inline std::vector<ExampleId> circle_examples() {
  std::vector<ExampleId> out;
  for (auto id : catalog::kAllExamples) {
    if (catalog::on_circle(id)) out.push_back(id);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// C1

inline Criterion exact_catalog(const Options& opt) {
  Criterion c("C1", "exact finite-n theta equals the catalog, n = 2^18");
  std::size_t cells = 0;
  for (auto id : detail::circle_examples()) {
    if (!detail::selected(opt, id)) continue;
    auto p = presets::preset(id);
    std::vector<engine::Tau> taus;
    if (id == ExampleId::Trivariate) {
      for (int k = 1; k <= 19; ++k) {
        for (int l = 1; k + l <= 19; ++l) taus.push_back({Rational(k, 20), Rational(l, 20), Rational(20 - k - l, 20)});
      }
    } else {
      for (int k = 1; k <= 19; ++k) taus.push_back({Rational(k, 20), Rational(20 - k, 20)});
    }
    for (const auto& tau : taus) {
      ++cells;
      auto r = engine::theta_exact(p.system, tau, kExactN, p.q);
      Rational want = catalog::theta<Rational>(id, tau);
      if (opt.fault && opt.fault->id == id && opt.fault->alpha == tau[0]) want += Rational(1, 1000);
      if (r.status != engine::Status::Ok || !r.exact_value) {
        c.fail(catalog::to_string(id) + " tau=" + detail::show(tau) + ": " + engine::to_string(r.status));
      } else if (*r.exact_value != want) {
        std::string cell = id == ExampleId::Trivariate ? " alpha=" + detail::show(tau[0]) + " beta=" + detail::show(tau[1])
                                                       : " alpha=" + detail::show(tau[0]);
        c.fail(catalog::to_string(id) + cell + ": engine " + detail::show(*r.exact_value) + " catalog " +
               detail::show(want));
      }
    }
  }
  // published spot values at α = 1/2
  struct Spot {
    ExampleId id;
    Rational value;
  };
  for (auto s : {Spot{ExampleId::LinkedNonPeriodic, Rational(3, 4)}, Spot{ExampleId::LinkedPeriodic, Rational(1, 2)},
                 Spot{ExampleId::LinkedPeriodic2, Rational(2, 3)}, Spot{ExampleId::OverlapNonPeriodic, Rational(2, 3)},
                 Spot{ExampleId::OverlapPeriodic, Rational(2, 3)}}) {
    if (!detail::selected(opt, s.id)) continue;
    auto p = presets::preset(s.id);
    auto r = engine::theta_exact(p.system, {Rational(1, 2), Rational(1, 2)}, kExactN, p.q);
    if (!r.exact_value || *r.exact_value != s.value) {
      c.fail(catalog::to_string(s.id) + " spot theta(1/2): got " + (r.exact_value ? detail::show(*r.exact_value) : "none") +
             " want " + detail::show(s.value));
    }
  }
  c.detail = std::to_string(cells) + " cells, tolerance 0";
  if (cells == 0) c.verdict = Criterion::Verdict::Skip;
  return c;
}

// ---------------------------------------------------------------------------
// C2

inline Criterion gamma_hat_formulas(const Options& opt) {
  Criterion c("C2", "gamma_hat reproduces max, sum and sum - min/2 exactly, n = 2^18");
  const std::vector<Rational> grid = {Rational(1, 4), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3)};
  struct Case {
    ExampleId id;
    Rational (*formula)(const engine::Tau&);
  };
  const std::vector<Case> cases = {
      {ExampleId::CommonPoint, +[](const engine::Tau& t) -> Rational { return t[0] < t[1] ? t[1] : t[0]; }},
      {ExampleId::DisjointPoints, +[](const engine::Tau& t) -> Rational { return t[0] + t[1]; }},
      {ExampleId::OverlapNonPeriodic,
       +[](const engine::Tau& t) -> Rational { return t[0] + t[1] - (t[0] < t[1] ? t[0] : t[1]) / 2; }},
  };
  std::size_t cells = 0;
  for (const auto& k : cases) {
    if (!detail::selected(opt, k.id)) continue;
    auto p = presets::preset(k.id);
    for (const auto& a : grid) {
      for (const auto& b : grid) {
        engine::Tau tau = {a, b};
        ++cells;
        auto r = engine::gamma_hat(p.system, tau, kExactN);
        if (*r.exact_value != k.formula(tau)) {
          c.fail(catalog::to_string(k.id) + " tau=" + detail::show(tau) + ": " + detail::show(*r.exact_value) + " vs " +
                 detail::show(k.formula(tau)));
        }
      }
    }
  }
  c.detail = std::to_string(cells) + " cells";
  if (cells == 0) c.verdict = Criterion::Verdict::Skip;
  return c;
}

// ---------------------------------------------------------------------------
// C3

inline Criterion block_maxima_limit(const Options& opt) {
  Criterion c("C3", "block maxima match exp(-theta gamma_hat), tau = (1,1), n = 5000");
  if (!opt.mc) {
    c.verdict = Criterion::Verdict::Skip;
    c.detail = "exact-only mode";
    return c;
  }
  std::ostringstream d;
  bool any = false;
  for (auto id : {ExampleId::DisjointPoints, ExampleId::LinkedPeriodic, ExampleId::OverlapNonPeriodic}) {
    if (!detail::selected(opt, id)) continue;
    any = true;
    auto p = presets::preset(id);
    engine::Tau tau = {Rational(1), Rational(1)};
    auto r = mc::mc_block_maxima(p.system, tau, kBlockN, kBlockTrials, kSeed, opt.threads);
    double want = std::exp(-to_double(catalog::theta<Rational>(id, tau) * catalog::gamma_hat<Rational>(id, tau)));
    double tol = kStderrMultiple * r.std_error + kFiniteNAllowance;
    d << catalog::to_string(id) << " " << detail::num(r.value) << "+-" << detail::num(r.std_error) << " vs "
      << detail::num(want) << "; ";
    if (!(std::fabs(r.value - want) <= tol)) {
      c.fail(catalog::to_string(id) + ": estimate " + detail::num(r.value) + " target " + detail::num(want) +
             " tolerance " + detail::num(tol));
    }
  }
  c.detail = d.str();
  if (!any) c.verdict = Criterion::Verdict::Skip;
  return c;
}

// ---------------------------------------------------------------------------
// C4

struct CatFit {
  std::vector<double> alphas, estimates, errors;
  double slope_left = 0, slope_right = 0, breakpoint = 0;
};

// Left piece is a line through (0, 1) fitted to α ≤ 1/2 by least squares,
// right piece a line through the origin fitted to α > 1/2; the breakpoint is
// where they cross.
inline CatFit fit_cat_breakpoint(const std::vector<double>& alphas, const std::vector<double>& theta) {
  CatFit f;
  f.alphas = alphas;
  f.estimates = theta;
  double lxx = 0, lxy = 0, rxx = 0, rxy = 0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    double a = alphas[i];
    if (a <= 0.5) {
      lxx += a * a;
      lxy += a * (1 - theta[i]);
    } else {
      rxx += a * a;
      rxy += a * theta[i];
    }
  }
  if (lxx == 0 || rxx == 0) throw Error("breakpoint fit needs points on both sides of 1/2");
  f.slope_left = lxy / lxx;
  f.slope_right = rxy / rxx;
  f.breakpoint = 1 / (f.slope_left + f.slope_right);
  return f;
}

inline Criterion cat_map_theta(const Options& opt) {
  Criterion c("C4", "cat map runs estimate of theta and its breakpoint");
  if (!opt.mc || !detail::selected(opt, ExampleId::CatMap)) {
    c.verdict = Criterion::Verdict::Skip;
    c.detail = opt.mc ? "not selected" : "exact-only mode";
    return c;
  }
  auto p = presets::preset(ExampleId::CatMap);
  std::vector<double> alphas = {0.3, 0.5, 0.9}, est;
  std::ostringstream d;
  for (double a : alphas) {
    engine::Tau tau = {from_double(a), Rational(1) - from_double(a)};
    auto r = mc::mc_theta_runs(p.system, tau, kCatN, p.q, kCatOrbit, kSeed);
    double want = catalog::theta_cat(a);
    double tol = kStderrMultiple * r.std_error + kFiniteNAllowance;
    est.push_back(r.value);
    d << "alpha=" << a << " " << detail::num(r.value) << "+-" << detail::num(r.std_error) << " vs " << detail::num(want)
      << "; ";
    if (!(std::fabs(r.value - want) <= tol)) {
      c.fail("alpha=" + detail::num(a) + ": estimate " + detail::num(r.value) + " formula " + detail::num(want));
    }
  }
  auto fit = fit_cat_breakpoint(alphas, est);
  d << "breakpoint " << detail::num(fit.breakpoint) << " (true " << detail::num(catalog::cat_turning_point()) << ")";
  if (!(fit.breakpoint > kCatBreakLo && fit.breakpoint < kCatBreakHi)) {
    c.fail("fitted breakpoint " + detail::num(fit.breakpoint) + " outside (0.70, 0.82)");
  }
  c.detail = d.str();
  return c;
}

// ---------------------------------------------------------------------------
// C5

inline Criterion marginals(const Options& opt) {
  Criterion c("C5", "marginal extremal indices");
  std::ostringstream d;
  for (auto id : {ExampleId::LinkedNonPeriodic, ExampleId::LinkedPeriodic, ExampleId::LinkedPeriodic2,
                  ExampleId::OverlapPeriodic}) {
    if (!detail::selected(opt, id)) continue;
    auto p = presets::preset(id);
    auto want = catalog::marginals_exact(id);
    for (std::size_t j = 0; j < 2; ++j) {
      engine::Tau tau = {Rational(j == 0 ? 1 : 0), Rational(j == 1 ? 1 : 0)};
      auto r = engine::theta_exact(p.system, tau, kExactN, p.q);
      if (!r.exact_value || *r.exact_value != want[j]) {
        c.fail(catalog::to_string(id) + " theta_" + std::to_string(j + 1) + ": " +
               (r.exact_value ? detail::show(*r.exact_value) : "none") + " want " + detail::show(want[j]));
      }
    }
    d << catalog::to_string(id) << " (" << detail::show(want[0]) << "," << detail::show(want[1]) << ") ";
  }
  if (opt.mc && detail::selected(opt, ExampleId::CatMap)) {
    auto p = presets::preset(ExampleId::CatMap);
    auto want = catalog::marginals(ExampleId::CatMap);
    for (std::size_t j = 0; j < 2; ++j) {
      engine::Tau tau = {Rational(j == 0 ? 1 : 0), Rational(j == 1 ? 1 : 0)};
      auto r = mc::mc_theta_runs(p.system, tau, kCatN, p.q, kCatOrbit, kSeed + 1 + j);
      d << "CatMap theta_" << j + 1 << " " << detail::num(r.value) << "+-" << detail::num(r.std_error) << " vs "
        << detail::num(want[j]) << " ";
      if (!(std::fabs(r.value - want[j]) <= kStderrMultiple * r.std_error)) {
        c.fail("CatMap theta_" + std::to_string(j + 1) + ": " + detail::num(r.value) + " want " + detail::num(want[j]) +
               " within 3 stderr " + detail::num(r.std_error));
      }
    }
  }
  c.detail = d.str();
  return c;
}

// ---------------------------------------------------------------------------
// C6

namespace detail {

// Difference by a sweep over the merged endpoint list, testing membership of
// each elementary piece by its midpoint. Independent of the library's
// intersect/complement.
inline geometry::IntervalSet sweep_difference(const geometry::IntervalSet& a, const geometry::IntervalSet& b) {
  std::vector<Rational> cuts = {Rational(0), Rational(1)};
  for (const auto* s : {&a, &b}) {
    for (const auto& p : s->pieces()) {
      cuts.push_back(p.lo);
      cuts.push_back(p.hi);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<geometry::Piece> keep;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    if (a.contains(mid) && !b.contains(mid)) keep.push_back({cuts[i], cuts[i + 1]});
  }
  return geometry::IntervalSet::from_pieces(std::move(keep));
}

inline geometry::IntervalSet random_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 4), den(1, 16);
  std::vector<geometry::Arc> arcs;
  int k = count(rng);
  for (int i = 0; i < k; ++i) {
    int d = den(rng);
    std::uniform_int_distribution<int> start(0, d - 1), len(1, d);
    arcs.push_back({Rational(start(rng), d), Rational(len(rng), 2 * d)});
  }
  return geometry::IntervalSet::from_arcs(arcs);
}

inline bool well_formed(const geometry::IntervalSet& s) {
  const auto& p = s.pieces();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i].lo < p[i].hi) || p[i].lo < 0 || p[i].hi > 1) return false;
    if (i > 0 && !(p[i - 1].hi < p[i].lo)) return false;
  }
  return true;
}

}  // namespace detail

// Additivity, De Morgan, and agreement with the sweep oracle on random
// small sets. Returns failure descriptions.
inline std::vector<std::string> geometry_properties(int instances, std::uint64_t seed) {
  using geometry::IntervalSet;
  std::vector<std::string> bad;
  std::mt19937_64 rng(seed);
  const IntervalSet full = IntervalSet::full();
  for (int i = 0; i < instances && bad.size() < 20; ++i) {
    IntervalSet a = detail::random_set(rng), b = detail::random_set(rng);
    IntervalSet u = a | b, x = a & b, d = a - b;
    std::string tag = "instance " + std::to_string(i) + ": ";
    if (u.measure() + x.measure() != a.measure() + b.measure()) bad.push_back(tag + "inclusion-exclusion");
    if (d.measure() + x.measure() != a.measure()) bad.push_back(tag + "a = (a-b) + (a&b)");
    if (d != detail::sweep_difference(a, b)) bad.push_back(tag + "difference disagrees with sweep oracle");
    if ((full - u) != ((full - a) & (full - b))) bad.push_back(tag + "De Morgan for union");
    if ((full - x) != ((full - a) | (full - b))) bad.push_back(tag + "De Morgan for intersection");
    if ((a | b) != (b | a) || (a & b) != (b & a)) bad.push_back(tag + "commutativity");
    if ((a | a) != a || (a & a) != a) bad.push_back(tag + "idempotence");
    for (const auto* s : {&u, &x, &d}) {
      if (!detail::well_formed(*s)) bad.push_back(tag + "result breaks the set invariants");
    }
  }
  return bad;
}

inline Criterion properties(const Options& opt) {
  Criterion c("C6", "validator on catalog and logistic family, geometry properties");
  std::size_t checked = 0;
  for (auto id : catalog::kAllExamples) {
    if (!detail::selected(opt, id)) continue;
    auto rep = dependence::validate(dependence::closed_form(id), kGridStep);
    checked += rep.points_checked;
    for (const auto& v : rep.violations) {
      c.fail(rep.name + ": " + v.check + " at " + v.where + " got " + detail::num(v.got) + " bound " + detail::num(v.bound));
    }
  }
  if (!opt.only) {
    for (double beta : commands::default_betas()) {
      auto rep = dependence::validate(dependence::logistic(beta), kGridStep);
      checked += rep.points_checked;
      for (const auto& v : rep.violations) c.fail(rep.name + ": " + v.check + " at " + v.where);
    }
    for (const auto& b : geometry_properties(kGeometryInstances, kSeed)) c.fail("geometry " + b);
    c.detail = std::to_string(checked) + " grid points, " + std::to_string(kGeometryInstances) + " random set pairs";
  } else {
    c.detail = std::to_string(checked) + " grid points";
  }
  return c;
}

// ---------------------------------------------------------------------------
// C7

inline Criterion delta_prime(const Options& opt) {
  Criterion c("C7", "anti-clustering partial sums vanish at the stabilising q, n = 2^40, j <= 20");
  // positive_before: Δ at q-1 must also be strictly positive
  struct Case {
    ExampleId id;
    engine::Tau tau;
    bool positive_before;
  };
  const std::vector<Case> cases = {
      {ExampleId::DisjointPoints, {1, 1}, false},    {ExampleId::LinkedNonPeriodic, {1, 1}, false},
      {ExampleId::LinkedPeriodic, {1, 1}, false},    {ExampleId::LinkedPeriodic, {4, 1}, true},
      {ExampleId::LinkedPeriodic2, {1, 1}, true},    {ExampleId::OverlapPeriodic, {1, 1}, true},
  };
  auto cfg = engine::ConditionCheckConfig::defaults(kDeltaN);
  cfg.j_max = kDeltaJMax;
  std::ostringstream d;
  bool any = false;
  for (const auto& k : cases) {
    if (!detail::selected(opt, k.id)) continue;
    any = true;
    auto p = presets::preset(k.id);
    auto at = engine::delta_prime_exact(p.system, k.tau, kDeltaN, p.q, cfg);
    std::string name = catalog::to_string(k.id) + " tau=" + detail::show(k.tau);
    if (!at.exact_value || *at.exact_value != 0) {
      c.fail(name + " q=" + std::to_string(p.q) + ": " + (at.exact_value ? detail::show(*at.exact_value) : "none"));
    }
    d << name << " q=" << p.q << ":0";
    if (k.positive_before) {
      auto before = engine::delta_prime_exact(p.system, k.tau, kDeltaN, p.q - 1, cfg);
      if (!before.exact_value || !(*before.exact_value > 0)) {
        c.fail(name + " q=" + std::to_string(p.q - 1) + " should be positive");
      } else {
        d << " q=" << p.q - 1 << ":" << detail::num(before.value);
      }
    }
    d << "; ";
  }
  c.detail = d.str();
  if (!any) c.verdict = Criterion::Verdict::Skip;
  return c;
}

// ---------------------------------------------------------------------------
// C8

struct Curve {
  std::vector<double> x, y;
};

inline Curve curve_from_csv(const std::string& text, const std::string& xcol, const std::string& ycol,
                            const std::string& filter_col = "", const std::string& filter_value = "") {
  auto p = csv::parse(text);
  auto xi = p.column(xcol), yi = p.column(ycol);
  std::optional<std::size_t> fi;
  if (!filter_col.empty()) fi = p.column(filter_col);
  Curve c;
  for (const auto& r : p.rows) {
    if (fi && r[*fi] != filter_value) continue;
    c.x.push_back(std::stod(r[xi]));
    c.y.push_back(std::stod(r[yi]));
  }
  return c;
}

// Kinks of a sampled piecewise-linear curve. A kink on a grid point shows as
// one slope change; a kink strictly inside a cell bends that cell's chord, and
// is located where the neighbouring lines cross.
inline std::vector<double> kinks(const Curve& c) {
  std::vector<double> slope;
  for (std::size_t i = 0; i + 1 < c.x.size(); ++i) slope.push_back((c.y[i + 1] - c.y[i]) / (c.x[i + 1] - c.x[i]));
  auto same = [](double a, double b) { return std::fabs(a - b) <= kSlopeTolerance; };
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < slope.size(); ++i) {
    if (same(slope[i], slope[i + 1])) continue;
    if (i + 2 < slope.size() && !same(slope[i + 1], slope[i + 2])) {
      // lines through cells i and i+2
      double b1 = c.y[i] - slope[i] * c.x[i];
      double b2 = c.y[i + 2] - slope[i + 2] * c.x[i + 2];
      out.push_back((b2 - b1) / (slope[i] - slope[i + 2]));
      i += 1;
    } else {
      out.push_back(c.x[i + 1]);
    }
  }
  return out;
}

inline Criterion figures(const Options& opt) {
  Criterion c("C8", "closed-form CSVs reproduce the published breakpoints and plateaus");
  const Rational step(1, 100);
  std::ostringstream d;
  auto expect_kinks = [&](const std::string& what, const Curve& cv, std::vector<double> want) {
    auto got = kinks(cv);
    bool ok = got.size() == want.size();
    for (std::size_t i = 0; ok && i < got.size(); ++i) ok = std::fabs(got[i] - want[i]) <= kKinkTolerance;
    std::ostringstream g;
    for (double x : got) g << detail::num(x) << " ";
    if (!ok) c.fail(what + ": kinks at " + g.str());
    d << what << " kinks " << g.str() << "; ";
  };
  auto expect_plateau = [&](const std::string& what, const Curve& cv, double lo, double hi, double value) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < cv.x.size(); ++i) {
      if (cv.x[i] > lo && cv.x[i] <= hi) {
        ++hits;
        if (std::fabs(cv.y[i] - value) > kPlateauTolerance) {
          c.fail(what + ": D(" + detail::num(cv.x[i]) + ") = " + detail::num(cv.y[i]) + " off the plateau " + detail::num(value));
          return;
        }
      }
    }
    if (hits == 0) c.fail(what + ": plateau not sampled");
  };

  if (detail::selected(opt, ExampleId::LinkedPeriodic)) {
    auto text = commands::closed_form(ExampleId::LinkedPeriodic, step).str();
    auto D = curve_from_csv(text, "alpha", "D");
    expect_kinks("LinkedPeriodic D", D, {1.0 / 3, 2.0 / 3});
    expect_plateau("LinkedPeriodic D", D, 1.0 / 3, 2.0 / 3, 2.0 / 3);
  }
  if (detail::selected(opt, ExampleId::OverlapPeriodic)) {
    auto text = commands::closed_form(ExampleId::OverlapPeriodic, step).str();
    auto D = curve_from_csv(text, "alpha", "D");
    expect_kinks("OverlapPeriodic D", D, {0.25, 0.75});
    expect_plateau("OverlapPeriodic D", D, 0.25, 0.75, 0.75);
  }
  if (detail::selected(opt, ExampleId::CatMap)) {
    auto text = commands::closed_form(ExampleId::CatMap, step).str();
    auto D = curve_from_csv(text, "alpha", "D");
    auto th = curve_from_csv(text, "alpha", "theta");
    expect_kinks("CatMap D", D, {2.0 / 3});
    expect_kinks("CatMap theta", th, {catalog::cat_turning_point()});
    if (D.y.front() != 1 || D.y.back() != 1) c.fail("CatMap D(0), D(1) not 1");
  }
  // endpoints of every bivariate example on the grid {0, 1}
  for (auto id : catalog::kAllExamples) {
    if (id == ExampleId::Trivariate || !detail::selected(opt, id)) continue;
    auto text = commands::closed_form(id, Rational(1)).str();
    auto D = curve_from_csv(text, "alpha", "D");
    if (D.y.size() != 2 || D.y[0] != 1 || D.y[1] != 1) c.fail(catalog::to_string(id) + ": D at the simplex endpoints is not 1");
  }
  if (!opt.only) {
    auto t = commands::pickands_table_header();
    commands::logistic_rows(t, commands::default_betas(), step);
    auto text = t.str();
    std::vector<Curve> family;
    for (double beta : commands::default_betas()) family.push_back(curve_from_csv(text, "alpha", "D", "beta", csv::cell(beta)));
    for (std::size_t k = 1; k < family.size(); ++k) {
      for (std::size_t i = 0; i < family[k].y.size(); ++i) {
        if (family[k].y[i] < family[k - 1].y[i] - kPlateauTolerance) {
          c.fail("logistic D not monotone in beta at alpha=" + detail::num(family[k].x[i]));
          break;
        }
      }
    }
    d << "logistic family ordered in beta";
  }
  c.detail = d.str();
  return c;
}

// ---------------------------------------------------------------------------

inline std::vector<Criterion> run_all(const Options& opt) {
  return {exact_catalog(opt), gamma_hat_formulas(opt), block_maxima_limit(opt), cat_map_theta(opt),
          marginals(opt),     properties(opt),         delta_prime(opt),        figures(opt)};
}

}  // namespace mevd::verify
