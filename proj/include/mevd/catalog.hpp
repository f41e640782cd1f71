#pragma once

// Closed-form dependence functions of the worked examples, written once as
// templates over the scalar type: Rational for the exact comparisons on the
// circle examples, double everywhere else.
//
// Piecewise formulas put a breakpoint in the left piece (≤), matching the
// published case brackets.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mevd/error.hpp"
#include "mevd/rational.hpp"

namespace mevd::catalog {

enum class ExampleId {
  CommonPoint,
  DisjointPoints,
  LinkedNonPeriodic,
  LinkedPeriodic,
  LinkedPeriodic2,
  OverlapNonPeriodic,
  Trivariate,
  OverlapPeriodic,
  CatMap,
};

inline constexpr std::array<ExampleId, 9> kAllExamples = {
    ExampleId::CommonPoint,     ExampleId::DisjointPoints,     ExampleId::LinkedNonPeriodic,
    ExampleId::LinkedPeriodic,  ExampleId::LinkedPeriodic2,    ExampleId::OverlapNonPeriodic,
    ExampleId::Trivariate,      ExampleId::OverlapPeriodic,    ExampleId::CatMap,
};

inline std::string to_string(ExampleId id) {
  switch (id) {
    case ExampleId::CommonPoint: return "CommonPoint";
    case ExampleId::DisjointPoints: return "DisjointPoints";
    case ExampleId::LinkedNonPeriodic: return "LinkedNonPeriodic";
    case ExampleId::LinkedPeriodic: return "LinkedPeriodic";
    case ExampleId::LinkedPeriodic2: return "LinkedPeriodic2";
    case ExampleId::OverlapNonPeriodic: return "OverlapNonPeriodic";
    case ExampleId::Trivariate: return "Trivariate";
    case ExampleId::OverlapPeriodic: return "OverlapPeriodic";
    case ExampleId::CatMap: return "CatMap";
  }
  return "?";
}

// Accepts the plain names and the same names with a section suffix such as
// "LinkedPeriodic_3_2_2".
inline std::optional<ExampleId> parse_example(std::string name) {
  for (;;) {
    auto us = name.rfind('_');
    if (us == std::string::npos || us + 1 == name.size()) break;
    bool digits = std::all_of(name.begin() + static_cast<long>(us) + 1, name.end(),
                              [](char c) { return c >= '0' && c <= '9'; });
    if (!digits) break;
    name.erase(us);
  }
  for (auto id : kAllExamples) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

inline std::size_t dimension(ExampleId id) { return id == ExampleId::Trivariate ? 3 : 2; }

inline bool on_circle(ExampleId id) { return id != ExampleId::CatMap; }

// λ = (3 + √5) / 2
inline double cat_lambda() { return (3.0 + std::sqrt(5.0)) / 2.0; }
inline double cat_turning_point() {
  double l = cat_lambda();
  return 2 * l / (3 * l - 1);
}

template <class T>
T tmin(const T& a, const T& b) { return b < a ? b : a; }
template <class T>
T tmax(const T& a, const T& b) { return a < b ? b : a; }

template <class T>
T frac(long p, long q) { return T(p) / T(q); }

// ---------------------------------------------------------------------------
// Bivariate formulas in the simplex coordinate a = τ1 / (τ1 + τ2).

template <class T>
T theta_common_point(const T&) { return T(1); }
template <class T>
T D_common_point(const T& a) { return tmax(a, T(1) - a); }

template <class T>
T theta_disjoint(const T&) { return T(1); }
template <class T>
T D_disjoint(const T&) { return T(1); }

template <class T>
T theta_linked_nonperiodic(const T& a) {
  if (a <= frac<T>(1, 3)) return T(1) - a;
  return (T(1) + a) / 2;
}
template <class T>
T D_linked_nonperiodic(const T& a) { return theta_linked_nonperiodic(a); }

template <class T>
T theta_linked_periodic(const T& a) {
  if (a <= frac<T>(1, 3)) return frac<T>(3, 4) * (T(1) - a);
  if (a <= frac<T>(2, 3)) return frac<T>(1, 2);
  return T(3) * a / 4;
}
template <class T>
T D_linked_periodic(const T& a) {
  if (a <= frac<T>(1, 3)) return T(1) - a;
  if (a <= frac<T>(2, 3)) return frac<T>(2, 3);
  return a;
}

template <class T>
T theta_linked_periodic2(const T& a) {
  if (a <= frac<T>(1, 4)) return frac<T>(2, 3) * (T(1) - a);
  return frac<T>(1, 3) + T(2) * a / 3;
}
template <class T>
T D_linked_periodic2(const T& a) {
  if (a <= frac<T>(1, 3)) return T(1) - a;
  return (T(1) + a) / 2;
}

template <class T>
T theta_overlap_nonperiodic(const T& a) {
  if (a <= frac<T>(1, 3)) return (T(3) - T(3) * a) / (T(4) - T(2) * a);
  if (a <= frac<T>(1, 2)) return T(1) / (T(2) - a);
  if (a <= frac<T>(2, 3)) return T(1) / (T(1) + a);
  return T(3) * a / (T(2) + T(2) * a);
}
template <class T>
T D_overlap_nonperiodic(const T& a) { return D_linked_periodic(a); }

template <class T>
T theta_overlap_periodic(const T& a) {
  if (a <= frac<T>(1, 4)) return frac<T>(4, 3) * ((T(1) - a) / (T(2) - a));
  if (a <= frac<T>(1, 2)) return T(1) / (T(2) - a);
  if (a <= frac<T>(3, 4)) return T(1) / (T(1) + a);
  return frac<T>(4, 3) * (a / (T(1) + a));
}
template <class T>
T D_overlap_periodic(const T& a) {
  if (a <= frac<T>(1, 4)) return T(1) - a;
  if (a <= frac<T>(3, 4)) return frac<T>(3, 4);
  return a;
}

inline double theta_cat(double a) {
  double l = cat_lambda();
  if (a <= cat_turning_point()) return 1 - (1 + 1 / l) * a / 2;
  return (l - 1) * a / l;
}
inline double D_cat(double a) {
  if (a <= 2.0 / 3.0) return 1 - a / 2;
  return a;
}

// Trivariate: (a, b) = (τ1, τ2) / (τ1 + τ2 + τ3).
template <class T>
T theta_trivariate(const T& a, const T& b) {
  const T c = T(1) - a - b;
  auto term = [&](const T& x) {
    if (x == T(0)) return T(0);
    return x * (T(1) - tmax(T(0), T(1) - c / (T(2) * x)));
  };
  return T(1) - term(a) - term(b);
}

// ---------------------------------------------------------------------------
// Γ̂ on frequency vectors

template <class T>
T sum(const std::vector<T>& tau) {
  T s(0);
  for (const auto& t : tau) s += t;
  return s;
}

template <class T>
T gamma_hat_common_point(const std::vector<T>& tau) { return tmax(tau[0], tau[1]); }

template <class T>
T gamma_hat_independent(const std::vector<T>& tau) { return sum(tau); }

template <class T>
T gamma_hat_overlap(const std::vector<T>& tau) { return tau[0] + tau[1] - tmin(tau[0], tau[1]) / 2; }

// Overlap with local masses μ(B_r(ζ_k)) ~ c_k r.
inline double gamma_hat_overlap_general(const std::vector<double>& tau, double c1, double c2, double c3) {
  return tau[0] + tau[1] - c3 * std::min(tau[0] / (c1 + c3), tau[1] / (c2 + c3));
}

// ---------------------------------------------------------------------------
// General-density variants. Ratios ρ(·)/ρ(·) of the invariant density and
// the derivatives |Df| are inputs; the Lebesgue cases above follow by
// substituting the doubling or tripling values.

inline double theta_linked_nonperiodic_general(double a, double rho_ratio, double df) {
  if (a == 0) return 1;
  return a * std::max(0.0, 1 - rho_ratio * ((1 - a) / a) / df) + 1 - a;
}

// rho_ratio = ρ(ζ)/ρ(f ζ); df_z = |Df(ζ)|, df_fz = |Df(fζ)|, df2 = |Df²(ζ)|.
inline double theta_linked_periodic_general(double a, double rho_ratio, double df_z, double df_fz, double df2) {
  double first = 0, second = 0;
  if (a > 0) first = a * std::max(0.0, 1 - std::max((1 / df_z) * ((1 - a) / a) * rho_ratio, 1 / df2));
  if (a < 1) second = (1 - a) * std::max(0.0, 1 - std::max((1 / df_fz) * (a / (1 - a)) / rho_ratio, 1 / df2));
  return first + second;
}

// θ_ζ from the non-periodic link and a constant θ at the fixed point fζ.
inline double theta_linked_periodic2_general(double a, double rho_ratio, double df_z, double theta_fixed) {
  double first = a == 0 ? 0 : a * std::max(0.0, 1 - rho_ratio * ((1 - a) / a) / df_z);
  return first + (1 - a) * theta_fixed;
}

struct OverlapInputs {
  double p1, p2;      // share of the exceedance mass near ζ1, ζ2
  double R;           // μ(V1) / μ(V2)
  double r1 = 1, r2 = 1;
  double rho13 = 1;   // ρ(ζ1)/ρ(ζ3)
  double rho23 = 1;   // ρ(ζ2)/ρ(ζ3)
  double df1 = 2, df2 = 2;
};

inline double theta1_overlap_general(const OverlapInputs& in) {
  return std::max(0.0, 1 - (1 / in.df1) * std::max(in.rho13 * in.r1, in.rho13 * in.r2 / in.R));
}
inline double theta2_overlap_general(const OverlapInputs& in) {
  return std::max(0.0, 1 - (1 / in.df2) * std::max(in.rho23 * in.r2, in.rho23 * in.r1 * in.R));
}

// p3θ3 = 1 - p1 - p2 for the non-periodic overlap; pass the periodic value
// explicitly otherwise.
inline double theta_overlap_general(const OverlapInputs& in, std::optional<double> p3_theta3 = std::nullopt) {
  double th1 = theta1_overlap_general(in), th2 = theta2_overlap_general(in);
  double tail = p3_theta3 ? *p3_theta3 : 1 - in.p1 - in.p2;
  return in.p1 * th1 + in.p2 * th2 + tail;
}

// Lebesgue inputs for the doubling overlap at simplex coordinate a ∈ (0,1).
inline OverlapInputs overlap_lebesgue_inputs(double a, double df) {
  double m = std::max(a, 1 - a);
  OverlapInputs in;
  in.p1 = a / (1 + m);
  in.p2 = (1 - a) / (1 + m);
  in.R = a / (1 - a);
  in.df1 = in.df2 = df;
  return in;
}

inline double p3_theta3_overlap_periodic(double a) {
  double m = std::max(a, 1 - a);
  return m / (1 + m) * (2.0 / 3.0);
}

inline double theta_trivariate_general(double a, double b, double rho13, double rho23, double df1, double df2) {
  double c = 1 - a - b;
  double th1 = a == 0 ? 1 : std::max(0.0, 1 - (1 / df1) * (c / a) * rho13);
  double th2 = b == 0 ? 1 : std::max(0.0, 1 - (1 / df2) * (c / b) * rho23);
  return 1 - a * (1 - th1) - b * (1 - th2);
}

// ---------------------------------------------------------------------------
// Dispatch by example

template <class T>
std::vector<T> simplex_of(const std::vector<T>& tau) {
  T s = sum(tau);
  if (s == T(0)) throw Error("frequency vector is identically zero");
  std::vector<T> a;
  for (const auto& t : tau) a.push_back(t / s);
  return a;
}

template <class T>
T theta_on_simplex(ExampleId id, const std::vector<T>& alpha) {
  const T& a = alpha[0];
  switch (id) {
    case ExampleId::CommonPoint: return theta_common_point(a);
    case ExampleId::DisjointPoints: return theta_disjoint(a);
    case ExampleId::LinkedNonPeriodic: return theta_linked_nonperiodic(a);
    case ExampleId::LinkedPeriodic: return theta_linked_periodic(a);
    case ExampleId::LinkedPeriodic2: return theta_linked_periodic2(a);
    case ExampleId::OverlapNonPeriodic: return theta_overlap_nonperiodic(a);
    case ExampleId::Trivariate: return theta_trivariate(a, alpha[1]);
    case ExampleId::OverlapPeriodic: return theta_overlap_periodic(a);
    case ExampleId::CatMap:
      if constexpr (std::is_same_v<T, double>) return theta_cat(a);
      else throw TypeMismatch("the cat map formulas are irrational");
  }
  throw Error("unknown example");
}

template <class T>
T theta(ExampleId id, const std::vector<T>& tau) {
  if (tau.size() != dimension(id)) throw Error("frequency vector has the wrong length for " + to_string(id));
  return theta_on_simplex(id, simplex_of(tau));
}

template <class T>
T gamma_hat(ExampleId id, const std::vector<T>& tau) {
  if (tau.size() != dimension(id)) throw Error("frequency vector has the wrong length for " + to_string(id));
  switch (id) {
    case ExampleId::CommonPoint: return gamma_hat_common_point(tau);
    case ExampleId::OverlapNonPeriodic:
    case ExampleId::OverlapPeriodic: return gamma_hat_overlap(tau);
    default: return gamma_hat_independent(tau);
  }
}

// Pickands function as published.
template <class T>
T pickands_table(ExampleId id, const std::vector<T>& alpha) {
  const T& a = alpha[0];
  switch (id) {
    case ExampleId::CommonPoint: return D_common_point(a);
    case ExampleId::DisjointPoints: return D_disjoint(a);
    case ExampleId::LinkedNonPeriodic: return D_linked_nonperiodic(a);
    case ExampleId::LinkedPeriodic: return D_linked_periodic(a);
    case ExampleId::LinkedPeriodic2: return D_linked_periodic2(a);
    case ExampleId::OverlapNonPeriodic: return D_overlap_nonperiodic(a);
    case ExampleId::Trivariate: return theta_trivariate(a, alpha[1]);
    case ExampleId::OverlapPeriodic: return D_overlap_periodic(a);
    case ExampleId::CatMap:
      if constexpr (std::is_same_v<T, double>) return D_cat(a);
      else throw TypeMismatch("the cat map formulas are irrational");
  }
  throw Error("unknown example");
}

// Γ in the published (rescaled) form.
template <class T>
T gamma(ExampleId id, const std::vector<T>& tau) {
  if (tau.size() != dimension(id)) throw Error("frequency vector has the wrong length for " + to_string(id));
  const T s = sum(tau);
  if (s == T(0)) return T(0);
  switch (id) {
    case ExampleId::CommonPoint: return tmax(tau[0], tau[1]);
    case ExampleId::DisjointPoints: return s;
    case ExampleId::LinkedNonPeriodic:
      if (tau[0] <= tau[1] / 2) return tau[1];
      return tau[0] + tau[1] / 2;
    case ExampleId::LinkedPeriodic:
      return frac<T>(4, 3) * theta(id, tau) * gamma_hat(id, tau);
    case ExampleId::LinkedPeriodic2:
      if (tau[1] >= T(2) * tau[0]) return tau[1];
      return tau[0] + tau[1] / 2;
    case ExampleId::OverlapNonPeriodic:
      return frac<T>(4, 3) * theta(id, tau) * gamma_hat(id, tau);
    case ExampleId::Trivariate: return theta(id, tau) * gamma_hat(id, tau);
    case ExampleId::OverlapPeriodic:
      return frac<T>(3, 2) * theta(id, tau) * gamma_hat(id, tau);
    case ExampleId::CatMap:
      if constexpr (std::is_same_v<T, double>) return s * D_cat(tau[0] / s);
      else throw TypeMismatch("the cat map formulas are irrational");
  }
  throw Error("unknown example");
}

inline std::vector<double> marginals(ExampleId id) {
  switch (id) {
    case ExampleId::CommonPoint:
    case ExampleId::DisjointPoints:
    case ExampleId::LinkedNonPeriodic: return {1, 1};
    case ExampleId::LinkedPeriodic:
    case ExampleId::OverlapNonPeriodic: return {0.75, 0.75};
    case ExampleId::LinkedPeriodic2: return {1, 2.0 / 3.0};
    case ExampleId::Trivariate: return {1, 1, 1};
    case ExampleId::OverlapPeriodic: return {2.0 / 3.0, 2.0 / 3.0};
    case ExampleId::CatMap: return {1 - 1 / cat_lambda(), 1};
  }
  throw Error("unknown example");
}

inline std::vector<Rational> marginals_exact(ExampleId id) {
  switch (id) {
    case ExampleId::LinkedPeriodic:
    case ExampleId::OverlapNonPeriodic: return {Rational(3, 4), Rational(3, 4)};
    case ExampleId::LinkedPeriodic2: return {Rational(1), Rational(2, 3)};
    case ExampleId::Trivariate: return {Rational(1), Rational(1), Rational(1)};
    case ExampleId::OverlapPeriodic: return {Rational(2, 3), Rational(2, 3)};
    case ExampleId::CatMap: throw TypeMismatch("the cat map marginal is irrational");
    default: return {Rational(1), Rational(1)};
  }
}

// Breakpoints of θ and of D in the first simplex coordinate.
inline std::vector<double> theta_breakpoints(ExampleId id) {
  switch (id) {
    case ExampleId::LinkedNonPeriodic: return {1.0 / 3};
    case ExampleId::LinkedPeriodic: return {1.0 / 3, 2.0 / 3};
    case ExampleId::LinkedPeriodic2: return {0.25};
    case ExampleId::OverlapNonPeriodic: return {1.0 / 3, 0.5, 2.0 / 3};
    case ExampleId::OverlapPeriodic: return {0.25, 0.5, 0.75};
    case ExampleId::CatMap: return {cat_turning_point()};
    default: return {};
  }
}

inline std::vector<double> pickands_breakpoints(ExampleId id) {
  switch (id) {
    case ExampleId::CommonPoint: return {0.5};
    case ExampleId::LinkedNonPeriodic: return {1.0 / 3};
    case ExampleId::LinkedPeriodic:
    case ExampleId::OverlapNonPeriodic: return {1.0 / 3, 2.0 / 3};
    case ExampleId::LinkedPeriodic2: return {1.0 / 3};
    case ExampleId::OverlapPeriodic: return {0.25, 0.75};
    case ExampleId::CatMap: return {2.0 / 3};
    default: return {};
  }
}

}  // namespace mevd::catalog
