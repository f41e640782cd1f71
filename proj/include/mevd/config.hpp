#pragma once

// Experiment files: INI text, one experiment per file.
//
//   [experiment]
//   preset = LinkedPeriodic          ; or map + [observable.N] sections
//   map = doubling                   ; doubling | tripling | expanding:b | cat | toral:a,b,c,d
//   boundary = circle
//   tau = 1,1; 1,2                   ; list of frequency vectors
//   alpha_grid = 0.05                ; simplex grid instead of tau (d = 2)
//   n_schedule = 1024, 16384
//   q_max = 6
//   trials = 200000
//   orbit_length = 10000000
//   seed = 7
//   mode = exact                     ; exact | mc | both
//
//   [observable.1]
//   g = log                          ; log | pareto:alpha | bounded:D:alpha
//   points = 1/12, 1/6
//   segment = 0, 0, 1/64             ; center_u, center_s, half_length (torus)

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "mevd/catalog.hpp"
#include "mevd/error.hpp"
#include "mevd/extremes.hpp"
#include "mevd/presets.hpp"

namespace mevd::config {

enum class Mode { Exact, MonteCarlo, Both };

inline std::string to_string(Mode m) {
  switch (m) {
    case Mode::Exact: return "exact";
    case Mode::MonteCarlo: return "mc";
    case Mode::Both: return "both";
  }
  return "?";
}

inline Mode parse_mode(const std::string& s) {
  if (s == "exact" || s == "exact-only") return Mode::Exact;
  if (s == "mc") return Mode::MonteCarlo;
  if (s == "both") return Mode::Both;
  throw ConfigError("unknown mode '" + s + "' (exact|mc|both)");
}

inline const std::vector<std::uint64_t>& default_n_schedule() {
  static const std::vector<std::uint64_t> s = {1ull << 10, 1ull << 14, 1ull << 18, 1ull << 22};
  return s;
}
inline constexpr unsigned kDefaultQMax = 6;

struct ExperimentConfig {
  std::optional<catalog::ExampleId> preset;
  engine::System system;
  unsigned q = 0;  // stabilising q of the preset, or q_max for custom systems
  std::vector<engine::Tau> taus;
  std::optional<Rational> alpha_step;
  std::vector<std::uint64_t> n_schedule = default_n_schedule();
  unsigned q_max = kDefaultQMax;
  std::uint64_t trials = 0;
  std::uint64_t orbit_length = 0;
  std::optional<std::uint64_t> seed;
  Mode mode = Mode::Exact;

  std::string name() const { return preset ? catalog::to_string(*preset) : "custom"; }
  bool wants_mc() const { return mode != Mode::Exact; }
  bool wants_exact() const { return mode != Mode::MonteCarlo; }

  // τ rows: explicit list, else the α grid on the simplex (total mass 1).
  std::vector<engine::Tau> tau_rows() const {
    if (!taus.empty() || !alpha_step) return taus;
    std::vector<engine::Tau> out;
    const Rational& h = *alpha_step;
    for (Rational a = 0; a <= 1; a += h) out.push_back({a, Rational(1) - a});
    return out;
  }

  void check() const {
    if (system.obs.empty()) throw ConfigError("no observables: give a preset or [observable.N] sections");
    for (const auto& t : taus) {
      if (t.size() != system.dim()) throw ConfigError("tau has " + std::to_string(t.size()) + " entries, system has " +
                                                      std::to_string(system.dim()) + " observables");
    }
    if (alpha_step && system.dim() != 2) throw ConfigError("alpha_grid needs a bivariate system");
    if (wants_mc() && !seed) throw ConfigError("Monte Carlo runs need an explicit seed");
    if (n_schedule.empty()) throw ConfigError("empty n_schedule");
    for (std::size_t i = 1; i < n_schedule.size(); ++i) {
      if (n_schedule[i] <= n_schedule[i - 1]) throw ConfigError("n_schedule must increase");
    }
    if (n_schedule.front() == 0) throw ConfigError("n must be positive");
  }
};

// ---------------------------------------------------------------------------
// Field parsers

inline std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) {
    part = trim(part);
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

inline Rational rational_field(const std::string& key, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

inline std::uint64_t integer_field(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
  }
  if (used != text.size()) {
    // allow 2^k
    auto caret = text.find('^');
    if (caret != std::string::npos) {
      auto base = integer_field(key, text.substr(0, caret));
      auto exp = integer_field(key, text.substr(caret + 1));
      std::uint64_t r = 1;
      for (std::uint64_t i = 0; i < exp; ++i) {
        if (r > UINT64_MAX / std::max<std::uint64_t>(base, 1)) throw ConfigError(key + ": value overflows");
        r *= base;
      }
      return r;
    }
    throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

inline engine::Tau parse_tau(const std::string& text) {
  engine::Tau t;
  for (const auto& p : split(text, ',')) t.push_back(rational_field("tau", p));
  if (t.empty()) throw ConfigError("tau: empty vector");
  try {
    observables::check_tau(t);
  } catch (const Error& e) {
    throw ConfigError(std::string("tau: ") + e.what());
  }
  return t;
}

inline std::vector<engine::Tau> parse_tau_list(const std::string& text) {
  std::vector<engine::Tau> out;
  for (const auto& v : split(text, ';')) out.push_back(parse_tau(v));
  return out;
}

inline std::vector<std::uint64_t> parse_n_schedule(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& p : split(text, ',')) out.push_back(integer_field("n_schedule", p));
  return out;
}

inline dynamics::MapSpec parse_map(const std::string& text) {
  try {
    if (text == "doubling") return dynamics::MapSpec::doubling();
    if (text == "tripling") return dynamics::MapSpec::tripling();
    if (text == "cat") return dynamics::MapSpec::cat();
    if (text.rfind("expanding:", 0) == 0) {
      auto b = integer_field("map", text.substr(10));
      if (b < 2 || b > 1u << 16) throw ConfigError("map: base must lie in [2, 65536]");
      return dynamics::MapSpec::expanding(static_cast<unsigned>(b));
    }
    if (text.rfind("toral:", 0) == 0) {
      auto parts = split(text.substr(6), ',');
      if (parts.size() != 4) throw ConfigError("map: toral needs four integers a,b,c,d");
      std::array<std::int64_t, 4> m{};
      for (std::size_t i = 0; i < 4; ++i) m[i] = std::stoll(parts[i]);
      return dynamics::MapSpec::toral(m);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("map: ") + e.what());
  }
  throw ConfigError("unknown map '" + text + "'");
}

inline observables::GType parse_g(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.empty()) throw ConfigError("g: empty");
  auto num = [&](std::size_t i) {
    if (i >= parts.size()) throw ConfigError("g: missing parameter in '" + text + "'");
    return to_double(rational_field("g", parts[i]));
  };
  observables::GType g;
  if (parts[0] == "log" && parts.size() == 1) g = observables::LogType{};
  else if (parts[0] == "pareto" && parts.size() == 2) g = observables::ParetoType{num(1)};
  else if (parts[0] == "bounded" && parts.size() == 3) g = observables::BoundedType{num(1), num(2)};
  else throw ConfigError("g: expected log | pareto:alpha | bounded:D:alpha, got '" + text + "'");
  try {
    observables::check(g);
  } catch (const Error& e) {
    throw ConfigError(std::string("g: ") + e.what());
  }
  return g;
}

inline geometry::Boundary parse_boundary(const std::string& s) {
  if (s == "circle") return geometry::Boundary::Circle;
  if (s == "interval") return geometry::Boundary::Interval;
  throw ConfigError("boundary must be circle or interval, got '" + s + "'");
}

inline catalog::ExampleId parse_example_id(const std::string& s) {
  auto id = catalog::parse_example(s);
  if (!id) throw ConfigError("unknown example '" + s + "'");
  return *id;
}

// ---------------------------------------------------------------------------

inline ExperimentConfig from_preset(catalog::ExampleId id, geometry::Boundary boundary = geometry::Boundary::Circle) {
  ExperimentConfig c;
  auto p = presets::preset(id, boundary);
  c.preset = id;
  c.system = p.system;
  c.q = p.q;
  return c;
}

inline ExperimentConfig parse(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  auto exp = tree.get_child_optional("experiment");
  if (!exp) throw ConfigError("config: missing [experiment] section");
  auto get = [&](const char* key) -> std::optional<std::string> {
    auto v = exp->get_optional<std::string>(key);
    if (!v) return std::nullopt;
    return trim(*v);
  };
  static const std::vector<std::string> known = {"preset", "map",      "boundary",     "seed", "trials",
                                                 "n_schedule", "q_max", "tau",         "mode", "alpha_grid",
                                                 "orbit_length", "q"};
  for (const auto& [key, _] : *exp) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("config: unknown key '" + key + "'");
  }

  auto boundary = geometry::Boundary::Circle;
  if (auto b = get("boundary")) boundary = parse_boundary(*b);

  ExperimentConfig c;
  bool custom_obs = false;
  for (const auto& [section, _] : tree) {
    if (section.rfind("observable.", 0) == 0) custom_obs = true;
  }
  if (auto p = get("preset")) {
    if (custom_obs) throw ConfigError("config: give either a preset or [observable.N] sections, not both");
    c = from_preset(parse_example_id(*p), boundary);
    if (auto m = get("map")) {
      if (parse_map(*m) != c.system.map) throw ConfigError("config: map contradicts the preset");
    }
  } else {
    auto m = get("map");
    if (!m) throw ConfigError("config: need a preset or a map");
    c.system.map = parse_map(*m);
    c.system.boundary = boundary;
    std::map<unsigned, observables::ObservableSpec> by_index;
    for (const auto& [section, body] : tree) {
      if (section.rfind("observable.", 0) != 0) continue;
      auto idx = static_cast<unsigned>(integer_field(section, section.substr(11)));
      auto g = body.get_optional<std::string>("g");
      if (!g) throw ConfigError(section + ": missing g");
      auto points = body.get_optional<std::string>("points");
      auto segment = body.get_optional<std::string>("segment");
      if (points.has_value() == segment.has_value()) throw ConfigError(section + ": give exactly one of points, segment");
      try {
        if (points) {
          std::vector<Rational> z;
          for (const auto& s : split(*points, ',')) z.push_back(rational_field(section + ".points", s));
          by_index.emplace(idx, observables::at_points(parse_g(trim(*g)), z));
        } else {
          auto parts = split(*segment, ',');
          if (parts.size() != 3) throw ConfigError(section + ".segment: need center_u, center_s, half_length");
          observables::UnstableSegment seg{to_double(rational_field(section, parts[0])),
                                           to_double(rational_field(section, parts[1])),
                                           to_double(rational_field(section, parts[2]))};
          by_index.emplace(idx, observables::on_segment(parse_g(trim(*g)), seg));
        }
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        throw ConfigError(section + ": " + e.what());
      }
    }
    for (auto& [_, o] : by_index) c.system.obs.push_back(std::move(o));
    if (!c.system.circle() && !c.system.torus()) throw ConfigError("config: observables do not match the map");
  }

  if (auto v = get("seed")) c.seed = integer_field("seed", *v);
  if (auto v = get("trials")) c.trials = integer_field("trials", *v);
  if (auto v = get("orbit_length")) c.orbit_length = integer_field("orbit_length", *v);
  if (auto v = get("n_schedule")) c.n_schedule = parse_n_schedule(*v);
  if (auto v = get("q_max")) c.q_max = static_cast<unsigned>(integer_field("q_max", *v));
  if (auto v = get("q")) c.q = static_cast<unsigned>(integer_field("q", *v));
  else if (!c.preset) c.q = c.q_max;
  if (auto v = get("tau")) c.taus = parse_tau_list(*v);
  if (auto v = get("alpha_grid")) {
    Rational h = rational_field("alpha_grid", *v);
    if (h <= 0 || h > 1) throw ConfigError("alpha_grid step must lie in (0, 1]");
    c.alpha_step = h;
  }
  if (auto v = get("mode")) c.mode = parse_mode(*v);
  c.check();
  return c;
}

inline ExperimentConfig parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

}  // namespace mevd::config
