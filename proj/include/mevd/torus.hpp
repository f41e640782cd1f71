#pragma once

// Axis-aligned rectangles on the 2-torus, with the axes given by a pair of
// orthonormal directions (for the cat map: the unstable and stable
// eigendirections). Used as membership predicates for lattice orbits.

#include <array>
#include <cmath>
#include <cstdint>

#include "mevd/dynamics.hpp"
#include "mevd/error.hpp"

namespace mevd::geometry {

struct Frame {
  std::array<long double, 2> axis_u;
  std::array<long double, 2> axis_s;
};

inline Frame eigen_frame(const dynamics::MapSpec& map) {
  auto e = dynamics::eigen(map);
  return {e.unstable, e.stable};
}

// Coordinates along the frame axes: point = center_u * axis_u + center_s * axis_s.
struct TorusRect {
  long double center_u = 0;
  long double center_s = 0;
  long double half_u = 0;
  long double half_s = 0;

  long double measure() const { return 4 * half_u * half_s; }
};

// Rectangle with its center snapped to the 2^-64 lattice so that the wrap of
// a point relative to the center is an exact integer subtraction.
class CompiledRect {
 public:
  CompiledRect(const TorusRect& r, const Frame& f) : rect_(r), frame_(f) {
    if (r.half_u <= 0 || r.half_s <= 0) throw Error("TorusRect half-widths must be positive");
    if (r.measure() > 1) throw Error("TorusRect measure exceeds 1");
    long double x = r.center_u * f.axis_u[0] + r.center_s * f.axis_s[0];
    long double y = r.center_u * f.axis_u[1] + r.center_s * f.axis_s[1];
    cx_ = to_lattice(x);
    cy_ = to_lattice(y);
  }

  const TorusRect& rect() const noexcept { return rect_; }

  bool contains(dynamics::LatticePoint2D p) const noexcept {
    auto [du, ds] = offsets(p);
    return std::fabs(du) < rect_.half_u && std::fabs(ds) < rect_.half_s;
  }

  // Offsets of p from the center along (axis_u, axis_s), using the nearest
  // torus translate.
  std::array<long double, 2> offsets(dynamics::LatticePoint2D p) const noexcept {
    long double dx = std::ldexp(static_cast<long double>(static_cast<std::int64_t>(p.u - cx_)), -64);
    long double dy = std::ldexp(static_cast<long double>(static_cast<std::int64_t>(p.v - cy_)), -64);
    return {dx * frame_.axis_u[0] + dy * frame_.axis_u[1], dx * frame_.axis_s[0] + dy * frame_.axis_s[1]};
  }

 private:
  static std::uint64_t to_lattice(long double x) {
    x -= std::floor(x);
    long double scaled = std::ldexp(x, 64);
    if (scaled >= std::ldexp(1.0L, 64)) return 0;
    return static_cast<std::uint64_t>(scaled);
  }

  TorusRect rect_;
  Frame frame_;
  std::uint64_t cx_ = 0;
  std::uint64_t cy_ = 0;
};

}  // namespace mevd::geometry
