#pragma once

// Exact set algebra on the circle [0,1) for finite unions of half-open arcs.
//
// A set is stored as sorted, pairwise disjoint, non-adjacent linear pieces
// [lo, hi) with 0 <= lo < hi <= 1. The circle view (`arcs()`) glues a piece
// ending at 1 to a piece starting at 0 into one wrapping arc.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mevd/error.hpp"
#include "mevd/rational.hpp"

namespace mevd::geometry {

enum class Boundary { Circle, Interval };

inline std::string to_string(Boundary b) { return b == Boundary::Circle ? "circle" : "interval"; }

// Arc [start, start + length) read modulo 1; start in [0,1), length in (0,1].
struct Arc {
  Rational start;
  Rational length;
  friend bool operator==(const Arc&, const Arc&) = default;
};

struct Piece {
  Rational lo;
  Rational hi;
  friend bool operator==(const Piece&, const Piece&) = default;
};

class IntervalSet {
 public:
  IntervalSet() = default;

  static IntervalSet full() { return from_sorted_unchecked({Piece{0, 1}}); }

  // Pieces may overlap, touch, or arrive unsorted; empty pieces are dropped.
  // Every piece must lie inside [0,1].
  static IntervalSet from_pieces(std::vector<Piece> pieces) {
    for (const auto& p : pieces) {
      if (p.lo < 0 || p.hi > 1) throw Error("IntervalSet piece outside [0,1]");
    }
    std::erase_if(pieces, [](const Piece& p) { return p.hi <= p.lo; });
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    std::vector<Piece> merged;
    merged.reserve(pieces.size());
    for (auto& p : pieces) {
      if (!merged.empty() && p.lo <= merged.back().hi) {
        if (p.hi > merged.back().hi) merged.back().hi = std::move(p.hi);
      } else {
        merged.push_back(std::move(p));
      }
    }
    return from_sorted_unchecked(std::move(merged));
  }

  // Arc [start, start+length) mod 1; length >= 1 gives the full circle.
  static IntervalSet from_arc(const Rational& start, const Rational& length) {
    if (length <= 0) return {};
    if (length >= 1) return full();
    Rational a = mod1(start);
    Rational b = a + length;
    if (b <= 1) return from_sorted_unchecked({Piece{a, b}});
    return from_sorted_unchecked({Piece{0, b - 1}, Piece{a, 1}});
  }

  static IntervalSet from_arcs(const std::vector<Arc>& arcs) {
    std::vector<Piece> pieces;
    for (const auto& arc : arcs) {
      for (auto& p : from_arc(arc.start, arc.length).pieces_) pieces.push_back(std::move(p));
    }
    return from_pieces(std::move(pieces));
  }

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }

  bool empty() const noexcept { return pieces_.empty(); }
  bool is_full() const { return pieces_.size() == 1 && pieces_[0].lo == 0 && pieces_[0].hi == 1; }

  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    if (pieces_.empty()) return out;
    if (is_full()) return {Arc{0, 1}};
    bool glue = pieces_.size() > 1 && pieces_.front().lo == 0 && pieces_.back().hi == 1;
    std::size_t first = glue ? 1 : 0;
    std::size_t last = glue ? pieces_.size() - 1 : pieces_.size();
    for (std::size_t i = first; i < last; ++i) out.push_back(Arc{pieces_[i].lo, pieces_[i].hi - pieces_[i].lo});
    if (glue) {
      const auto& tail = pieces_.back();
      const auto& head = pieces_.front();
      out.push_back(Arc{tail.lo, (tail.hi - tail.lo) + (head.hi - head.lo)});
    }
    std::sort(out.begin(), out.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
    return out;
  }

  std::size_t components() const { return pieces_.empty() ? 0 : arcs().size(); }

  Rational measure() const {
    Rational total = 0;
    for (const auto& p : pieces_) total += p.hi - p.lo;
    return total;
  }

  // Measure of S ∩ [0, y) for y in [0,1].
  Rational measure_below(const Rational& y) const {
    Rational total = 0;
    for (const auto& p : pieces_) {
      if (p.lo >= y) break;
      total += (p.hi < y ? p.hi : y) - p.lo;
    }
    return total;
  }

  bool contains(const Rational& x) const {
    Rational y = mod1(x);
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), y,
                               [](const Rational& v, const Piece& p) { return v < p.lo; });
    if (it == pieces_.begin()) return false;
    --it;
    return y < it->hi;
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  static IntervalSet from_sorted_unchecked(std::vector<Piece> pieces) {
    IntervalSet s;
    s.pieces_ = std::move(pieces);
    return s;
  }

  std::vector<Piece> pieces_;

  friend IntervalSet unite(const IntervalSet&, const IntervalSet&);
  friend IntervalSet intersect(const IntervalSet&, const IntervalSet&);
  friend IntervalSet complement(const IntervalSet&);
};

inline IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Piece> all;
  all.reserve(a.pieces_.size() + b.pieces_.size());
  std::merge(a.pieces_.begin(), a.pieces_.end(), b.pieces_.begin(), b.pieces_.end(), std::back_inserter(all),
             [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
  std::vector<Piece> merged;
  for (auto& p : all) {
    if (!merged.empty() && p.lo <= merged.back().hi) {
      if (p.hi > merged.back().hi) merged.back().hi = std::move(p.hi);
    } else {
      merged.push_back(std::move(p));
    }
  }
  return IntervalSet::from_sorted_unchecked(std::move(merged));
}

inline IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Piece> out;
  std::size_t i = 0, j = 0;
  while (i < a.pieces_.size() && j < b.pieces_.size()) {
    const auto& p = a.pieces_[i];
    const auto& q = b.pieces_[j];
    const Rational& lo = p.lo < q.lo ? q.lo : p.lo;
    const Rational& hi = p.hi < q.hi ? p.hi : q.hi;
    if (lo < hi) out.push_back(Piece{lo, hi});
    if (p.hi < q.hi) ++i;
    else ++j;
  }
  return IntervalSet::from_sorted_unchecked(std::move(out));
}

inline IntervalSet complement(const IntervalSet& a) {
  std::vector<Piece> out;
  Rational cursor = 0;
  for (const auto& p : a.pieces_) {
    if (cursor < p.lo) out.push_back(Piece{cursor, p.lo});
    cursor = p.hi;
  }
  if (cursor < 1) out.push_back(Piece{cursor, 1});
  return IntervalSet::from_sorted_unchecked(std::move(out));
}

inline IntervalSet difference(const IntervalSet& a, const IntervalSet& b) { return intersect(a, complement(b)); }

inline IntervalSet operator|(const IntervalSet& a, const IntervalSet& b) { return unite(a, b); }
inline IntervalSet operator&(const IntervalSet& a, const IntervalSet& b) { return intersect(a, b); }
inline IntervalSet operator-(const IntervalSet& a, const IntervalSet& b) { return difference(a, b); }

// Open ball (center - radius, center + radius) stored half-open. On the circle
// it wraps through 0; with Boundary::Interval it is clipped to [0,1).
inline IntervalSet ball(const Rational& center, const Rational& radius, Boundary boundary = Boundary::Circle) {
  if (radius <= 0 || radius >= Rational(1, 2)) {
    throw DegenerateBall("ball radius must lie in (0, 1/2), got " + to_fraction_string(radius));
  }
  if (boundary == Boundary::Circle) return IntervalSet::from_arc(center - radius, 2 * radius);
  Rational lo = center - radius;
  Rational hi = center + radius;
  if (lo < 0) lo = 0;
  if (hi > 1) hi = 1;
  return IntervalSet::from_pieces({Piece{lo, hi}});
}

// Union of radius-r balls around `centers`; saturates to the whole space
// instead of rejecting large radii.
inline IntervalSet union_of_balls(const std::vector<Rational>& centers, const Rational& radius,
                                  Boundary boundary = Boundary::Circle) {
  if (radius <= 0 || centers.empty()) return {};
  std::vector<Piece> pieces;
  for (const auto& c : centers) {
    if (boundary == Boundary::Circle) {
      if (radius >= Rational(1, 2)) return IntervalSet::full();
      auto arc = IntervalSet::from_arc(c - radius, 2 * radius);
      for (const auto& p : arc.pieces()) pieces.push_back(p);
    } else {
      Rational lo = c - radius, hi = c + radius;
      if (lo < 0) lo = 0;
      if (hi > 1) hi = 1;
      pieces.push_back(Piece{lo, hi});
    }
  }
  return IntervalSet::from_pieces(std::move(pieces));
}

// Distance on the circle (or on [0,1] for Boundary::Interval).
inline Rational distance(const Rational& x, const Rational& y, Boundary boundary = Boundary::Circle) {
  Rational d = x - y;
  if (d < 0) d = -d;
  if (boundary == Boundary::Interval) return d;
  d = mod1(d);
  Rational other = 1 - d;
  return other < d ? other : d;
}

inline double distance(double x, double y, Boundary boundary = Boundary::Circle) {
  double d = std::abs(x - y);
  if (boundary == Boundary::Interval) return d;
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

}  // namespace mevd::geometry
