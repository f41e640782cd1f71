#pragma once

// Exact simulation of x -> b x mod 1 on a point given by its base-b digits.
//
// The point keeps a window of the first L digits packed into one uint64
// (b^L <= 2^64) and draws further digits only when they are needed: by a step
// (shift in one digit) or by a comparison whose outcome the window cannot
// decide. Digits come from a seeded std::mt19937_64, so the point is exactly
// Lebesgue distributed and a step never rounds.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "mevd/circle_geometry.hpp"
#include "mevd/error.hpp"
#include "mevd/rational.hpp"

namespace mevd::dynamics {

// splitmix64 finaliser; used to derive engine seeds from (seed, stream).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(mix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

// Largest L with b^L <= 2^64, and b^L itself (0 encodes exactly 2^64).
struct WindowShape {
  unsigned digits;
  std::uint64_t modulus;
};

constexpr WindowShape window_shape(unsigned base) {
  unsigned digits = 0;
  unsigned __int128 power = 1;
  const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 64;
  while (power * base <= limit) {
    power *= base;
    ++digits;
  }
  return {digits, power == limit ? 0 : static_cast<std::uint64_t>(power)};
}

class DigitSource {
 public:
  DigitSource(unsigned base, std::uint64_t seed, std::uint64_t stream)
      : base_(base), seed_(seed), stream_(stream), engine_(stream_seed(seed, stream)) {
    if (base < 2 || base > 256) throw Error("digit base must lie in [2, 256]");
    auto shape = window_shape(base);
    block_digits_ = shape.digits;
    block_modulus_ = shape.modulus;
    if (block_modulus_ != 0) reject_above_ = (~std::uint64_t{0} / block_modulus_) * block_modulus_;
  }

  unsigned base() const noexcept { return base_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  unsigned next() {
    if (left_ == 0) refill();
    --left_;
    if (base_ == 2) {
      unsigned d = static_cast<unsigned>(buffer_ >> 63);
      buffer_ <<= 1;
      return d;
    }
    if (block_modulus_ == 0) {
      // power-of-two base filling all 64 bits
      unsigned shift = 64 - bits_per_digit();
      unsigned d = static_cast<unsigned>(buffer_ >> shift);
      buffer_ <<= bits_per_digit();
      return d;
    }
    unsigned d = static_cast<unsigned>(buffer_ % base_);
    buffer_ /= base_;
    return d;
  }

 private:
  unsigned bits_per_digit() const noexcept { return 64 / block_digits_; }

  void refill() {
    if (block_modulus_ == 0) {
      buffer_ = engine_();
    } else {
      std::uint64_t v;
      do v = engine_();
      while (v >= reject_above_);
      buffer_ = v % block_modulus_;
    }
    left_ = block_digits_;
  }

  unsigned base_;
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  unsigned block_digits_ = 0;
  std::uint64_t block_modulus_ = 0;
  std::uint64_t reject_above_ = 0;
  std::uint64_t buffer_ = 0;
  unsigned left_ = 0;
};

// A circle point e seen through a base-b window of length L:
// e * b^L = floor + rest, rest in [0,1).
struct DigitEndpoint {
  std::uint64_t floor = 0;
  bool exact = true;  // rest == 0
  Rational rest;
  Rational value;
};

inline DigitEndpoint make_endpoint(const Rational& e, unsigned base) {
  if (e < 0 || e >= 1) throw Error("digit endpoint must lie in [0,1)");
  auto shape = window_shape(base);
  Rational scaled = e * Rational(pow_int(base, shape.digits));
  BigInt f = mevd::floor(scaled);
  DigitEndpoint out;
  out.floor = f.convert_to<std::uint64_t>();
  out.rest = scaled - Rational(f);
  out.exact = out.rest == 0;
  out.value = e;
  return out;
}

class LazyDigitPoint {
 public:
  // Lebesgue-random point driven by stream `stream` of `seed`.
  LazyDigitPoint(unsigned base, std::uint64_t seed, std::uint64_t stream)
      : LazyDigitPoint(base, {}, DigitSource(base, seed, stream)) {}

  // Point 0.d1 d2 ... with the given leading digits. Later digits are drawn
  // from `tail`, or are all zero when no source is given.
  LazyDigitPoint(unsigned base, const std::vector<unsigned>& leading, std::optional<DigitSource> tail = std::nullopt)
      : base_(base), source_(std::move(tail)) {
    if (base < 2 || base > 256) throw Error("digit base must lie in [2, 256]");
    if (source_ && source_->base() != base) throw TypeMismatch("digit source base differs from point base");
    auto shape = window_shape(base);
    length_ = shape.digits;
    top_weight_ = pow_int(base, length_ - 1).convert_to<std::uint64_t>();
    inv_scale_ = 1.0L / (static_cast<long double>(top_weight_) * base);
    if (base != 2) ring_.assign(length_, 0);
    for (unsigned d : leading) {
      if (d >= base) throw Error("digit out of range for base");
      lookahead_.push_back(static_cast<std::uint8_t>(d));
    }
    for (unsigned k = 0; k < length_; ++k) push(fresh_digit());
  }

  unsigned base() const noexcept { return base_; }
  unsigned window_length() const noexcept { return length_; }
  std::uint64_t window() const noexcept { return window_; }

  // x -> b x mod 1, exact.
  void step() { push(fresh_digit()); }

  void step(std::size_t times) {
    for (std::size_t k = 0; k < times; ++k) step();
  }

  // First `count` digits of the current point; may draw lookahead digits.
  std::vector<unsigned> digits(std::size_t count) {
    std::vector<unsigned> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count && k < length_; ++k) out.push_back(window_digit(k));
    for (std::size_t k = length_; k < count; ++k) out.push_back(lookahead_digit(k - length_));
    return out;
  }

  // Rounded value; for output and statistics only.
  long double approx() const { return static_cast<long double>(window_) * inv_scale_; }

  // Exact test x >= e.
  bool at_least(const DigitEndpoint& e) {
    if (window_ != e.floor) return window_ > e.floor;
    if (e.exact) return true;
    return tail_at_least(e.rest);
  }

  // Exact value of the window digits alone (the point rounded down to L digits).
  Rational window_value() const {
    return Rational(BigInt(window_)) / Rational(pow_int(base_, length_));
  }

 private:
  unsigned fresh_digit() {
    if (!lookahead_.empty()) {
      unsigned d = lookahead_.front();
      lookahead_.pop_front();
      return d;
    }
    return source_ ? source_->next() : 0u;
  }

  unsigned lookahead_digit(std::size_t k) {
    while (lookahead_.size() <= k) lookahead_.push_back(static_cast<std::uint8_t>(source_ ? source_->next() : 0u));
    return lookahead_[k];
  }

  unsigned window_digit(std::size_t k) const {
    if (base_ == 2) return static_cast<unsigned>((window_ >> (63 - k)) & 1u);
    return ring_[(head_ + k) % length_];
  }

  void push(unsigned d) {
    if (base_ == 2) {
      window_ = (window_ << 1) | d;
      return;
    }
    unsigned top = ring_[head_];
    ring_[head_] = static_cast<std::uint8_t>(d);
    head_ = head_ + 1 == length_ ? 0 : head_ + 1;
    window_ = (window_ - top * top_weight_) * base_ + d;
  }

  // Compares the digits after the window with those of rest in [0,1).
  bool tail_at_least(Rational rest) {
    for (std::size_t k = 0;; ++k) {
      rest *= base_;
      BigInt ed = mevd::floor(rest);
      rest -= Rational(ed);
      unsigned e = ed.convert_to<unsigned>();
      unsigned t = lookahead_digit(k);
      if (t != e) return t > e;
      if (rest == 0) return true;
    }
  }

  unsigned base_;
  unsigned length_ = 0;
  std::uint64_t top_weight_ = 0;
  long double inv_scale_ = 0;
  std::uint64_t window_ = 0;
  std::vector<std::uint8_t> ring_;
  unsigned head_ = 0;
  std::deque<std::uint8_t> lookahead_;
  std::optional<DigitSource> source_;
};

// Membership predicate for an IntervalSet evaluated exactly on digit points.
class CompiledSet {
 public:
  CompiledSet() = default;

  CompiledSet(const geometry::IntervalSet& s, unsigned base) : base_(base) {
    for (const auto& p : s.pieces()) {
      ends_.push_back(make_endpoint(p.lo, base));
      if (p.hi < 1) ends_.push_back(make_endpoint(p.hi, base));
    }
    for (const auto& e : ends_) floors_.push_back(e.floor);
  }

  unsigned base() const noexcept { return base_; }
  bool empty() const noexcept { return ends_.empty(); }

  // Endpoints alternate lo, hi, lo, ... so x is inside iff it lies at or
  // above an odd number of them.
  bool contains(LazyDigitPoint& x) const {
    const std::uint64_t w = x.window();
    const std::size_t m = floors_.size();
    std::size_t k = 0;
    for (; k < m; ++k) {
      if (w != floors_[k]) {
        if (w < floors_[k]) break;
      } else if (!x.at_least(ends_[k])) {
        break;
      }
    }
    return (k & 1u) != 0;
  }

 private:
  unsigned base_ = 2;
  std::vector<std::uint64_t> floors_;
  std::vector<DigitEndpoint> ends_;
};

}  // namespace mevd::dynamics
