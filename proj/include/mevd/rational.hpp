#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>

#include "mevd/error.hpp"

namespace mevd {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt floor(const Rational& r) { return floor_div(num(r), den(r)); }

inline BigInt ceil(const Rational& r) { return -floor(Rational(-r)); }

// Representative of r modulo 1 in [0, 1).
inline Rational mod1(const Rational& r) { return r - Rational(floor(r)); }

inline Rational pow_rational(const Rational& base, unsigned exponent) {
  Rational result = 1;
  for (unsigned k = 0; k < exponent; ++k) result *= base;
  return result;
}

inline BigInt pow_int(std::uint64_t base, unsigned exponent) {
  return boost::multiprecision::pow(BigInt(base), exponent);
}

// Exact value of a finite double (every finite double is a dyadic rational).
inline Rational from_double(double x) {
  if (!std::isfinite(x)) throw Error("from_double: non-finite value");
  int exponent = 0;
  double mantissa = std::frexp(x, &exponent);
  // 53 significant bits
  auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r(scaled);
  if (exponent >= 0) {
    r *= Rational(boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(exponent)));
  } else {
    r /= Rational(boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(-exponent)));
  }
  return r;
}

// Accepts "p", "p/q", and plain decimals such as "0.05" or "-1.25e-3" (read exactly).
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw Error("not a rational number: '" + std::string(text) + "'"); };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational p = parse_rational(text.substr(0, slash));
    Rational q = parse_rational(text.substr(slash + 1));
    if (q == 0) fail();
    return p / q;
  }

  bool negative = false;
  std::size_t i = 0;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  BigInt digits = 0;
  int frac_digits = 0;
  bool seen_digit = false, seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (seen_point) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) fail();
  long exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') fail();
    std::string rest(text.substr(i + 1));
    if (rest.empty()) fail();
    std::size_t used = 0;
    try {
      exponent = std::stol(rest, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != rest.size()) fail();
  }
  exponent -= frac_digits;
  Rational r(digits);
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) r *= Rational(scale);
  else r /= Rational(scale);
  return negative ? Rational(-r) : r;
}

// "p/q" in lowest terms, or "p" for integers.
inline std::string to_fraction_string(const Rational& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

inline std::string format_decimal(double x, int significant = 15) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  std::ostringstream out;
  out << std::setprecision(significant) << x;
  return out.str();
}

}  // namespace mevd
