#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <string>
#include <string_view>

namespace roth {

using Rational = boost::multiprecision::mpq_rational;

// Backend hooks shared by the floating and exact-rational code paths.
template <class T> struct NumTraits;

template <> struct NumTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char *name = "float";
  static double from_int(long v) { return static_cast<double>(v); }
  static double to_double(double v) { return v; }
  static double abs(double v) { return std::fabs(v); }
  static bool is_zero(double v) { return v == 0.0; }
  static bool is_finite(double v) { return std::isfinite(v); }
  static double half(double v) { return v * 0.5; }
  static double parse(std::string_view text);
  static std::string format(double v);
};

template <> struct NumTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char *name = "exact";
  static Rational from_int(long v) { return Rational(v); }
  static double to_double(const Rational &v) { return v.convert_to<double>(); }
  static Rational abs(const Rational &v) { return boost::multiprecision::abs(v); }
  static bool is_zero(const Rational &v) { return v.is_zero(); }
  static bool is_finite(const Rational &) { return true; }
  static Rational half(const Rational &v) { return v / 2; }
  static Rational parse(std::string_view text);
  static std::string format(const Rational &v);
};

// Accepted numerals: integers, decimals with optional exponent, and `p/q`.
bool is_numeral(std::string_view text);

} // namespace roth
