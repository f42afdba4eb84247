#include "roth/numeric.hpp"

#include "roth/error.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>

namespace roth {
namespace {

struct Numeral {
  bool negative = false;
  std::string digits;   // mantissa digits with the decimal point removed
  long exponent = 0;    // power of ten applied to `digits`
};

std::optional<Numeral> scan_decimal(std::string_view s) {
  Numeral n;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) n.negative = s[i++] == '-';
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      n.digits.push_back(c);
      if (seen_point) --n.exponent;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return std::nullopt;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    long e = 0;
    auto [p, ec] = std::from_chars(s.data() + i, s.data() + s.size(), e);
    if (ec != std::errc() || p == s.data() + i) return std::nullopt;
    i = static_cast<std::size_t>(p - s.data());
    n.exponent += neg ? -e : e;
  }
  if (i != s.size()) return std::nullopt;
  return n;
}

std::optional<std::pair<std::string_view, std::string_view>>
split_fraction(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  return std::pair{s.substr(0, slash), s.substr(slash + 1)};
}

Rational exact_decimal(std::string_view s) {
  auto n = scan_decimal(s);
  if (!n) throw Error("malformed number '" + std::string(s) + "'");
  if (n->exponent > 4096 || n->exponent < -4096)
    throw Error("exponent out of range in '" + std::string(s) + "'");
  // A leading zero would make GMP read the digits as octal.
  const auto first = n->digits.find_first_not_of('0');
  boost::multiprecision::mpz_int mant(first == std::string::npos ? std::string("0") : n->digits.substr(first));
  boost::multiprecision::mpz_int scale = 1;
  for (long k = 0; k < std::labs(n->exponent); ++k) scale *= 10;
  Rational r = n->exponent >= 0 ? Rational(mant * scale) : Rational(mant, scale);
  return n->negative ? Rational(-r) : r;
}

} // namespace

bool is_numeral(std::string_view text) {
  if (auto f = split_fraction(text))
    return scan_decimal(f->first).has_value() && scan_decimal(f->second).has_value();
  return scan_decimal(text).has_value();
}

double NumTraits<double>::parse(std::string_view text) {
  if (auto f = split_fraction(text)) {
    double den = parse(f->second);
    if (den == 0.0) throw Error("zero denominator in '" + std::string(text) + "'");
    return parse(f->first) / den;
  }
  if (!scan_decimal(text)) throw Error("malformed number '" + std::string(text) + "'");
  std::string buf(text);
  double v = std::strtod(buf.c_str(), nullptr);
  if (!std::isfinite(v)) throw Error("number out of range '" + buf + "'");
  return v;
}

std::string NumTraits<double>::format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Rational NumTraits<Rational>::parse(std::string_view text) {
  if (auto f = split_fraction(text)) {
    Rational den = exact_decimal(f->second);
    if (den.is_zero()) throw Error("zero denominator in '" + std::string(text) + "'");
    return exact_decimal(f->first) / den;
  }
  return exact_decimal(text);
}

std::string NumTraits<Rational>::format(const Rational &v) {
  return v.str();
}

} // namespace roth
