#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cinfrbf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& q) { return q.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

inline int sign_of(const Int& n) { return n.sign(); }
inline int sign_of(const Rat& q) { return q.sign(); }

namespace detail {

/// Plain base-10 integer with optional sign. Explicit digit loop: the big-int
/// string constructor would treat a leading zero as an octal prefix.
inline Int parse_decimal_int(std::string_view s, std::string_view whole) {
  auto fail = [&] { throw std::invalid_argument("not a rational: '" + std::string(whole) + "'"); };
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) fail();
  Int v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') fail();
    v = v * 10 + (ch - '0');
  }
  return neg ? Int(-v) : v;
}

}  // namespace detail

/// Parses "2", "-7", "5/2" or a plain decimal like "1e-3" / "0.125" into an
/// exact rational. Decimals are exact in base 10 (0.1 -> 1/10), so a tolerance
/// passed on a command line certifies exactly what was typed.
inline Rat parse_rational(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("not a rational: '" + std::string(text) + "'"); };
  if (text.empty()) fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const Int n = detail::parse_decimal_int(text.substr(0, slash), text);
    const Int d = detail::parse_decimal_int(text.substr(slash + 1), text);
    if (d == 0) fail();
    return Rat(n, d);
  }

  // [sign] digits [. digits] [e exp]
  std::string_view s = text;
  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  std::int64_t exp10 = 0;
  std::size_t i = 0;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') digits += s[i++];
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      digits += s[i++];
      --exp10;
    }
  }
  if (digits.empty()) fail();
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      eneg = s[i] == '-';
      ++i;
    }
    if (i == s.size()) fail();
    std::int64_t e = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      e = e * 10 + (s[i] - '0');
      if (e > 1'000'000) fail();
      ++i;
    }
    exp10 += eneg ? -e : e;
  }
  if (i != s.size()) fail();

  Int n = detail::parse_decimal_int(digits, text);
  if (neg) n = -n;
  Rat q(n);
  Int p10 = boost::multiprecision::pow(Int(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 < 0)
    q /= Rat(p10);
  else
    q *= Rat(p10);
  return q;
}

/// "p/q" (or just "p" when the denominator is 1).
inline std::string rational_to_string(const Rat& q) {
  const Int num = boost::multiprecision::numerator(q);
  const Int den = boost::multiprecision::denominator(q);
  std::string out = num.str();
  if (den != 1) out += "/" + den.str();
  return out;
}

}  // namespace cinfrbf
