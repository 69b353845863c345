#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace groupcast {

// Exact rational, always kept in canonical form (gcd 1, positive denominator).
using Rational = mpq_class;

// Parses "p" or "p/q" with decimal integers.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!digits(num) || !digits(den) || den.front() == '-' || den.front() == '+') {
    throw SchemaError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw SchemaError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace groupcast
