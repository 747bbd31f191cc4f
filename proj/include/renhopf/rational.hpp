#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace renhopf {

/// Exact rational number; every coefficient in the library is one of these
/// (or a polynomial built from them).
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses "p" or "p/q"; throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace renhopf
