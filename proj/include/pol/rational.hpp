#pragma once

#include <string>

#include <gmpxx.h>

namespace pol {

using Rational = mpq_class;
using BigInt = mpz_class;

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Exact value of a binary double; 0.1 maps to the nearest dyadic, not 1/10.
inline Rational exact_rational(double v) { return Rational(v); }

/// Parses "p/q", an integer, or a decimal literal such as "0.25" exactly.
Rational parse_rational(const std::string& text);

}  // namespace pol
