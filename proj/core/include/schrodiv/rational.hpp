// Exact rational arithmetic carrier used by every exponent computation.
// Thin layer over boost::multiprecision: parsing/formatting as "p/q" strings,
// floor/ceil, integer powers, and checked narrowing.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace schrodiv {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt num(const Rat& r) { return numerator(r); }
inline BigInt den(const Rat& r) { return denominator(r); }

inline Rat rat(long long n) { return Rat(n); }
inline Rat rat(long long n, long long d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  return Rat(BigInt(n), BigInt(d));
}

double to_double(const Rat& r);

// Parses "3/4", "-3/4", "7", with optional surrounding whitespace.
Rat parse_rat(std::string_view text);

// Lowest-terms "p/q", or just "p" for integers.
std::string format_rat(const Rat& r);

// Largest integer <= r.
BigInt floor_rat(const Rat& r);
BigInt ceil_rat(const Rat& r);

// r^e for integer e (e < 0 requires r != 0).
Rat pow_rat(const Rat& r, long e);

// |r|
inline Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Exact conversion to a machine integer; throws when out of range.
long long to_int64(const BigInt& v);

}  // namespace schrodiv
