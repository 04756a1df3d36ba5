#include "schrodiv/rational.hpp"

#include <limits>

namespace schrodiv {

double to_double(const Rat& r) { return r.convert_to<double>(); }

Rat parse_rat(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  auto parse_int = [&](std::string_view part) {
    part = trim(part);
    if (part.empty()) throw std::invalid_argument("malformed rational literal: " + std::string(text));
    std::size_t i = (part[0] == '+' || part[0] == '-') ? 1 : 0;
    if (i == part.size()) throw std::invalid_argument("malformed rational literal: " + std::string(text));
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9')
        throw std::invalid_argument("malformed rational literal: " + std::string(text));
    return BigInt(std::string(part));
  };
  if (slash == std::string_view::npos) return Rat(parse_int(s));
  BigInt n = parse_int(s.substr(0, slash));
  BigInt d = parse_int(s.substr(slash + 1));
  if (d == 0) throw std::invalid_argument("rational literal with zero denominator: " + std::string(text));
  return Rat(n, d);
}

std::string format_rat(const Rat& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

BigInt floor_rat(const Rat& r) {
  BigInt n = num(r), d = den(r);
  BigInt q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

BigInt ceil_rat(const Rat& r) { return -floor_rat(-r); }

Rat pow_rat(const Rat& r, long e) {
  if (e == 0) return Rat(1);
  if (e < 0) {
    if (r == 0) throw std::invalid_argument("negative power of zero");
    return pow_rat(Rat(den(r), num(r)), -e);
  }
  Rat acc(1), base = r;
  unsigned long k = static_cast<unsigned long>(e);
  while (k != 0) {
    if (k & 1UL) acc *= base;
    base *= base;
    k >>= 1UL;
  }
  return acc;
}

long long to_int64(const BigInt& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error("big integer does not fit in 64 bits");
  return v.convert_to<long long>();
}

}  // namespace schrodiv
