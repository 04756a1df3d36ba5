#include "schrodiv/numbertheory.hpp"

#include "schrodiv/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace schrodiv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e(r/q) tables shared across calls with the same modulus; gauss_sum_1d is
// called in tight per-(a,b) loops over a fixed q.
const std::vector<std::complex<double>>& roots_of_unity(std::int64_t q) {
  thread_local std::unordered_map<std::int64_t, std::vector<std::complex<double>>> cache;
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> table(static_cast<std::size_t>(q));
  for (std::int64_t r = 0; r < q; ++r)
    table[static_cast<std::size_t>(r)] = std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(q));
  return cache.emplace(q, std::move(table)).first->second;
}

std::int64_t mod_reduce(std::int64_t v, std::int64_t q) {
  std::int64_t r = v % q;
  return r < 0 ? r + q : r;
}

BigInt ipow(BigInt base, std::int64_t e) {
  BigInt out = 1;
  for (; e > 0; --e) out *= base;
  return out;
}

// Largest |Delta| passing |Delta|^td * Q^tn <= 2^td * (q q')^td.
std::int64_t max_delta(std::int64_t q, std::int64_t qp, std::int64_t Q, const Rat& t) {
  const std::int64_t tn = to_int64(num(t)), td = to_int64(den(t));
  const BigInt rhs = ipow(BigInt(2) * q * qp, td);
  const BigInt qpow = ipow(BigInt(Q), tn);
  std::int64_t lo = 0, hi = 2 * q * qp;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (ipow(BigInt(mid), td) * qpow <= rhs)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

double profile_weight(PerturbProfile profile, std::int64_t m, std::int64_t L) {
  switch (profile) {
    case PerturbProfile::Box:
      return (m >= -L && m < L) ? 1.0 : 0.0;  // half-open window
    case PerturbProfile::Hat: {
      if (m < -L || m > L) return 0.0;
      return 1.0 - static_cast<double>(m < 0 ? -m : m) / static_cast<double>(L);
    }
    case PerturbProfile::Smooth: {
      double t = static_cast<double>(m) / static_cast<double>(L);
      if (t <= -1.0 || t >= 1.0) return 0.0;
      return std::exp(-1.0 / (1.0 - t * t));
    }
  }
  return 0.0;
}

int profile_smoothness(PerturbProfile profile) {
  switch (profile) {
    case PerturbProfile::Box: return 0;
    case PerturbProfile::Hat: return 1;
    case PerturbProfile::Smooth: return 2;
  }
  return 0;
}

}  // namespace

SieveTables linear_sieve(std::int64_t limit) {
  if (limit < 0) throw std::invalid_argument("linear_sieve: negative limit");
  SieveTables t;
  t.phi.assign(static_cast<std::size_t>(limit) + 1, 0);
  t.mu.assign(static_cast<std::size_t>(limit) + 1, 0);
  t.least_prime.assign(static_cast<std::size_t>(limit) + 1, 0);
  if (limit >= 1) {
    t.phi[1] = 1;
    t.mu[1] = 1;
  }
  std::vector<std::int64_t> primes;
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (t.least_prime[i] == 0) {
      t.least_prime[i] = static_cast<int>(i);
      t.phi[i] = i - 1;
      t.mu[i] = -1;
      primes.push_back(i);
    }
    for (std::int64_t p : primes) {
      if (p > t.least_prime[i] || i * p > limit) break;
      t.least_prime[i * p] = static_cast<int>(p);
      if (i % p == 0) {
        t.phi[i * p] = t.phi[i] * p;
        t.mu[i * p] = 0;
        break;
      }
      t.phi[i * p] = t.phi[i] * (p - 1);
      t.mu[i * p] = -t.mu[i];
    }
  }
  return t;
}

std::int64_t totient(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("totient: need n >= 1");
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

int mobius(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("mobius: need n >= 1");
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::complex<double> gauss_sum_1d(std::int64_t a, std::int64_t b, std::int64_t q) {
  if (q < 1) throw std::invalid_argument("gauss_sum_1d: need q >= 1");
  const std::int64_t ar = mod_reduce(a, q), br = mod_reduce(b, q);
  const auto& roots = roots_of_unity(q);
  std::complex<double> sum = 0.0;
  for (std::int64_t x = 0; x < q; ++x) {
    auto phase = static_cast<std::int64_t>(
        (static_cast<__int128>(ar) * x * x + static_cast<__int128>(br) * x) % q);
    sum += roots[static_cast<std::size_t>(phase)];
  }
  return sum;
}

std::complex<double> gauss_sum_multi(std::span<const std::int64_t> a,
                                     std::span<const std::int64_t> b, std::int64_t q) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("gauss_sum_multi: mismatched or empty coefficient vectors");
  std::complex<double> prod = 1.0;
  for (std::size_t j = 0; j < a.size(); ++j) prod *= gauss_sum_1d(a[j], b[j], q);
  return prod;
}

std::complex<double> gauss_sum_multi_direct(std::span<const std::int64_t> a,
                                            std::span<const std::int64_t> b, std::int64_t q) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("gauss_sum_multi_direct: mismatched or empty coefficient vectors");
  const int d = static_cast<int>(a.size());
  cost_guard("gauss_sum_multi_direct", std::pow(static_cast<double>(q), d), 1e7);
  std::vector<std::int64_t> ar(a.size()), br(b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    ar[j] = mod_reduce(a[j], q);
    br[j] = mod_reduce(b[j], q);
  }
  const auto& roots = roots_of_unity(q);
  std::vector<std::int64_t> x(a.size(), 0);
  std::complex<double> sum = 0.0;
  for (;;) {
    __int128 phase = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      phase += static_cast<__int128>(ar[j]) * x[j] * x[j] + static_cast<__int128>(br[j]) * x[j];
    sum += roots[static_cast<std::size_t>(phase % q)];
    int j = d - 1;
    while (j >= 0 && ++x[static_cast<std::size_t>(j)] == q) x[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) break;
  }
  return sum;
}

BigInt count_index_set(std::int64_t Q, int N) {
  if (Q < 1 || N < 1) throw std::invalid_argument("count_index_set: need Q >= 1, N >= 1");
  SieveTables tables = linear_sieve(Q);
  BigInt total = 0;
  for (std::int64_t q = 1; q < Q; q += 2) {
    if (2 * q < Q) continue;  // q >= Q/2
    total += BigInt(tables.phi[static_cast<std::size_t>(q)]) * ipow(BigInt(q), N - 1);
  }
  return total;
}

BigInt count_index_set_bruteforce(std::int64_t Q, int N) {
  if (Q < 1 || N < 1) throw std::invalid_argument("count_index_set_bruteforce: need Q >= 1, N >= 1");
  cost_guard("count_index_set_bruteforce", static_cast<double>(Q) * static_cast<double>(Q), 1e8);
  BigInt total = 0;
  for (std::int64_t q = 1; q < Q; q += 2) {
    if (2 * q < Q) continue;
    std::int64_t coprime = 0;
    for (std::int64_t p = 0; p < q; ++p)
      if (std::gcd(p, q) == 1) ++coprime;
    total += BigInt(coprime) * ipow(BigInt(q), N - 1);
  }
  return total;
}

PairCount count_intersecting_pairs(std::int64_t Q, int N, const Rat& t1, const Rat& t2) {
  if (Q < 1 || N < 1 || N > 3)
    throw std::invalid_argument("count_intersecting_pairs: need Q >= 1, 1 <= N <= 3");
  if (t1 <= 0 || (N >= 2 && t2 <= 0))
    throw std::invalid_argument("count_intersecting_pairs: exponents must be positive");

  struct Member {
    std::array<std::int64_t, 3> p;
  };
  std::vector<std::int64_t> qs;
  std::vector<std::vector<Member>> groups;
  double total_members = 0;
  for (std::int64_t q = 1; q < Q; q += 2) {
    if (2 * q < Q) continue;
    std::vector<Member> group;
    std::vector<std::int64_t> coprime;
    for (std::int64_t p = 0; p < q; ++p)
      if (std::gcd(p, q) == 1) coprime.push_back(p);
    std::vector<std::int64_t> idx(static_cast<std::size_t>(N), 0);
    // axis 0 runs over coprime residues, axes 1..N-1 over all residues
    for (;;) {
      Member m{{0, 0, 0}};
      m.p[0] = coprime[static_cast<std::size_t>(idx[0])];
      for (int j = 1; j < N; ++j) m.p[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j)];
      group.push_back(m);
      int j = N - 1;
      for (;;) {
        std::int64_t limit = (j == 0) ? static_cast<std::int64_t>(coprime.size()) : q;
        if (++idx[static_cast<std::size_t>(j)] < limit) break;
        idx[static_cast<std::size_t>(j)] = 0;
        if (--j < 0) break;
      }
      if (j < 0) break;
    }
    total_members += static_cast<double>(group.size());
    qs.push_back(q);
    groups.push_back(std::move(group));
  }
  cost_guard("count_intersecting_pairs", total_members * total_members, 2e9);

  BigInt total = 0;
  for (std::size_t gi = 0; gi < qs.size(); ++gi) {
    for (std::size_t gj = 0; gj < qs.size(); ++gj) {
      const std::int64_t q = qs[gi], qp = qs[gj];
      const std::int64_t d0 = max_delta(q, qp, Q, t1);
      const std::int64_t d1 = (N > 1) ? max_delta(q, qp, Q, t2) : 0;
      std::int64_t hits = 0;
      for (const Member& a : groups[gi]) {
        for (const Member& b : groups[gj]) {
          std::int64_t delta = a.p[0] * qp - b.p[0] * q;
          if (delta < 0) delta = -delta;
          if (delta > d0) continue;
          bool ok = true;
          for (int k = 1; k < N; ++k) {
            std::int64_t dk = a.p[static_cast<std::size_t>(k)] * qp - b.p[static_cast<std::size_t>(k)] * q;
            if (dk < 0) dk = -dk;
            if (dk > d1) { ok = false; break; }
          }
          if (ok) ++hits;
        }
      }
      total += hits;
    }
  }
  BigInt diagonal = 0;
  for (const auto& g : groups) diagonal += static_cast<std::int64_t>(g.size());
  return {total, diagonal};
}

PerturbationReport perturbation_check(PerturbProfile profile, std::int64_t q, std::int64_t a,
                                      std::int64_t L, int d) {
  if (q < 1 || L < 1 || d < 1)
    throw std::invalid_argument("perturbation_check: need q >= 1, L >= 1, d >= 1");
  cost_guard("perturbation_check", std::pow(2.0 * static_cast<double>(L) + 1.0, d), 1e8);
  const std::int64_t ar = mod_reduce(a, q);
  const auto& roots = roots_of_unity(q);
  std::complex<double> w1 = 0.0;
  double mass1 = 0.0;
  for (std::int64_t m = -L; m <= L; ++m) {
    double zeta = profile_weight(profile, m, L);
    if (zeta == 0.0) continue;
    auto phase = static_cast<std::int64_t>((static_cast<__int128>(ar) * m * m) % q);
    if (phase < 0) phase += q;
    w1 += zeta * roots[static_cast<std::size_t>(phase)];
    mass1 += zeta;
  }
  std::complex<double> g1 = gauss_sum_1d(a, 0, q);

  PerturbationReport report;
  report.lhs = 1.0;
  report.main = 1.0;
  for (int j = 0; j < d; ++j) {
    report.lhs *= w1;                 // product profile: the d-dim sum factors
    report.main *= (mass1 / static_cast<double>(q)) * g1;
  }
  report.error = std::abs(report.lhs - report.main);
  const int smooth = profile_smoothness(profile);
  report.bound = std::pow(static_cast<double>(q), d / 2.0) *
                 std::pow(static_cast<double>(L) / static_cast<double>(q), d - 2 * smooth);
  report.terms = 2 * L + 1;
  return report;
}

}  // namespace schrodiv
