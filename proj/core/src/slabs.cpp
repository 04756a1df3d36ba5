#include "schrodiv/slabs.hpp"

#include "schrodiv/errors.hpp"
#include "schrodiv/exponents.hpp"
#include "schrodiv/numbertheory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace schrodiv {

namespace {

double rpow(double R, const Rat& e) { return std::pow(R, to_double(e)); }

using CellList = std::vector<std::pair<std::int64_t, std::int64_t>>;  // half-open index runs

void push_cells(CellList& list, double lo, double hi, double delta) {
  auto a = static_cast<std::int64_t>(std::floor(lo / delta));
  auto b = static_cast<std::int64_t>(std::floor(hi / delta)) + 1;
  list.emplace_back(a, b);
}

CellList merged(CellList list) {
  std::sort(list.begin(), list.end());
  CellList out;
  for (const auto& [a, b] : list) {
    if (!out.empty() && a <= out.back().second)
      out.back().second = std::max(out.back().second, b);
    else
      out.emplace_back(a, b);
  }
  return out;
}

std::int64_t cell_count(const CellList& list) {
  std::int64_t total = 0;
  for (const auto& [a, b] : list) total += b - a;
  return total;
}

CellList intersect(const CellList& x, const CellList& y) {
  CellList out;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    std::int64_t a = std::max(x[i].first, y[j].first);
    std::int64_t b = std::min(x[i].second, y[j].second);
    if (a < b) out.emplace_back(a, b);
    if (x[i].second < y[j].second)
      ++i;
    else
      ++j;
  }
  return out;
}

// Evenly spaced ball centers k*spacing for k in [0, count), radius r,
// collected into merged delta-cells.
CellList lattice_cells(double spacing, std::int64_t count, double r, double delta) {
  CellList list;
  list.reserve(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k)
    push_cells(list, k * spacing - r, k * spacing + r, delta);
  return merged(list);
}

std::int64_t centers_below_one(double spacing) {
  // number of k >= 0 with k*spacing < 1
  auto c = static_cast<std::int64_t>(std::ceil(1.0 / spacing));
  while (c * spacing < 1.0) ++c;
  while (c > 0 && (c - 1) * spacing >= 1.0) --c;
  return c;
}

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace

double SlabConfig::D1() const { return rpow(R, Rat(1) + u.u1 - u.u2); }
double SlabConfig::D2() const { return rpow(R, u.u3); }
double SlabConfig::Q() const { return rpow(R, 2 * u.u2 - u.u1 - 1); }

std::vector<std::int64_t> slab_q_list(double Q) {
  if (Q < 2.0) return {1};
  std::vector<std::int64_t> qs;
  for (std::int64_t q = 1; static_cast<double>(q) < Q; q += 2)
    if (2.0 * static_cast<double>(q) >= Q) qs.push_back(q);
  return qs;
}

std::vector<Slab> enumerate_slabs(const SlabConfig& cfg) {
  const int n = cfg.dims.n, m = cfg.dims.m;
  const double R = cfg.R, D1 = cfg.D1(), D2 = cfg.D2();
  std::vector<Slab> out;

  if (cfg.family == SlabFamily::Degenerate) {
    if (m != n - 1)
      throw std::invalid_argument("enumerate_slabs: degenerate family needs m = n-1");
    const std::int64_t lastc = centers_below_one(1.0 / D2);
    cost_guard("enumerate_slabs", std::pow(static_cast<double>(lastc), m), 1e7);
    std::vector<std::int64_t> idx(static_cast<std::size_t>(m), 0);
    for (;;) {
      Slab s;
      s.x1 = -0.5;
      s.p_last = idx;
      for (std::int64_t k : idx) s.x_last.push_back(static_cast<double>(k) / D2);
      out.push_back(std::move(s));
      int j = m - 1;
      while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == lastc) idx[static_cast<std::size_t>(j--)] = 0;
      if (j < 0) break;
    }
    return out;
  }

  if (cfg.Q() < 3.0)
    throw std::invalid_argument("enumerate_slabs: Q below 3, no full odd denominator window");
  cost_guard("enumerate_slabs", slab_count_estimate(cfg) * 8 + 64, 1e7);

  const std::int64_t midc_dim = n - m - 1;
  for (std::int64_t q : slab_q_list(cfg.Q())) {
    const double x1_spacing = R / (D1 * D1 * static_cast<double>(q));
    const double mid_spacing = 1.0 / (D1 * static_cast<double>(q));
    const std::int64_t midc = centers_below_one(mid_spacing);
    const std::int64_t lastc = centers_below_one(1.0 / D2);
    for (std::int64_t p1 = 0; p1 * x1_spacing < 1.0; ++p1) {
      if (std::gcd(p1, q) != 1) continue;
      std::vector<std::int64_t> idx(static_cast<std::size_t>(midc_dim + m), 0);
      for (;;) {
        Slab s;
        s.q = q;
        s.p1 = p1;
        s.x1 = p1 * x1_spacing;
        for (std::int64_t j = 0; j < midc_dim; ++j) {
          s.p_mid.push_back(idx[static_cast<std::size_t>(j)]);
          s.x_mid.push_back(idx[static_cast<std::size_t>(j)] * mid_spacing);
        }
        for (std::int64_t j = 0; j < m; ++j) {
          s.p_last.push_back(idx[static_cast<std::size_t>(midc_dim + j)]);
          s.x_last.push_back(idx[static_cast<std::size_t>(midc_dim + j)] / D2);
        }
        out.push_back(std::move(s));
        std::int64_t j = midc_dim + m - 1;
        while (j >= 0) {
          std::int64_t limit = j < midc_dim ? midc : lastc;
          if (++idx[static_cast<std::size_t>(j)] < limit) break;
          idx[static_cast<std::size_t>(j--)] = 0;
        }
        if (j < 0) break;
      }
    }
  }
  return out;
}

double slab_count_estimate(const SlabConfig& cfg) {
  const int n = cfg.dims.n, m = cfg.dims.m;
  const double R = cfg.R, D1 = cfg.D1(), D2 = cfg.D2();
  if (cfg.family == SlabFamily::Degenerate)
    return std::pow(D2, m);
  double total = 0;
  for (std::int64_t q : slab_q_list(cfg.Q())) {
    double p1c = static_cast<double>(totient(q)) / static_cast<double>(q) * (D1 * D1 * q / R);
    total += p1c * std::pow(D1 * static_cast<double>(q), n - m - 1) * std::pow(D2, m);
  }
  return total;
}

Rat slab_count_exponent(const SlabConfig& cfg) {
  const int n = cfg.dims.n, m = cfg.dims.m;
  if (cfg.family == SlabFamily::Degenerate) return Rat(m) * cfg.u.u3;
  return Rat(n - m + 1) * cfg.u.u2 + Rat(m) * cfg.u.u3 - 1;
}

std::optional<Slab> slab_containing(const SlabConfig& cfg, std::span<const double> x) {
  const int n = cfg.dims.n, m = cfg.dims.m;
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("slab_containing: point dimension mismatch");
  const double R = cfg.R, D1 = cfg.D1(), D2 = cfg.D2();
  const double r1 = 1.0 / std::sqrt(R), rmid = 1.0 / R, rlast = 1.0 / std::sqrt(R);

  auto last_axes = [&](Slab& s) {
    for (int j = n - m; j < n; ++j) {
      auto k = static_cast<std::int64_t>(std::llround(x[static_cast<std::size_t>(j)] * D2));
      double c = static_cast<double>(k) / D2;
      if (k < 0 || std::abs(x[static_cast<std::size_t>(j)] - c) > rlast) return false;
      s.p_last.push_back(k);
      s.x_last.push_back(c);
    }
    return true;
  };

  if (cfg.family == SlabFamily::Degenerate) {
    if (m != n - 1)
      throw std::invalid_argument("slab_containing: degenerate family needs m = n-1");
    if (x[0] < -1.0 || x[0] > 0.0) return std::nullopt;
    Slab s;
    s.x1 = -0.5;
    if (!last_axes(s)) return std::nullopt;
    return s;
  }

  for (std::int64_t q : slab_q_list(cfg.Q())) {
    const double x1_spacing = R / (D1 * D1 * static_cast<double>(q));
    const double mid_spacing = 1.0 / (D1 * static_cast<double>(q));
    auto p1_near = static_cast<std::int64_t>(std::llround(x[0] / x1_spacing));
    for (std::int64_t p1 = p1_near - 1; p1 <= p1_near + 1; ++p1) {
      if (p1 < 0 || std::gcd(p1, q) != 1) continue;
      double c1 = p1 * x1_spacing;
      if (std::abs(x[0] - c1) > r1) continue;
      Slab s;
      s.q = q;
      s.p1 = p1;
      s.x1 = c1;
      bool ok = true;
      for (int j = 1; j <= n - m - 1; ++j) {
        auto k = static_cast<std::int64_t>(std::llround(x[static_cast<std::size_t>(j)] / mid_spacing));
        double c = k * mid_spacing;
        if (k < 0 || std::abs(x[static_cast<std::size_t>(j)] - c) > rmid) { ok = false; break; }
        s.p_mid.push_back(k);
        s.x_mid.push_back(c);
      }
      if (ok && last_axes(s)) return s;
    }
  }
  return std::nullopt;
}

SlabPoint select_slab_point(const SlabConfig& cfg) {
  const int n = cfg.dims.n, m = cfg.dims.m;
  const double R = cfg.R, D1 = cfg.D1(), D2 = cfg.D2();
  SlabPoint pt;
  pt.x.assign(static_cast<std::size_t>(n), 0.0);

  if (cfg.family == SlabFamily::Degenerate) {
    if (m != n - 1)
      throw std::invalid_argument("select_slab_point: degenerate family needs m = n-1");
    pt.q = 1;
    pt.p1 = 0;
    pt.t = 1.0 / (4.0 * R);
    pt.x[0] = -0.5;
    const auto plast = static_cast<std::int64_t>(std::floor(D2 / 2));
    for (int j = 1; j < n; ++j) pt.x[static_cast<std::size_t>(j)] = static_cast<double>(plast) / D2;
    return pt;
  }

  const double Q = cfg.Q();
  std::int64_t q = 1;
  if (Q >= 2.0) {
    q = static_cast<std::int64_t>(std::ceil(Q / 2.0));
    if (q % 2 == 0) ++q;
  }
  pt.q = q;
  pt.q_in_range = (2.0 * static_cast<double>(q) >= Q) && (static_cast<double>(q) < Q);

  const double base = D1 * D1 * static_cast<double>(q) / R;  // center = 2a/base
  const auto a0 = std::max<std::int64_t>(1, std::llround(base / 4.0));
  std::int64_t a_found = -1;
  for (std::int64_t k = 0; k <= 3 * q + 3; ++k) {
    for (std::int64_t a : {a0 + k, a0 - k}) {
      if (a < 1) continue;
      double center = 2.0 * static_cast<double>(a) / base;
      if (center < 0.1 || center > 1.0) continue;
      if (std::gcd(a, q) != 1) continue;
      a_found = a;
      break;
    }
    if (a_found > 0) break;
  }
  if (a_found < 0)
    throw std::logic_error("select_slab_point: no admissible numerator near the window center");

  pt.p1 = 2 * a_found;
  pt.t = -static_cast<double>(a_found) / (D1 * D1 * static_cast<double>(q));
  pt.x[0] = 2.0 * static_cast<double>(a_found) / base;  // = -2 t R
  const auto pmid = static_cast<std::int64_t>(std::floor(D1 * static_cast<double>(q) / 2));
  for (int j = 1; j <= n - m - 1; ++j)
    pt.x[static_cast<std::size_t>(j)] = static_cast<double>(pmid) / (D1 * static_cast<double>(q));
  const auto plast = static_cast<std::int64_t>(std::floor(D2 / 2));
  for (int j = n - m; j < n; ++j)
    pt.x[static_cast<std::size_t>(j)] = static_cast<double>(plast) / D2;
  return pt;
}

BoxCountResult box_count(const SlabConfig& cfg, DeltaScale scale) {
  const int n = cfg.dims.n, m = cfg.dims.m;
  const double R = cfg.R, D1 = cfg.D1(), D2 = cfg.D2();
  const double delta = scale == DeltaScale::InvR ? 1.0 / R : 1.0 / std::sqrt(R);
  const double r1 = 1.0 / std::sqrt(R), rmid = 1.0 / R, rlast = 1.0 / std::sqrt(R);

  BoxCountResult result;
  result.delta = delta;

  const std::int64_t lastc = centers_below_one(1.0 / D2);
  cost_guard("box_count", static_cast<double>(lastc) / delta, 1e9);
  const std::int64_t last_cells = cell_count(lattice_cells(1.0 / D2, lastc, rlast, delta));

  if (cfg.family == SlabFamily::Degenerate) {
    if (m != n - 1)
      throw std::invalid_argument("box_count: degenerate family needs m = n-1");
    auto lo = static_cast<std::int64_t>(std::floor(-1.0 / delta));
    std::int64_t x1_cells = 0 - lo + 1;
    BigInt boxes = x1_cells;
    for (int j = 0; j < m; ++j) boxes *= last_cells;
    result.boxes = boxes;
    result.dim_estimate = std::log(static_cast<double>(result.boxes)) / std::log(1.0 / delta);
    return result;
  }

  const auto qs = slab_q_list(cfg.Q());
  if (qs.empty())
    throw std::invalid_argument("box_count: no admissible denominators at this scale");
  const int K = static_cast<int>(qs.size());
  if (K > 8) throw CostGuardError("box_count: denominator window too wide", K, 8);

  // Per-q cell runs on the x1 axis and the (shared) x' axis profile.
  std::vector<CellList> x1_lists(static_cast<std::size_t>(K));
  std::vector<CellList> mid_lists(static_cast<std::size_t>(K));
  const int NN = n - m - 1;
  for (int i = 0; i < K; ++i) {
    const std::int64_t q = qs[static_cast<std::size_t>(i)];
    const double x1_spacing = R / (D1 * D1 * static_cast<double>(q));
    cost_guard("box_count", 1.0 / x1_spacing + (NN ? D1 * static_cast<double>(q) : 0.0), 2e7);
    CellList list;
    for (std::int64_t p1 = 0; p1 * x1_spacing < 1.0; ++p1) {
      if (std::gcd(p1, q) != 1) continue;
      push_cells(list, p1 * x1_spacing - r1, p1 * x1_spacing + r1, delta);
    }
    x1_lists[static_cast<std::size_t>(i)] = merged(std::move(list));
    if (NN > 0) {
      const double mid_spacing = 1.0 / (D1 * static_cast<double>(q));
      mid_lists[static_cast<std::size_t>(i)] =
          lattice_cells(mid_spacing, centers_below_one(mid_spacing), rmid, delta);
    }
  }

  // Inclusion-exclusion over q subsets for the x' block: cell lists of
  // subset intersections, then U[mask] = sum over subsets of +-count^NN.
  const int full = (1 << K) - 1;
  std::vector<std::int64_t> inter_count(static_cast<std::size_t>(full) + 1, 0);
  if (NN > 0) {
    std::vector<CellList> inter_list(static_cast<std::size_t>(full) + 1);
    for (int mask = 1; mask <= full; ++mask) {
      int low = mask & -mask;
      int rest = mask ^ low;
      int low_idx = std::countr_zero(static_cast<unsigned>(low));
      inter_list[static_cast<std::size_t>(mask)] =
          rest == 0 ? mid_lists[static_cast<std::size_t>(low_idx)]
                    : intersect(mid_lists[static_cast<std::size_t>(low_idx)],
                                inter_list[static_cast<std::size_t>(rest)]);
      inter_count[static_cast<std::size_t>(mask)] =
          cell_count(inter_list[static_cast<std::size_t>(mask)]);
    }
  }
  std::vector<BigInt> mid_union(static_cast<std::size_t>(full) + 1, 0);
  for (int mask = 1; mask <= full; ++mask) {
    if (NN == 0) {
      mid_union[static_cast<std::size_t>(mask)] = 1;
      continue;
    }
    BigInt acc = 0;
    for (int sub = mask; sub; sub = (sub - 1) & mask) {
      BigInt term = 1;
      for (int p = 0; p < NN; ++p) term *= inter_count[static_cast<std::size_t>(sub)];
      acc += (std::popcount(static_cast<unsigned>(sub)) % 2 == 1) ? term : -term;
    }
    mid_union[static_cast<std::size_t>(mask)] = acc;
  }

  // Sweep the x1 axis; each run of cells with a fixed active-q mask
  // contributes run_length * |x' union| * |x'' union|^m.
  struct Event {
    std::int64_t cell;
    int bit;
    bool open;
  };
  std::vector<Event> events;
  for (int i = 0; i < K; ++i)
    for (const auto& [a, b] : x1_lists[static_cast<std::size_t>(i)]) {
      events.push_back({a, i, true});
      events.push_back({b, i, false});
    }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.cell != b.cell) return a.cell < b.cell;
    return a.open > b.open;
  });
  BigInt boxes = 0;
  int mask = 0;
  std::int64_t prev = 0;
  bool have_prev = false;
  for (std::size_t e = 0; e < events.size();) {
    std::int64_t cell = events[e].cell;
    if (have_prev && mask != 0 && cell > prev)
      boxes += BigInt(cell - prev) * mid_union[static_cast<std::size_t>(mask)];
    while (e < events.size() && events[e].cell == cell) {
      if (events[e].open)
        mask |= 1 << events[e].bit;
      else
        mask &= ~(1 << events[e].bit);
      ++e;
    }
    prev = cell;
    have_prev = true;
  }
  for (int j = 0; j < m; ++j) boxes *= last_cells;
  result.boxes = boxes;
  result.dim_estimate = std::log(static_cast<double>(result.boxes)) / std::log(1.0 / delta);
  return result;
}

OmegaReport omega_measure(const OmegaConfig& cfg, std::int64_t mc_samples, std::uint64_t seed) {
  const int n = cfg.dims.n, m = cfg.dims.m;
  const int N = n - m;
  if (N > 2) throw std::invalid_argument("omega_measure: exact union implemented for N <= 2");
  const double R = cfg.R;
  const double Q = rpow(R, 2 * cfg.u.u2 - cfg.u.u1 - 1);
  DilationVector a = dilation_from_params(cfg.dims, cfg.u);

  OmegaReport report;
  report.r1 = rpow(R, 2 * (Rat(1) + cfg.u.u1 - cfg.u.u2) - 1 - a.a1);
  report.r2 = rpow(R, (Rat(1) + cfg.u.u1 - cfg.u.u2) - a.a2);
  const Rat qexp = 2 * cfg.u.u2 - cfg.u.u1 - 1;
  if (qexp > 0) {
    report.t1 = to_double((a.a1 - 1 - 2 * (cfg.u.u1 - cfg.u.u2)) / qexp);
    report.t2 = to_double((a.a2 - 1 - (cfg.u.u1 - cfg.u.u2)) / qexp);
  }

  struct Ball {
    double x;
    double y;  // unused for N = 1
  };
  std::vector<std::int64_t> qs = slab_q_list(Q);
  std::vector<Ball> balls;
  for (std::int64_t q : qs) {
    for (std::int64_t p1 = 0; p1 < q; ++p1) {
      if (std::gcd(p1, q) != 1) continue;
      if (N == 1) {
        balls.push_back({static_cast<double>(p1) / static_cast<double>(q), 0.0});
      } else {
        for (std::int64_t p2 = 0; p2 < q; ++p2)
          balls.push_back({static_cast<double>(p1) / static_cast<double>(q),
                           static_cast<double>(p2) / static_cast<double>(q)});
      }
    }
  }
  cost_guard("omega_measure", static_cast<double>(balls.size()), 1e6);
  report.balls = static_cast<std::int64_t>(balls.size());

  if (N == 1) {
    std::vector<std::pair<double, double>> iv;
    for (const Ball& b : balls)
      iv.emplace_back(std::max(0.0, b.x - report.r1), std::min(1.0, b.x + report.r1));
    std::sort(iv.begin(), iv.end());
    double measure = 0, cur_lo = 0, cur_hi = -1;
    for (const auto& [lo, hi] : iv) {
      if (lo > cur_hi) {
        if (cur_hi > cur_lo) measure += cur_hi - cur_lo;
        cur_lo = lo;
        cur_hi = hi;
      } else {
        cur_hi = std::max(cur_hi, hi);
      }
    }
    if (cur_hi > cur_lo) measure += cur_hi - cur_lo;
    report.measure = measure;
  } else {
    // Sweep-line union area over the clipped rectangles.
    std::vector<double> xs;
    for (const Ball& b : balls) {
      xs.push_back(std::max(0.0, b.x - report.r1));
      xs.push_back(std::min(1.0, b.x + report.r1));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    double area = 0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      double x0 = xs[i], x1 = xs[i + 1];
      if (x1 <= x0) continue;
      double xm = 0.5 * (x0 + x1);
      std::vector<std::pair<double, double>> ys;
      for (const Ball& b : balls) {
        if (std::abs(xm - b.x) > report.r1) continue;
        double lo = std::max(0.0, b.y - report.r2), hi = std::min(1.0, b.y + report.r2);
        if (std::max(0.0, b.x - report.r1) > xm || std::min(1.0, b.x + report.r1) < xm) continue;
        if (lo < hi) ys.emplace_back(lo, hi);
      }
      std::sort(ys.begin(), ys.end());
      double len = 0, lo = 0, hi = -1;
      for (const auto& [a2, b2] : ys) {
        if (a2 > hi) {
          if (hi > lo) len += hi - lo;
          lo = a2;
          hi = b2;
        } else {
          hi = std::max(hi, b2);
        }
      }
      if (hi > lo) len += hi - lo;
      area += len * (x1 - x0);
    }
    report.measure = area;
  }

  if (mc_samples > 0) {
    SplitMix64 rng{seed};
    auto member = [&](double x, double y) {
      for (std::int64_t q : qs) {
        auto span1 = static_cast<std::int64_t>(std::ceil(report.r1 * static_cast<double>(q))) + 1;
        auto c1 = static_cast<std::int64_t>(std::llround(x * static_cast<double>(q)));
        for (std::int64_t p1 = std::max<std::int64_t>(0, c1 - span1);
             p1 <= std::min(q - 1, c1 + span1); ++p1) {
          if (std::gcd(p1, q) != 1) continue;
          if (std::abs(x - static_cast<double>(p1) / static_cast<double>(q)) > report.r1) continue;
          if (N == 1) return true;
          auto span2 = static_cast<std::int64_t>(std::ceil(report.r2 * static_cast<double>(q))) + 1;
          auto c2 = static_cast<std::int64_t>(std::llround(y * static_cast<double>(q)));
          for (std::int64_t p2 = std::max<std::int64_t>(0, c2 - span2);
               p2 <= std::min(q - 1, c2 + span2); ++p2)
            if (std::abs(y - static_cast<double>(p2) / static_cast<double>(q)) <= report.r2) return true;
        }
      }
      return false;
    };
    std::int64_t hits = 0;
    for (std::int64_t s = 0; s < mc_samples; ++s) {
      double x = rng.uniform();
      double y = N == 2 ? rng.uniform() : 0.0;
      if (member(x, y)) ++hits;
    }
    report.mc_measure = static_cast<double>(hits) / static_cast<double>(mc_samples);
    double p = report.mc_measure;
    report.mc_sigma = std::sqrt(std::max(p * (1 - p), 1e-12) / static_cast<double>(mc_samples));
  }
  return report;
}

double ubiquity_ratio(const OmegaConfig& cfg) { return omega_measure(cfg, 0).measure; }

}  // namespace schrodiv
