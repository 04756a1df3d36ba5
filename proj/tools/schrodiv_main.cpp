// Command-line driver: exact exponent-curve emission (CSV/SVG), per-module
// verification suites with matching text and JSON reports, and resumable
// cartesian parameter sweeps. Exit codes: 0 all checks pass, 1 assertion
// failure, 2 configuration error, 3 cost guard refusal.
#include <CLI11.hpp>
#include <json.hpp>

#include <schrodiv/dims.hpp>
#include <schrodiv/errors.hpp>
#include <schrodiv/evolution.hpp>
#include <schrodiv/exponents.hpp>
#include <schrodiv/io.hpp>
#include <schrodiv/numbertheory.hpp>
#include <schrodiv/optimizer.hpp>
#include <schrodiv/rational.hpp>
#include <schrodiv/slabs.hpp>
#include <schrodiv/stats.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace schrodiv;
using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

const std::vector<std::string> kConfigKeys = {
    "R",      "alpha_max", "alpha_min",  "bump_c", "delta_scale", "family",  "format",
    "j_max",  "j_min",     "m",          "n",      "mc_samples",  "out",     "seed",
    "step",   "tolerance", "u1",         "u2",     "u3",          "u2_list", "u3_list"};

[[noreturn]] void bad_value(const std::string& key, const std::string& what) {
  throw std::invalid_argument("config value for '" + key + "': " + what);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long long get_int(const std::map<std::string, std::string>& kv, const std::string& key,
                  long long fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    std::size_t used = 0;
    long long v = std::stoll(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception& e) {
    bad_value(key, e.what());
  }
}

std::uint64_t get_u64(const std::map<std::string, std::string>& kv, const std::string& key,
                      std::uint64_t fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception& e) {
    bad_value(key, e.what());
  }
}

double get_double(const std::map<std::string, std::string>& kv, const std::string& key,
                  double fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  char* end = nullptr;
  double v = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str() || *end != '\0') bad_value(key, "not a number");
  return v;
}

Rat get_rat(const std::map<std::string, std::string>& kv, const std::string& key,
            const Rat& fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    return parse_rat(it->second);
  } catch (const std::exception& e) {
    bad_value(key, e.what());
  }
}

// Scale entries are plain numbers or dyadic shorthands like "2^24".
double parse_scale(const std::string& key, const std::string& token) {
  if (token.rfind("2^", 0) == 0) {
    try {
      std::size_t used = 0;
      int e = std::stoi(token.substr(2), &used);
      if (used != token.size() - 2) throw std::invalid_argument("trailing characters");
      return std::ldexp(1.0, e);
    } catch (const std::exception& e) {
      bad_value(key, e.what());
    }
  }
  char* end = nullptr;
  double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') bad_value(key, "not a number");
  return v;
}

struct RunConfig {
  int n = 15;
  std::optional<int> m;
  Rat alpha_min, alpha_max;
  Rat step = rat(1, 16);
  std::optional<Rat> u1, u2, u3;
  std::vector<double> R_list;
  double bump_c = 0.1;
  double tolerance = 0;
  std::uint64_t seed = 1;
  std::int64_t mc_samples = 200000;
  int j_min = 8, j_max = 11;
  std::vector<Rat> u2_list, u3_list;
  SlabFamily family = SlabFamily::Talbot;
  std::string delta_scale = "both";
  std::string out = ".";
  std::set<std::string> formats;
  std::map<std::string, std::string> echo;  // canonical materialized config
};

RunConfig build_config(const std::map<std::string, std::string>& kv, int default_n,
                       std::optional<int> default_m, const std::string& default_formats) {
  RunConfig rc;
  rc.n = static_cast<int>(get_int(kv, "n", default_n));
  if (rc.n < 2) throw std::invalid_argument("config: n must be >= 2");
  if (kv.count("m"))
    rc.m = static_cast<int>(get_int(kv, "m", 0));
  else
    rc.m = default_m;
  if (rc.m && (*rc.m < 0 || *rc.m > rc.n - 1))
    throw std::invalid_argument("config: m must lie in [0, n-1]");
  rc.alpha_min = get_rat(kv, "alpha_min", rat(rc.n, 2));
  rc.alpha_max = get_rat(kv, "alpha_max", rat(rc.n));
  if (rc.alpha_min > rc.alpha_max)
    throw std::invalid_argument("config: alpha_min must not exceed alpha_max");
  rc.step = get_rat(kv, "step", rat(1, 16));
  if (rc.step <= 0) throw std::invalid_argument("config: step must be positive");
  if (kv.count("u1")) rc.u1 = get_rat(kv, "u1", rat(0));
  if (kv.count("u2")) rc.u2 = get_rat(kv, "u2", rat(0));
  if (kv.count("u3")) rc.u3 = get_rat(kv, "u3", rat(0));
  for (const std::string& tok :
       split_list(kv.count("R") ? kv.at("R") : std::string("4096"))) {
    double R = parse_scale("R", tok);
    if (R < 4.0) bad_value("R", "scale must be >= 4");
    rc.R_list.push_back(R);
  }
  if (rc.R_list.empty()) bad_value("R", "empty scale list");
  rc.bump_c = get_double(kv, "bump_c", 0.1);
  if (rc.bump_c <= 0.0 || rc.bump_c > 0.5) bad_value("bump_c", "must lie in (0, 1/2]");
  rc.tolerance = get_double(kv, "tolerance", 0.0);
  rc.seed = get_u64(kv, "seed", 1);
  rc.mc_samples = get_int(kv, "mc_samples", 200000);
  if (rc.mc_samples < 0) bad_value("mc_samples", "must be >= 0");
  rc.j_min = static_cast<int>(get_int(kv, "j_min", 8));
  rc.j_max = static_cast<int>(get_int(kv, "j_max", 11));
  if (rc.j_min < 4 || rc.j_max > 30 || rc.j_min >= rc.j_max)
    throw std::invalid_argument("config: need 4 <= j_min < j_max <= 30");
  for (const std::string& tok :
       split_list(kv.count("u2_list") ? kv.at("u2_list") : std::string("5/8,11/16,3/4")))
    rc.u2_list.push_back(parse_rat(tok));
  for (const std::string& tok :
       split_list(kv.count("u3_list") ? kv.at("u3_list") : std::string("1/16")))
    rc.u3_list.push_back(parse_rat(tok));
  const std::string fam = kv.count("family") ? kv.at("family") : "talbot";
  if (fam == "talbot")
    rc.family = SlabFamily::Talbot;
  else if (fam == "degenerate")
    rc.family = SlabFamily::Degenerate;
  else
    bad_value("family", "expected talbot or degenerate");
  rc.delta_scale = kv.count("delta_scale") ? kv.at("delta_scale") : "both";
  if (rc.delta_scale != "inv_r" && rc.delta_scale != "inv_sqrt_r" && rc.delta_scale != "both")
    bad_value("delta_scale", "expected inv_r, inv_sqrt_r, or both");
  rc.out = kv.count("out") ? kv.at("out") : ".";
  for (const std::string& tok :
       split_list(kv.count("format") ? kv.at("format") : default_formats)) {
    if (tok != "csv" && tok != "json" && tok != "svg")
      bad_value("format", "expected a subset of csv,json,svg");
    rc.formats.insert(tok);
  }

  auto join_rats = [](const std::vector<Rat>& rs) {
    std::string s;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (i) s += ',';
      s += format_rat(rs[i]);
    }
    return s;
  };
  std::string r_join;
  for (std::size_t i = 0; i < rc.R_list.size(); ++i) {
    if (i) r_join += ',';
    r_join += format_double(rc.R_list[i]);
  }
  std::string fmt_join;
  for (const auto& f : rc.formats) {
    if (!fmt_join.empty()) fmt_join += ',';
    fmt_join += f;
  }
  rc.echo = {
      {"n", std::to_string(rc.n)},
      {"m", rc.m ? std::to_string(*rc.m) : "none"},
      {"alpha_min", format_rat(rc.alpha_min)},
      {"alpha_max", format_rat(rc.alpha_max)},
      {"step", format_rat(rc.step)},
      {"u1", rc.u1 ? format_rat(*rc.u1) : "default"},
      {"u2", rc.u2 ? format_rat(*rc.u2) : "default"},
      {"u3", rc.u3 ? format_rat(*rc.u3) : "default"},
      {"R", r_join},
      {"bump_c", format_double(rc.bump_c)},
      {"tolerance", format_double(rc.tolerance)},
      {"seed", std::to_string(rc.seed)},
      {"mc_samples", std::to_string(rc.mc_samples)},
      {"j_min", std::to_string(rc.j_min)},
      {"j_max", std::to_string(rc.j_max)},
      {"u2_list", join_rats(rc.u2_list)},
      {"u3_list", join_rats(rc.u3_list)},
      {"family", fam},
      {"delta_scale", rc.delta_scale},
      {"out", rc.out},
      {"format", fmt_join},
  };
  return rc;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Presentation keys (where files go, which renderings are written) do not
// affect computed values and stay out of the hash, so moving an output
// directory cannot invalidate a resumable sweep.
std::string config_hash(const RunConfig& rc) {
  std::string canon;
  for (const auto& [k, v] : rc.echo)
    if (k != "out" && k != "format") canon += k + "=" + v + "\n";
  return hex64(fnv1a64(canon));
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file " + path.string());
  f << content;
}

// ---------------------------------------------------------------------------
// Reports

struct CheckEntry {
  std::string name, status, value;
};

struct Report {
  std::string command;
  std::map<std::string, std::string> inputs;
  std::vector<CheckEntry> checks;
  double wall_seconds = 0;
};

ordered_json report_json(const Report& rep) {
  ordered_json j;
  j["command"] = rep.command;
  j["inputs"] = ordered_json::object();
  for (const auto& [k, v] : rep.inputs) j["inputs"][k] = v;
  int np = 0, nf = 0, nm = 0;
  auto arr = ordered_json::array();
  for (const auto& c : rep.checks) {
    arr.push_back({{"name", c.name}, {"status", c.status}, {"value", c.value}});
    if (c.status == "pass") ++np;
    if (c.status == "fail") ++nf;
    if (c.status == "measured") ++nm;
  }
  j["checks"] = arr;
  j["summary"] = {{"pass", np}, {"fail", nf}, {"measured", nm}};
  j["wall_time_s"] = format_double(rep.wall_seconds);
  return j;
}

struct Verifier {
  Report& rep;
  bool any_fail = false;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    rep.checks.push_back({name, ok ? "pass" : "fail", detail});
    std::cout << (ok ? "[pass] " : "[fail] ") << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) any_fail = true;
  }
  void meas(const std::string& name, double value) {
    const std::string s = format_double(value);
    rep.checks.push_back({name, "measured", s});
    std::cout << "[meas] " << name << " = " << s << "\n";
  }
};

// ---------------------------------------------------------------------------
// exponents subcommand

int cmd_exponents(const RunConfig& rc) {
  const auto rows = emit_curve(rc.n, rc.alpha_min, rc.alpha_max, rc.step);
  fs::create_directories(rc.out);
  const std::string stem = "exponents_n" + std::to_string(rc.n);
  std::vector<std::string> written;

  if (rc.formats.count("csv")) {
    std::string csv = csv_line({"alpha_num", "alpha_den", "s_num", "s_den", "branch", "winning_m"});
    for (const auto& row : rows) {
      std::string wm;
      for (std::size_t i = 0; i < row.winning_m.size(); ++i) {
        if (i) wm += ';';
        wm += std::to_string(row.winning_m[i]);
      }
      csv += csv_line({num(row.alpha).str(), den(row.alpha).str(), num(row.s).str(),
                       den(row.s).str(), row.branch, wm});
    }
    const fs::path p = fs::path(rc.out) / (stem + ".csv");
    write_file(p, csv);
    written.push_back(p.string());
  }
  if (rc.formats.count("svg")) {
    SvgSeries series;
    series.label = "s(alpha)";
    std::vector<std::pair<double, double>> marks;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      series.points.emplace_back(to_double(rows[i].alpha), to_double(rows[i].s));
      if (i > 0 && rows[i].branch != rows[i - 1].branch)
        marks.emplace_back(to_double(rows[i].alpha), to_double(rows[i].s));
    }
    const fs::path p = fs::path(rc.out) / (stem + ".svg");
    write_file(p, svg_line_chart({series}, marks, "alpha", "s"));
    written.push_back(p.string());
  }
  if (rc.formats.count("json")) {
    Report rep;
    rep.command = "exponents";
    rep.inputs = rc.echo;
    rep.inputs["config_hash"] = config_hash(rc);
    rep.checks.push_back({"rows", "measured", std::to_string(rows.size())});
    const fs::path p = fs::path(rc.out) / (stem + ".json");
    write_file(p, report_json(rep).dump(2) + "\n");
    written.push_back(p.string());
  }

  std::cout << "exponents: n = " << rc.n << ", " << rows.size() << " rows on ["
            << format_rat(rc.alpha_min) << ", " << format_rat(rc.alpha_max) << "]";
  for (const auto& f : written) std::cout << "\n  wrote " << f;
  std::cout << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify suites

void suite_exponents(const RunConfig& rc, Verifier& v) {
  const int ncap = std::min(rc.n, 30);

  bool ok = true;
  for (int n = 2; n <= ncap && ok; ++n)
    for (int m = 0; m <= n - 2 && ok; ++m) {
      const ProblemDims d{n, m};
      const Rat b2 = beta2(d);
      ok = ok && s3(d, rat(n - m)) == s4(d, rat(n - m));
      ok = ok && s5(d, b2) == s4(d, b2);
      if (m <= n - 4) {
        const Rat b1 = beta1(d);
        ok = ok && s3(d, b1) == s5(d, b1);
      }
    }
  v.check("exponents: branch values agree at crossing thresholds (n <= " +
              std::to_string(ncap) + ")",
          ok);

  ok = true;
  for (int n = 2; n <= ncap; ++n) {
    ok = ok && s_of_alpha(n, rat(n)).value == rat(n, 2 * (n + 1));
    ok = ok && s_of_alpha(n, rat(n, 2)).value == rat(n, 4);
  }
  v.check("exponents: endpoint values match closed forms", ok);

  ok = true;
  for (int n : std::set<int>{2, 5, 9, 15, ncap}) {
    if (n > ncap) continue;
    const auto brs = theorem1_branches(n);
    ok = ok && brs.front().alpha_lo == rat(n, 2) && brs.back().alpha_hi == rat(n);
    for (std::size_t i = 0; i + 1 < brs.size(); ++i)
      ok = ok && brs[i].alpha_hi == brs[i + 1].alpha_lo;
    for (const auto& br : brs) {
      const Rat mid = (br.alpha_lo + br.alpha_hi) / 2;
      ok = ok && theorem1_eval(n, br, mid) == s_of_alpha(n, mid).value;
      ok = ok && theorem1_case(n, mid).family == br.family;
    }
  }
  v.check("exponents: five-case description tiles [n/2, n] and matches the max", ok);

  ok = true;
  for (int n = 2; n <= std::min(ncap, 12); ++n)
    for (int m = 0; m <= n - 2; ++m) {
      const ProblemDims d{n, m};
      for (const Rat& alpha : {rat(n, 2), rat(3 * n, 4), rat(n)}) {
        ok = ok && s3(d, alpha) == kappa_cross_check(3, d, alpha);
        ok = ok && s4(d, alpha) == kappa_cross_check(4, d, alpha);
        ok = ok && s5(d, alpha) == kappa_cross_check(5, d, alpha);
      }
    }
  v.check("exponents: kappa dictionary reproduces the branch formulas", ok);

  ok = true;
  const std::vector<std::pair<int, int>> dims_list{{2, 0}, {2, 1}, {3, 1}, {4, 1}, {4, 2}};
  for (const auto& [n, m] : dims_list) {
    const ProblemDims d{n, m};
    for (const Rat& u2 : {rat(9, 16), rat(5, 8), rat(3, 4), rat(13, 16)}) {
      if (u2 > u2_cap(d)) continue;
      for (const Rat& u3 : {rat(1, 8), rat(1, 4), rat(1, 2)}) {
        const ParamVector u{default_u1(u2), u2, u3};
        const auto fr = check_params(d, u);
        if (!fr.dilation_exists || !(fr.feasible || fr.boundary_feasible)) continue;
        const auto [a1, a2] = alpha_dims(d, u2, u3);
        ok = ok && mtp_lower_bound(slab_shrink_pattern(d), dilation_pattern(d, u)) ==
                       std::min(a1, a2);
      }
    }
  }
  v.check("exponents: dilation bound equals the smaller slab dimension", ok);
}

void suite_optimizer(const RunConfig&, Verifier& v) {
  const std::vector<std::pair<int, int>> dims_list{{2, 0}, {2, 1}, {3, 1}, {4, 1}};
  for (const auto& [n, m] : dims_list) {
    const auto rep = verify_piecewise({n, m}, 200, 32);
    const bool ok = rep.max_deviation <= rat(n, 2) / 200;
    v.check("optimizer: slice oracle matches the curve (n=" + std::to_string(n) +
                ", m=" + std::to_string(m) + ")",
            ok, "max deviation " + format_rat(rep.max_deviation) + " at alpha = " +
                    format_rat(rep.worst_alpha));
  }
  bool ok = true;
  for (Rat alpha = rat(2); alpha <= rat(4); alpha += rat(1, 4)) {
    const auto closed = s_of_alpha(4, alpha);
    const auto oracle = grand_max_oracle(4, alpha, 32);
    ok = ok && closed.value == oracle.value && closed.argmax == oracle.argmax;
  }
  v.check("optimizer: grand max and argmax agree with the closed form (n=4)", ok);
}

void suite_gauss(const RunConfig&, Verifier& v) {
  bool ok = true;
  for (std::int64_t q = 3; q <= 199; q += 2) {
    const double root = std::sqrt(static_cast<double>(q));
    for (std::int64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      for (std::int64_t b : {0, 1, 5}) {
        const double mag = std::abs(gauss_sum_1d(a, b, q));
        ok = ok && std::abs(mag - root) <= 1e-9 * root;
      }
    }
  }
  v.check("gauss: |G(a,b;q)| = sqrt(q) for odd q <= 199, all coprime a", ok);

  ok = std::abs(gauss_sum_1d(1, 0, 5) - std::complex<double>(std::sqrt(5.0), 0.0)) <= 1e-12;
  ok = ok && std::abs(gauss_sum_1d(1, 0, 3) - std::complex<double>(0.0, std::sqrt(3.0))) <= 1e-12;
  v.check("gauss: classical closed forms at q = 3, 5", ok);

  ok = true;
  const std::vector<std::array<std::int64_t, 3>> shifts{{3, 2, 7}, {5, 0, 9}, {2, 1, 11}};
  for (const auto& [a, b, q] : shifts) {
    const auto base = gauss_sum_1d(a, b, q);
    const auto sa = gauss_sum_1d(a + q, b, q);
    const auto sb = gauss_sum_1d(a, b + q, q);
    ok = ok && base.real() == sa.real() && base.imag() == sa.imag();
    ok = ok && base.real() == sb.real() && base.imag() == sb.imag();
  }
  v.check("gauss: period shifts reproduce the sum bit for bit", ok);

  ok = true;
  const std::vector<std::int64_t> av{1, 2, 3}, bv{0, 1, 4};
  for (std::int64_t q : {3, 5, 9, 15}) {
    const auto prod = gauss_sum_multi(av, bv, q);
    const auto direct = gauss_sum_multi_direct(av, bv, q);
    ok = ok && std::abs(prod - direct) <= 1e-10 * std::max(1.0, std::abs(direct));
  }
  v.check("gauss: product form equals direct 3-dimensional summation", ok);

  const auto rep = perturbation_check(PerturbProfile::Hat, 3, 1, 10, 1);
  ok = std::abs(rep.error - 0.2 / std::sqrt(3.0)) <= 1e-9;
  ok = ok && rep.error <= rep.bound && rep.terms == 21;
  v.check("gauss: hat-weighted sum error matches the closed form (q=3, L=10)", ok);
}

void suite_counting(const RunConfig&, Verifier& v) {
  bool ok = true;
  for (std::int64_t Q : {4, 8, 16, 32, 64})
    for (int N = 1; N <= 3; ++N)
      ok = ok && count_index_set(Q, N) == count_index_set_bruteforce(Q, N);
  v.check("counting: sieve-backed index count equals brute force (Q <= 64)", ok);

  for (int N = 1; N <= 3; ++N) {
    const double density = count_index_set(512, N).convert_to<double>() /
                           std::pow(512.0, static_cast<double>(N + 1));
    v.meas("counting: index density at Q = 512, N = " + std::to_string(N), density);
  }

  const auto pc1 = count_intersecting_pairs(32, 1, rat(2), rat(1));
  const auto pc2 = count_intersecting_pairs(16, 2, rat(2), rat(1));
  bool ok2 = pc1.diagonal == count_index_set(32, 1);
  ok2 = ok2 && pc2.diagonal == count_index_set(16, 2);
  ok2 = ok2 && pc2.total >= pc2.diagonal;
  v.check("counting: intersecting-pair diagonal equals the index count", ok2);
  v.meas("counting: pair total / Q^2 at Q = 32, N = 1, t = (2,1)",
         pc1.total.convert_to<double>() / std::pow(32.0, 2));
}

void suite_evolution(const RunConfig& rc, Verifier& v) {
  bool ok = bump(0.0, 0.25) == 1.0 && bump(0.3, 0.25) == 0.0;
  ok = ok && std::abs(bump(0.125, 0.25) - std::exp(-1.0 / 3.0)) <= 1e-15;
  v.check("evolution: bump profile values", ok);

  // Frozen midpoint-rule oracle values at the default profile width.
  const QuadratureControl lit{};
  ok = std::abs(oscillatory_bump_integral(0.0, 0.0, lit) -
                std::complex<double>(0.120690032243788, 0.0)) <= 5e-9;
  ok = ok && std::abs(oscillatory_bump_integral(3.0, 0.5, lit) -
                      std::complex<double>(0.0899834362845185, 0.000285977944767922)) <= 5e-9;
  v.check("evolution: oscillatory integral matches the midpoint oracle", ok);

  const double w2 = bump_l2(0.1);
  const double norm = datum_norm({2, 1}, {rat(1, 2), rat(3, 4), rat(1, 4)}, 4096.0);
  ok = std::abs(norm - std::pow(4096.0, 0.25) * w2 * w2) <= 1e-12 * norm;
  v.check("evolution: datum norm factorizes over the axes (n=2, m=1, R=4096)", ok);

  QuadratureControl ctrl{};
  ctrl.c = rc.bump_c;
  const ProblemDims d{2, 1};
  const ParamVector u{rat(1, 2), rat(3, 4), rat(1, 16)};
  const double R = rc.R_list.front();
  ok = std::abs(hs_norm_ratio(d, u, R, 0.0, ctrl) - 1.0) <= 1e-12;
  v.check("evolution: Sobolev quotient is exactly 1 at s = 0", ok);
  const double ratio = hs_norm_ratio(d, u, R, to_double(s_from_params(d, u.u2, u.u3)), ctrl);
  v.meas("evolution: Sobolev quotient drift |ratio - 1| at s = 15/32", std::abs(ratio - 1.0));
  v.check("evolution: frozen-weight Sobolev quotient stays near 1", std::abs(ratio - 1.0) <= 1e-3);

  const SlopeFit fit = slope_fit(d, u, rc.j_min, rc.j_max, ctrl);
  v.meas("evolution: dyadic magnitude slope (j = " + std::to_string(rc.j_min) + ".." +
             std::to_string(rc.j_max) + ")",
         fit.slope);
  v.meas("evolution: slope minus predicted exponent",
         fit.slope - to_double(s_from_params(d, u.u2, u.u3)));
  v.check("evolution: slope fit covers every requested scale",
          fit.scales.size() == static_cast<std::size_t>(rc.j_max - rc.j_min + 1) &&
              fit.log2_mag.size() == fit.scales.size());

  const double off = off_scale_decay(d, {rat(1, 2), rat(3, 4), rat(1, 4)}, 16, 18, ctrl);
  v.check("evolution: off-scale magnitude below 2^-18 (base 16, j = 18)",
          off <= std::ldexp(1.0, -18));
}

void suite_slabs(const RunConfig&, Verifier& v) {
  const SlabConfig lit{{2, 1}, {rat(1, 2), rat(3, 4), rat(1, 4)}, 256.0, SlabFamily::Talbot};
  const auto fine = box_count(lit, DeltaScale::InvR);
  const auto coarse = box_count(lit, DeltaScale::InvSqrtR);
  v.check("slabs: box counts match frozen values (n=2, m=1, R=2^8)",
          fine.boxes == BigInt(36036) && coarse.boxes == BigInt(216));
  v.meas("slabs: fine-grid dimension estimate (n=2, m=1, R=2^8)", fine.dim_estimate);

  const SlabConfig cfg{{3, 1}, {rat(9, 32), rat(49, 64), rat(1, 16)}, 4096.0,
                       SlabFamily::Talbot};
  v.check("slabs: count exponent closed form", slab_count_exponent(cfg) == rat(87, 64));
  const auto slabs = enumerate_slabs(cfg);
  bool ok = !slabs.empty();
  for (std::size_t i = 0; i < slabs.size(); ++i) {
    ok = ok && std::gcd(slabs[i].p1, slabs[i].q) == 1;
    ok = ok && slabs[i].x1 >= 0.0 && slabs[i].x1 < 1.0;
    if (i > 0)
      ok = ok && std::tie(slabs[i - 1].q, slabs[i - 1].p1, slabs[i - 1].p_mid,
                          slabs[i - 1].p_last) <=
                     std::tie(slabs[i].q, slabs[i].p1, slabs[i].p_mid, slabs[i].p_last);
  }
  const double ratio = static_cast<double>(slabs.size()) / slab_count_estimate(cfg);
  ok = ok && ratio > 1.0 / 8.0 && ratio < 8.0;
  v.check("slabs: enumeration is ordered, coprime, and tracks the estimate", ok);
  v.meas("slabs: enumerated count over continuous estimate", ratio);

  ok = true;
  const std::vector<std::int64_t> expect{3, 5, 5, 5, 7};
  for (int j = 10; j <= 14; ++j) {
    const SlabPoint pt = select_slab_point(
        {{3, 1}, {rat(9, 32), rat(49, 64), rat(1, 16)}, std::ldexp(1.0, j),
         SlabFamily::Talbot});
    ok = ok && pt.q == expect[static_cast<std::size_t>(j - 10)];
    ok = ok && pt.p1 % 2 == 0 && std::gcd(pt.p1 / 2, pt.q) == 1;
    ok = ok && pt.x[0] >= 0.1 && pt.x[0] <= 1.0;
  }
  v.check("slabs: selected points walk the expected denominators (j = 10..14)", ok);
}

void suite_ubiquity(const RunConfig& rc, Verifier& v) {
  const OmegaConfig one{{2, 1}, {rat(1, 4), rat(11, 16), rat(1, 2)}, std::ldexp(1.0, 24)};
  const auto rep1 = omega_measure(one, rc.mc_samples, rc.seed);
  v.check("ubiquity: one-coordinate union measure equals the hand value 43/140",
          std::abs(rep1.measure - 43.0 / 140.0) <= 1e-9 && rep1.balls == 10);
  v.meas("ubiquity: one-coordinate measure", rep1.measure);
  if (rc.mc_samples > 0 && rep1.mc_sigma > 0) {
    const double z1 = (rep1.mc_measure - rep1.measure) / rep1.mc_sigma;
    v.meas("ubiquity: Monte Carlo z-score (one coordinate)", z1);
    v.check("ubiquity: Monte Carlo agrees within 4 sigma (one coordinate)",
            std::abs(z1) <= 4.0);
  }

  const OmegaConfig two{{3, 1}, {rat(1, 4), rat(11, 16), rat(1, 2)}, std::ldexp(1.0, 24)};
  const auto rep2 = omega_measure(two, rc.mc_samples, rc.seed);
  v.check("ubiquity: shrink exponents are (2, 1) relative to the denominator window",
          std::abs(rep2.t1 - 2.0) <= 1e-12 && std::abs(rep2.t2 - 1.0) <= 1e-12);
  v.meas("ubiquity: two-coordinate measure", rep2.measure);
  if (rc.mc_samples > 0 && rep2.mc_sigma > 0) {
    const double z2 = (rep2.mc_measure - rep2.measure) / rep2.mc_sigma;
    v.meas("ubiquity: Monte Carlo z-score (two coordinates)", z2);
    v.check("ubiquity: Monte Carlo agrees within 4 sigma (two coordinates)",
            std::abs(z2) <= 4.0);
  }

  v.check("ubiquity: covered fraction stays above 1/4 at this scale",
          ubiquity_ratio(one) > 0.25);
}

int cmd_verify(const RunConfig& rc, const std::string& suite) {
  Report rep;
  rep.command = "verify " + suite;
  rep.inputs = rc.echo;
  rep.inputs["config_hash"] = config_hash(rc);
  Verifier v{rep};

  const auto start = std::chrono::steady_clock::now();
  const bool all = suite == "all";
  if (all || suite == "exponents") suite_exponents(rc, v);
  if (all || suite == "optimizer") suite_optimizer(rc, v);
  if (all || suite == "gauss") suite_gauss(rc, v);
  if (all || suite == "counting") suite_counting(rc, v);
  if (all || suite == "evolution") suite_evolution(rc, v);
  if (all || suite == "slabs") suite_slabs(rc, v);
  if (all || suite == "ubiquity") suite_ubiquity(rc, v);
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  int np = 0, nf = 0, nm = 0;
  for (const auto& c : rep.checks) {
    if (c.status == "pass") ++np;
    if (c.status == "fail") ++nf;
    if (c.status == "measured") ++nm;
  }
  std::cout << "verify " << suite << ": " << np << " pass, " << nf << " fail, " << nm
            << " measured, " << format_double(rep.wall_seconds) << " s\n";

  if (rc.formats.count("json")) {
    fs::create_directories(rc.out);
    const fs::path p = fs::path(rc.out) / ("verify_" + suite + ".json");
    write_file(p, report_json(rep).dump(2) + "\n");
    std::cout << "wrote " << p.string() << "\n";
  }
  return v.any_fail ? 1 : 0;
}

// ---------------------------------------------------------------------------
// sweep subcommand

struct SweepGrid {
  std::vector<std::string> header;
  // Ordered (key, row-producer) pairs; rows already cached are never computed.
  std::vector<std::pair<std::string, std::function<std::vector<std::string>()>>> rows;
};

SweepGrid slope_grid(const RunConfig& rc, const std::string& chash) {
  SweepGrid g;
  g.header = {"row_hash", "config_hash", "n",      "m",          "u1_num", "u1_den",
              "u2_num",   "u2_den",      "u3_num", "u3_den",     "j_min",  "j_max",
              "s_pred_num", "s_pred_den", "slope",  "intercept"};
  const ProblemDims d{rc.n, rc.m.value_or(1)};
  for (const Rat& u2 : rc.u2_list)
    for (const Rat& u3 : rc.u3_list) {
      const Rat u1 = rc.u1 ? *rc.u1 : default_u1(u2);
      const ParamVector u{u1, u2, u3};
      const auto fr = check_params(d, u);
      if (!(fr.feasible || fr.boundary_feasible)) continue;
      const std::string key = "slope|n=" + std::to_string(d.n) + "|m=" + std::to_string(d.m) +
                              "|u1=" + format_rat(u1) + "|u2=" + format_rat(u2) +
                              "|u3=" + format_rat(u3) + "|j=" + std::to_string(rc.j_min) +
                              ".." + std::to_string(rc.j_max) +
                              "|c=" + format_double(rc.bump_c);
      g.rows.emplace_back(key, [d, u, rc, chash] {
        QuadratureControl ctrl{};
        ctrl.c = rc.bump_c;
        const SlopeFit fit = slope_fit(d, u, rc.j_min, rc.j_max, ctrl);
        const Rat pred = s_from_params(d, u.u2, u.u3);
        return std::vector<std::string>{
            "",  // row hash filled by the driver
            chash,
            std::to_string(d.n),
            std::to_string(d.m),
            num(u.u1).str(),
            den(u.u1).str(),
            num(u.u2).str(),
            den(u.u2).str(),
            num(u.u3).str(),
            den(u.u3).str(),
            std::to_string(rc.j_min),
            std::to_string(rc.j_max),
            num(pred).str(),
            den(pred).str(),
            format_double(fit.slope),
            format_double(fit.intercept)};
      });
    }
  return g;
}

SweepGrid dimfit_grid(const RunConfig& rc, const std::string& chash) {
  SweepGrid g;
  g.header = {"row_hash",  "config_hash", "n",          "m",          "u1_num",
              "u1_den",    "u2_num",      "u2_den",     "u3_num",     "u3_den",
              "delta_scale", "j_min",     "j_max",      "alpha1_num", "alpha1_den",
              "alpha2_num", "alpha2_den", "alpha_pred_num", "alpha_pred_den",
              "alpha_fit", "fit_max_residual"};
  const ProblemDims d{rc.n, rc.m.value_or(1)};
  std::vector<std::pair<std::string, DeltaScale>> scales;
  if (rc.delta_scale != "inv_sqrt_r") scales.emplace_back("inv_r", DeltaScale::InvR);
  if (rc.delta_scale != "inv_r") scales.emplace_back("inv_sqrt_r", DeltaScale::InvSqrtR);
  for (const Rat& u2 : rc.u2_list)
    for (const Rat& u3 : rc.u3_list) {
      const Rat u1 = rc.u1 ? *rc.u1 : default_u1(u2);
      const ParamVector u{u1, u2, u3};
      const auto fr = check_params(d, u);
      if (!(fr.feasible || fr.boundary_feasible)) continue;
      for (const auto& [scale_name, scale] : scales) {
        const std::string key =
            "dimfit|n=" + std::to_string(d.n) + "|m=" + std::to_string(d.m) +
            "|u1=" + format_rat(u1) + "|u2=" + format_rat(u2) + "|u3=" + format_rat(u3) +
            "|family=" + (rc.family == SlabFamily::Talbot ? "talbot" : "degenerate") +
            "|scale=" + scale_name + "|j=" + std::to_string(rc.j_min) + ".." +
            std::to_string(rc.j_max);
        g.rows.emplace_back(key, [d, u, rc, chash, scale_name = scale_name, scale = scale] {
          std::vector<double> xs, ys;
          for (int j = rc.j_min; j <= rc.j_max; ++j) {
            const SlabConfig cfg{d, u, std::ldexp(1.0, j), rc.family};
            const auto res = box_count(cfg, scale);
            xs.push_back(scale == DeltaScale::InvR ? static_cast<double>(j) : j / 2.0);
            ys.push_back(std::log2(res.boxes.convert_to<double>()));
          }
          const LineFit fit = least_squares_fit(xs, ys);
          const auto [a1, a2] = alpha_dims(d, u.u2, u.u3);
          const Rat pred = std::min(a1, a2);
          return std::vector<std::string>{
              "",
              chash,
              std::to_string(d.n),
              std::to_string(d.m),
              num(u.u1).str(),
              den(u.u1).str(),
              num(u.u2).str(),
              den(u.u2).str(),
              num(u.u3).str(),
              den(u.u3).str(),
              scale_name,
              std::to_string(rc.j_min),
              std::to_string(rc.j_max),
              num(a1).str(),
              den(a1).str(),
              num(a2).str(),
              den(a2).str(),
              num(pred).str(),
              den(pred).str(),
              format_double(fit.slope),
              format_double(fit.max_residual)};
        });
      }
    }
  return g;
}

int cmd_sweep(const RunConfig& rc, const std::string& component) {
  const std::string chash = config_hash(rc);
  const SweepGrid grid = component == "slope" ? slope_grid(rc, chash) : dimfit_grid(rc, chash);

  fs::create_directories(rc.out);
  const fs::path path = fs::path(rc.out) / ("sweep_" + component + ".csv");
  std::set<std::string> have;
  const bool existed = fs::exists(path);
  if (existed) {
    std::ifstream in(path, std::ios::binary);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (first) {
        first = false;
        continue;
      }
      const auto comma = line.find(',');
      if (comma != std::string::npos) have.insert(line.substr(0, comma));
    }
  }

  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw std::invalid_argument("cannot open output file " + path.string());
  if (!existed) out << csv_line(grid.header);

  int cached = 0, fresh = 0;
  for (const auto& [key, produce] : grid.rows) {
    const std::string rhash = hex64(fnv1a64(key));
    if (have.count(rhash)) {
      ++cached;
      continue;
    }
    auto fields = produce();
    fields[0] = rhash;
    out << csv_line(fields);
    have.insert(rhash);
    ++fresh;
  }
  out.flush();

  std::cout << "sweep " << component << ": " << grid.rows.size() << " grid points, " << fresh
            << " computed, " << cached << " cached\n  wrote " << path.string() << "\n";

  if (rc.formats.count("json")) {
    Report rep;
    rep.command = "sweep " + component;
    rep.inputs = rc.echo;
    rep.inputs["config_hash"] = chash;
    rep.checks.push_back({"grid_points", "measured", std::to_string(grid.rows.size())});
    rep.checks.push_back({"computed", "measured", std::to_string(fresh)});
    rep.checks.push_back({"cached", "measured", std::to_string(cached)});
    const fs::path jp = fs::path(rc.out) / ("sweep_" + component + ".json");
    write_file(jp, report_json(rep).dump(2) + "\n");
    std::cout << "wrote " << jp.string() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct Flags {
  std::string config, n, m, alpha_min, alpha_max, step, R, bump_c, seed, out, format;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "key = value configuration file");
  sub->add_option("--n", f.n, "ambient dimension (>= 2)");
  sub->add_option("--m", f.m, "intermediate block dimension");
  sub->add_option("--alpha-min", f.alpha_min, "lower end of the alpha range (rational)");
  sub->add_option("--alpha-max", f.alpha_max, "upper end of the alpha range (rational)");
  sub->add_option("--step", f.step, "alpha sampling step (rational)");
  sub->add_option("--R", f.R, "comma-separated scale list; entries like 4096 or 2^24");
  sub->add_option("--bump-c", f.bump_c, "frequency bump half-width");
  sub->add_option("--seed", f.seed, "Monte Carlo seed");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--format", f.format, "comma-separated subset of csv,json,svg");
}

std::map<std::string, std::string> overlay(const CLI::App* sub, const Flags& f) {
  std::map<std::string, std::string> kv;
  if (!f.config.empty()) {
    std::ifstream in(f.config, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read config file " + f.config);
    std::ostringstream text;
    text << in.rdbuf();
    kv = parse_config(text.str(), kConfigKeys).values;
  }
  auto put = [&](const char* flag, const char* key, const std::string& value) {
    if (sub->count(flag)) kv[key] = value;
  };
  put("--n", "n", f.n);
  put("--m", "m", f.m);
  put("--alpha-min", "alpha_min", f.alpha_min);
  put("--alpha-max", "alpha_max", f.alpha_max);
  put("--step", "step", f.step);
  put("--R", "R", f.R);
  put("--bump-c", "bump_c", f.bump_c);
  put("--seed", "seed", f.seed);
  put("--out", "out", f.out);
  put("--format", "format", f.format);
  return kv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification driver for the fractal divergence construction: exact "
               "exponent curves, per-module check suites, and parameter sweeps."};
  app.require_subcommand(1);

  Flags fe, fv, fs_;
  std::string suite = "all", component;

  CLI::App* ce = app.add_subcommand("exponents", "Emit the exact exponent curve as CSV/SVG");
  add_common(ce, fe);

  CLI::App* cv = app.add_subcommand("verify", "Run a module verification suite");
  cv->add_option("suite", suite,
                 "all, exponents, optimizer, gauss, counting, evolution, slabs, or ubiquity")
      ->check(CLI::IsMember({"all", "exponents", "optimizer", "gauss", "counting", "evolution",
                             "slabs", "ubiquity"}));
  add_common(cv, fv);

  CLI::App* cs = app.add_subcommand("sweep", "Resumable cartesian parameter sweep");
  cs->add_option("component", component, "slope or dimfit")
      ->required()
      ->check(CLI::IsMember({"slope", "dimfit"}));
  add_common(cs, fs_);

  try {
    app.parse(argc, argv);
    if (ce->parsed()) return cmd_exponents(build_config(overlay(ce, fe), 15, std::nullopt, "csv,svg"));
    if (cv->parsed()) return cmd_verify(build_config(overlay(cv, fv), 30, std::nullopt, ""), suite);
    return cmd_sweep(
        build_config(overlay(cs, fs_), component == "slope" ? 2 : 3, 1, "csv"), component);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const CostGuardError& e) {
    std::cerr << "cost guard: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
