// Copyright 2026 The signed-engel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "signed_engel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <utility>

#include "signed_engel/ball.hpp"
#include "signed_engel/counter_rng.hpp"
#include "signed_engel/error.hpp"
#include "signed_engel/expansion.hpp"
#include "signed_engel/parallel.hpp"
#include "signed_engel/stats_tests.hpp"

namespace signed_engel {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kAsymptoticN = 100000;
// First n with log log n >= 1.
constexpr std::size_t kGridStart = 16;
constexpr std::size_t kExceedanceStart = 10;
constexpr std::size_t kEarlyHorizon = 1000;

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

// ---- per-step quantities shared by the chain suites ----

double log_ratio(const ChainState* prev, const ChainState& cur) {
  if (prev == nullptr) return cur.log_state;
  if (!prev->saturated && !cur.saturated) {
    return std::log(static_cast<double>(cur.state) / static_cast<double>(prev->state));
  }
  return cur.log_state - prev->log_state;
}

double log_gap(const ChainState* prev, const ChainState& cur) {
  if (prev == nullptr) return cur.log_state;
  if (!prev->saturated && !cur.saturated) {
    if (cur.state <= prev->state) return -kInf;
    return std::log(static_cast<double>(cur.state - prev->state));
  }
  const double diff = cur.log_state - prev->log_state;
  if (!(diff > 0.0)) return -kInf;
  return cur.log_state + std::log(-std::expm1(-diff));
}

bool repeated(const ChainState& prev, const ChainState& cur) {
  if (!prev.saturated && !cur.saturated) return prev.state == cur.state;
  if (prev.saturated && cur.saturated) return prev.log_state == cur.log_state;
  return false;
}

// Y_n = 1 iff D_n / (D_{n-1} - 1) < 3 without a sign change, or
// D_n / (D_{n-1} + 1) < 3 with one. Y_1 = 1 iff D_1 = 2.
bool y_is_one(const ChainState* prev, const ChainState& cur) {
  if (prev == nullptr) return !cur.saturated && cur.state == 2;
  if (!prev->saturated && !cur.saturated) {
    // States stay below 2^62, so 3 * divisor fits in 64 bits.
    const std::uint64_t divisor = cur.sign_flip ? prev->state + 1 : prev->state - 1;
    return cur.state < 3 * divisor;
  }
  return log_ratio(prev, cur) < std::log(3.0);
}

// Drives `observe(n, prev, cur)` over one trajectory, generated on the fly
// for the chains and materialized for expansions of reals.
template <class Acc>
void walk(ChainSource source, std::size_t n, std::uint64_t seed, std::uint64_t id, Acc& acc) {
  if (source == ChainSource::kExpansionOfReal) {
    const Trajectory t = simulate_one(source, n, seed, id);
    for (std::size_t k = 0; k < t.size(); ++k) {
      acc.observe(k + 1, k == 0 ? nullptr : &t.states[k - 1], t.states[k]);
    }
    return;
  }
  ChainWalker walker(source, seed, id);
  ChainState prev;
  for (std::size_t k = 1; k <= n; ++k) {
    const ChainState& cur = walker.next();
    acc.observe(k, k == 1 ? nullptr : &prev, cur);
    prev = cur;
  }
}

template <class Acc>
void feed(const Trajectory& t, Acc& acc) {
  for (std::size_t k = 0; k < t.size(); ++k) {
    acc.observe(k + 1, k == 0 ? nullptr : &t.states[k - 1], t.states[k]);
  }
}

template <class Acc, class Make>
std::vector<Acc> summarize(const TrajectoryBatch& batch, Make make) {
  std::vector<Acc> out;
  out.reserve(batch.count());
  for (const auto& t : batch.trajectories) {
    Acc acc = make();
    feed(t, acc);
    out.push_back(std::move(acc));
  }
  return out;
}

template <class Acc, class Make>
std::vector<Acc> summarize(ChainSource source, std::size_t n, std::size_t count,
                           std::uint64_t seed, unsigned workers, Make make) {
  std::vector<Acc> out(count, make());
  parallel_for(
      count, [&](std::size_t i) { walk(source, n, seed, i, out[i]); }, workers);
  return out;
}

double share(std::size_t hits, std::size_t total) {
  return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
}

nlohmann::ordered_json chain_params(ChainSource source, std::size_t n, std::size_t count,
                                    std::uint64_t seed) {
  nlohmann::ordered_json p;
  p["source"] = std::string(to_string(source));
  p["n"] = n;
  p["count"] = count;
  p["seed"] = seed;
  return p;
}

nlohmann::ordered_json batch_params(const TrajectoryBatch& batch) {
  return chain_params(batch.source, batch.n, batch.count(), batch.seed);
}

// ---- LLN and CLT: only the last two states matter ----

struct FinalAcc {
  ChainState prev;
  ChainState last;
  std::size_t steps = 0;

  void observe(std::size_t n, const ChainState* p, const ChainState& cur) {
    if (p != nullptr) prev = *p;
    last = cur;
    steps = n;
  }
  double log_d() const { return last.log_state; }
  double log_delta() const { return log_gap(steps > 1 ? &prev : nullptr, last); }
};

void require_finite(const std::vector<FinalAcc>& finals) {
  for (std::size_t i = 0; i < finals.size(); ++i) {
    if (!std::isfinite(finals[i].log_d())) {
      throw Error(ErrorCode::kSaturatedBatch,
                  "trajectory " + std::to_string(i) + " has no finite log-state");
    }
  }
}

VerificationReport lln_report(const std::vector<FinalAcc>& finals, std::size_t n,
                              nlohmann::ordered_json params, std::size_t saturated) {
  require_finite(finals);
  VerificationReport r;
  r.suite = "lln";
  r.params = std::move(params);
  const double nd = static_cast<double>(n);
  const double tol = 5.0 / std::sqrt(nd);
  std::size_t ok_d = 0, ok_delta = 0;
  double sum_d = 0.0, sum_delta = 0.0;
  for (const auto& f : finals) {
    const double sd = f.log_d() / nd;
    const double sg = f.log_delta() / nd;
    sum_d += sd;
    sum_delta += sg;
    ok_d += std::abs(sd - 1.0) < tol ? 1 : 0;
    ok_delta += std::abs(sg - 1.0) < tol ? 1 : 0;
  }
  const double count = static_cast<double>(finals.size());
  r.metrics["tolerance"] = tol;
  r.metrics["mean_log_D_over_n"] = sum_d / count;
  r.metrics["mean_log_Delta_over_n"] = sum_delta / count;
  r.metrics["saturated_count"] = saturated;
  const std::string gate = ">= 0.95 of trajectories within " + fmt(tol) + " of 1";
  r.add_check("log D_n / n", share(ok_d, finals.size()), gate, share(ok_d, finals.size()) >= 0.95);
  r.add_check("log Delta_n / n", share(ok_delta, finals.size()), gate,
              share(ok_delta, finals.size()) >= 0.95);
  r.conclude();
  if (n < 1000) r.mark_inconclusive("needs n >= 1000");
  return r;
}

VerificationReport clt_report(const std::vector<FinalAcc>& finals, std::size_t n,
                              nlohmann::ordered_json params, std::size_t saturated) {
  require_finite(finals);
  VerificationReport r;
  r.suite = "clt";
  r.params = std::move(params);
  const double nd = static_cast<double>(n);
  const double root = std::sqrt(nd);
  std::vector<double> z_d, z_delta;
  z_d.reserve(finals.size());
  z_delta.reserve(finals.size());
  double mean = 0.0;
  for (const auto& f : finals) {
    z_d.push_back((f.log_d() - nd) / root);
    z_delta.push_back((f.log_delta() - nd) / root);
    mean += z_d.back();
  }
  mean /= static_cast<double>(finals.size());
  double var = 0.0;
  for (const double z : z_d) var += (z - mean) * (z - mean);
  var /= std::max<double>(1.0, static_cast<double>(finals.size()) - 1.0);
  const double ks_d = ks_distance_normal(std::move(z_d));
  const double ks_delta = ks_distance_normal(std::move(z_delta));
  r.metrics["mean_z"] = mean;
  r.metrics["variance_z"] = var;
  r.metrics["saturated_count"] = saturated;
  r.add_check("KS (log D_n - n)/sqrt(n) vs N(0,1)", ks_d, "< 0.05", ks_d < 0.05);
  r.add_check("KS (log Delta_n - n)/sqrt(n) vs N(0,1)", ks_delta, "< 0.05", ks_delta < 0.05);
  r.conclude();
  if (finals.size() < 5000 || n < 3000) r.mark_inconclusive("needs count >= 5000 and n >= 3000");
  return r;
}

// ---- LIL smoke ----

struct LilAcc {
  LilNormalization norm = LilNormalization::kIteratedLog;
  double sup = -kInf;
  double inf = kInf;
  double sup_delta = -kInf;
  double inf_delta = kInf;

  void observe(std::size_t n, const ChainState* prev, const ChainState& cur) {
    if (n < kGridStart) return;
    const double nd = static_cast<double>(n);
    const double scale = norm == LilNormalization::kIteratedLog
                             ? std::sqrt(2.0 * nd * std::log(std::log(nd)))
                             : std::sqrt(nd);
    const double z = (cur.log_state - nd) / scale;
    sup = std::max(sup, z);
    inf = std::min(inf, z);
    const double zd = (log_gap(prev, cur) - nd) / scale;
    sup_delta = std::max(sup_delta, zd);
    inf_delta = std::min(inf_delta, zd);
  }
};

VerificationReport lil_report(const std::vector<LilAcc>& accs, std::size_t n,
                              nlohmann::ordered_json params, LilNormalization norm) {
  VerificationReport r;
  r.suite = "lil";
  r.params = std::move(params);
  r.params["normalization"] = norm == LilNormalization::kIteratedLog ? "sqrt(2n log log n)" : "sqrt(n)";
  r.params["grid_start"] = kGridStart;
  std::size_t ok_sup = 0, ok_inf = 0;
  std::vector<double> sups, infs;
  double max_sup = -kInf, min_inf = kInf, max_sup_delta = -kInf, min_inf_delta = kInf;
  for (const auto& a : accs) {
    ok_sup += (a.sup > 0.0 && a.sup < 3.0) ? 1 : 0;
    ok_inf += (a.inf > -3.0 && a.inf < 0.0) ? 1 : 0;
    sups.push_back(a.sup);
    infs.push_back(a.inf);
    max_sup = std::max(max_sup, a.sup);
    min_inf = std::min(min_inf, a.inf);
    max_sup_delta = std::max(max_sup_delta, a.sup_delta);
    min_inf_delta = std::min(min_inf_delta, a.inf_delta);
  }
  r.metrics["label"] = "smoke, non-quantitative";
  r.metrics["median_sup"] = sups.empty() ? 0.0 : median(sups);
  r.metrics["median_inf"] = infs.empty() ? 0.0 : median(infs);
  r.metrics["max_sup"] = max_sup;
  r.metrics["min_inf"] = min_inf;
  r.metrics["max_sup_delta"] = max_sup_delta;
  r.metrics["min_inf_delta"] = min_inf_delta;
  r.add_check("share with running sup in (0, 3)", share(ok_sup, accs.size()), "== 1",
              ok_sup == accs.size());
  r.add_check("share with running inf in (-3, 0)", share(ok_inf, accs.size()), "== 1",
              ok_inf == accs.size());
  r.conclude();
  if (n < kAsymptoticN || accs.size() < 2) r.mark_inconclusive("needs n >= 100000 and count >= 2");
  return r;
}

// ---- Borel-Bernstein exceedances ----

struct PhiTable {
  PhiFunction phi;
  std::vector<double> value;  // index n
  std::vector<double> log_value;
};

PhiTable make_table(const PhiFunction& phi, std::size_t n) {
  PhiTable t{phi, std::vector<double>(n + 1), std::vector<double>(n + 1)};
  for (std::size_t k = 1; k <= n; ++k) {
    t.value[k] = phi(k);
    t.log_value[k] = std::log(t.value[k]);
  }
  return t;
}

struct BbCounts {
  std::size_t r_early = 0, r_total = 0, m_early = 0, m_total = 0;
};

struct BbAcc {
  const std::vector<PhiTable>* tables = nullptr;
  std::vector<BbCounts> counts;
  double max_log_ratio = -kInf;

  void observe(std::size_t n, const ChainState* prev, const ChainState& cur) {
    const double lr = log_ratio(prev, cur);
    max_log_ratio = std::max(max_log_ratio, lr);
    if (n < kExceedanceStart) return;
    for (std::size_t i = 0; i < tables->size(); ++i) {
      const PhiTable& t = (*tables)[i];
      BbCounts& c = counts[i];
      bool r_hit;
      if (prev != nullptr && !prev->saturated && !cur.saturated) {
        r_hit = static_cast<long double>(cur.state) >=
                static_cast<long double>(t.value[n]) * static_cast<long double>(prev->state);
      } else {
        r_hit = lr >= t.log_value[n];
      }
      const bool m_hit = r_hit || max_log_ratio >= t.log_value[n];
      c.r_total += r_hit ? 1 : 0;
      c.m_total += m_hit ? 1 : 0;
      if (n <= kEarlyHorizon) {
        c.r_early += r_hit ? 1 : 0;
        c.m_early += m_hit ? 1 : 0;
      }
    }
  }
};

void bb_checks(VerificationReport& r, const std::vector<BbAcc>& accs, std::size_t index,
               const PhiTable& table, std::size_t n) {
  const std::string tag = table.phi.to_string();
  std::optional<bool> diverges = table.phi.series_diverges();
  double partial = 0.0;
  for (std::size_t k = kExceedanceStart; k <= n; ++k) partial += 1.0 / table.value[k];
  if (!diverges) diverges = partial >= 1.0;

  std::vector<double> r_early, r_total, m_early, m_total;
  std::size_t r_any = 0, m_any = 0;
  for (const auto& a : accs) {
    const BbCounts& c = a.counts[index];
    r_early.push_back(static_cast<double>(c.r_early));
    r_total.push_back(static_cast<double>(c.r_total));
    m_early.push_back(static_cast<double>(c.m_early));
    m_total.push_back(static_cast<double>(c.m_total));
    r_any += c.r_total > 0 ? 1 : 0;
    m_any += c.m_total > 0 ? 1 : 0;
  }
  nlohmann::ordered_json m;
  m["regime"] = *diverges ? "divergent" : "convergent";
  m["sum_inverse_phi_on_window"] = partial;
  m["window_start"] = kExceedanceStart;
  m["median_R_count_at_1000"] = median(r_early);
  m["median_R_count_at_N"] = median(r_total);
  m["median_M_count_at_1000"] = median(m_early);
  m["median_M_count_at_N"] = median(m_total);
  m["mean_R_count_at_N"] = [&] {
    double s = 0.0;
    for (const double v : r_total) s += v;
    return s / static_cast<double>(r_total.size());
  }();
  r.metrics[tag] = m;

  const std::size_t count = accs.size();
  if (*diverges) {
    r.add_check(tag + " R_n: share with an exceedance by N", share(r_any, count), ">= 0.9",
                share(r_any, count) >= 0.9);
    r.add_check(tag + " R_n: median count growth 1000 -> N", median(r_total) - median(r_early),
                "> 0", median(r_total) > median(r_early));
    r.add_check(tag + " M_n: share with an exceedance by N", share(m_any, count), ">= 0.9",
                share(m_any, count) >= 0.9);
    r.add_check(tag + " M_n: median count growth 1000 -> N", median(m_total) - median(m_early),
                "> 0", median(m_total) > median(m_early));
  } else {
    r.add_check(tag + " R_n: share with no exceedance", share(count - r_any, count), ">= 0.9",
                share(count - r_any, count) >= 0.9);
    r.add_check(tag + " M_n: share with no exceedance", share(count - m_any, count), ">= 0.9",
                share(count - m_any, count) >= 0.9);
  }
}

VerificationReport bb_report(const std::vector<BbAcc>& accs, const std::vector<PhiTable>& tables,
                             std::size_t n, nlohmann::ordered_json params) {
  VerificationReport r;
  r.suite = "bb";
  r.params = std::move(params);
  nlohmann::ordered_json names = nlohmann::ordered_json::array();
  for (const auto& t : tables) names.push_back(t.phi.to_string());
  r.params["phi"] = names;
  for (std::size_t i = 0; i < tables.size(); ++i) bb_checks(r, accs, i, tables[i], n);
  r.conclude();
  if (n < kAsymptoticN) r.mark_inconclusive("needs n >= 100000");
  return r;
}

// ---- ratio growth smoke ----

struct RatioAcc {
  double max_normalized = -kInf;
  double max_log_ratio = -kInf;
  double log_m_over_log_n = 0.0;
  std::size_t y_one = 0;
  std::size_t y_total = 0;

  void observe(std::size_t n, const ChainState* prev, const ChainState& cur) {
    const double lr = log_ratio(prev, cur);
    max_log_ratio = std::max(max_log_ratio, lr);
    y_one += y_is_one(prev, cur) ? 1 : 0;
    ++y_total;
    const double log_n = std::log(static_cast<double>(n));
    if (n >= kGridStart) max_normalized = std::max(max_normalized, (lr - log_n) / std::log(log_n));
    if (n > 1) log_m_over_log_n = max_log_ratio / log_n;
  }
};

VerificationReport ratio_report(const std::vector<RatioAcc>& accs, std::size_t n,
                                nlohmann::ordered_json params) {
  VerificationReport r;
  r.suite = "ratio";
  r.params = std::move(params);
  std::vector<double> maxima;
  std::size_t in_band = 0, y_one = 0, y_total = 0;
  for (const auto& a : accs) {
    maxima.push_back(a.max_normalized);
    in_band += (a.log_m_over_log_n > 0.6 && a.log_m_over_log_n < 1.4) ? 1 : 0;
    y_one += a.y_one;
    y_total += a.y_total;
  }
  const double med = median(maxima);
  const double y_freq = share(y_one, y_total);
  r.metrics["label"] = "smoke, non-quantitative";
  r.metrics["min_running_max"] = *std::min_element(maxima.begin(), maxima.end());
  r.metrics["max_running_max"] = *std::max_element(maxima.begin(), maxima.end());
  r.metrics["y_samples"] = y_total;
  r.add_check("median running max of (log R_n - log n)/log log n", med, "in (0, 2.5)",
              med > 0.0 && med < 2.5);
  r.add_check("share with log M_N / log N in (0.6, 1.4)", share(in_band, accs.size()), ">= 0.9",
              share(in_band, accs.size()) >= 0.9);
  r.add_check("frequency of Y_n = 1", y_freq, "within 0.02 of 2/3",
              std::abs(y_freq - 2.0 / 3.0) < 0.02);
  r.conclude();
  if (n < kAsymptoticN) r.mark_inconclusive("needs n >= 100000");
  return r;
}

// ---- certified expansions of random decimals ----

struct CertifiedSample {
  SignedEngelExpansion expansion;
  std::vector<Rational> orbit;
};

CertifiedSample certified_sample(const CounterRng& rng, std::uint64_t index, unsigned digits,
                                 std::size_t n, bool with_orbit) {
  for (std::uint32_t attempt = 0; attempt < 8; ++attempt, digits *= 2) {
    const Ball ball = ball_from_decimal(random_decimal(rng, index, digits, attempt));
    CertifiedSample s;
    if (with_orbit) {
      ExpansionWithOrbit e = expand_certified_with_orbit(ball, n);
      s.expansion = std::move(e.expansion);
      s.orbit = std::move(e.orbit);
    } else {
      s.expansion = expand_certified(ball, n);
    }
    if (s.expansion.certified_prefix_len >= n) return s;
  }
  throw Error(ErrorCode::kPrecisionExhausted,
              "sample " + std::to_string(index) + " did not certify " + std::to_string(n) + " digits");
}

std::size_t pick(const std::optional<std::size_t>& value, std::size_t fallback) {
  return value.value_or(fallback);
}

}  // namespace

// ---- reports ----

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPass:
      return "Pass";
    case Verdict::kFail:
      return "Fail";
    case Verdict::kInconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

void VerificationReport::add_check(std::string name, double value, std::string gate, bool pass) {
  checks.push_back({std::move(name), value, std::move(gate), pass});
}

void VerificationReport::conclude() {
  if (checks.empty()) {
    verdict = Verdict::kInconclusive;
    return;
  }
  const bool all = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  verdict = all ? Verdict::kPass : Verdict::kFail;
}

void VerificationReport::mark_inconclusive(const std::string& reason) {
  verdict = Verdict::kInconclusive;
  metrics["inconclusive_reason"] = reason;
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["params"] = report.params;
  j["metrics"] = report.metrics;
  j["verdict"] = std::string(to_string(report.verdict));
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["value"] = c.value;
    cj["gate"] = c.gate;
    cj["pass"] = c.pass;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

// ---- φ ----

PhiFunction::PhiFunction(Kind kind, double parameter, std::vector<double> table)
    : kind_(kind), parameter_(parameter), table_(std::move(table)) {}

PhiFunction PhiFunction::power(double exponent) { return {Kind::kPower, exponent}; }

PhiFunction PhiFunction::nlogpow(double alpha) { return {Kind::kNLogPow, alpha}; }

PhiFunction PhiFunction::constant(double value) {
  if (!(value > 0.0)) throw Error(ErrorCode::kOutOfDomain, "constant phi must be positive");
  return {Kind::kConstant, value};
}

PhiFunction PhiFunction::table(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kOutOfDomain, "phi table is empty");
  for (const double v : values) {
    if (!(v > 0.0)) throw Error(ErrorCode::kOutOfDomain, "phi table entries must be positive");
  }
  return {Kind::kTable, 0.0, std::move(values)};
}

PhiFunction PhiFunction::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kParseError, "phi must look like kind:parameter");
  }
  const std::string kind(text.substr(0, colon));
  const std::string rest(text.substr(colon + 1));
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::kParseError, "bad phi parameter '" + s + "'");
    }
    return v;
  };
  if (kind == "power") return power(number(rest));
  if (kind == "nlogpow") return nlogpow(number(rest));
  if (kind == "const") return constant(number(rest));
  if (kind == "table") {
    std::vector<double> values;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(number(item));
    return table(std::move(values));
  }
  throw Error(ErrorCode::kParseError, "unknown phi kind '" + kind + "'");
}

double PhiFunction::operator()(std::size_t n) const {
  if (n == 0) throw Error(ErrorCode::kOutOfDomain, "phi is defined on n >= 1");
  const double nd = static_cast<double>(n);
  switch (kind_) {
    case Kind::kPower:
      return std::pow(nd, parameter_);
    case Kind::kNLogPow:
      return n == 1 ? 1.0 : nd * std::pow(std::log(nd), parameter_);
    case Kind::kConstant:
      return parameter_;
    case Kind::kTable:
      return table_[std::min(n, table_.size()) - 1];
  }
  return 1.0;
}

std::optional<bool> PhiFunction::series_diverges() const {
  switch (kind_) {
    case Kind::kPower:
      return parameter_ <= 1.0;
    case Kind::kNLogPow:
      return parameter_ <= 1.0;
    case Kind::kConstant:
      return true;
    case Kind::kTable:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string PhiFunction::to_string() const {
  switch (kind_) {
    case Kind::kPower:
      return "power:" + fmt(parameter_);
    case Kind::kNLogPow:
      return "nlogpow:" + fmt(parameter_);
    case Kind::kConstant:
      return "const:" + fmt(parameter_);
    case Kind::kTable: {
      std::string out = "table:";
      for (std::size_t i = 0; i < table_.size(); ++i) out += (i ? "," : "") + fmt(table_[i]);
      return out;
    }
  }
  return "";
}

// ---- batch entry points ----

VerificationReport lln_check(const TrajectoryBatch& batch) {
  const auto finals = summarize<FinalAcc>(batch, [] { return FinalAcc{}; });
  return lln_report(finals, batch.n, batch_params(batch), batch.saturated_count());
}

VerificationReport clt_check(const TrajectoryBatch& batch) {
  const auto finals = summarize<FinalAcc>(batch, [] { return FinalAcc{}; });
  return clt_report(finals, batch.n, batch_params(batch), batch.saturated_count());
}

VerificationReport lil_smoke(const TrajectoryBatch& batch, LilNormalization norm) {
  const auto accs = summarize<LilAcc>(batch, [norm] { return LilAcc{norm}; });
  return lil_report(accs, batch.n, batch_params(batch), norm);
}

VerificationReport borel_bernstein_check(const TrajectoryBatch& batch, const PhiFunction& phi) {
  const std::vector<PhiTable> tables{make_table(phi, batch.n)};
  const auto accs = summarize<BbAcc>(batch, [&] {
    return BbAcc{&tables, std::vector<BbCounts>(tables.size()), -kInf};
  });
  return bb_report(accs, tables, batch.n, batch_params(batch));
}

VerificationReport ratio_limsup_check(const TrajectoryBatch& batch) {
  const auto accs = summarize<RatioAcc>(batch, [] { return RatioAcc{}; });
  return ratio_report(accs, batch.n, batch_params(batch));
}

// ---- streamed entry points ----

namespace {

std::size_t count_saturated(const std::vector<FinalAcc>& finals) {
  std::size_t s = 0;
  for (const auto& f : finals) s += f.last.saturated ? 1 : 0;
  return s;
}

}  // namespace

VerificationReport lln_check(std::uint64_t seed, const SuiteOptions& o) {
  const ChainSource source = o.source.value_or(ChainSource::kExactChain);
  const std::size_t n = pick(o.n, 10000), count = pick(o.count, 200);
  const auto finals =
      summarize<FinalAcc>(source, n, count, seed, o.workers, [] { return FinalAcc{}; });
  return lln_report(finals, n, chain_params(source, n, count, seed), count_saturated(finals));
}

VerificationReport clt_check(std::uint64_t seed, const SuiteOptions& o) {
  const ChainSource source = o.source.value_or(ChainSource::kExactChain);
  const std::size_t n = pick(o.n, 10000), count = pick(o.count, 10000);
  const auto finals =
      summarize<FinalAcc>(source, n, count, seed, o.workers, [] { return FinalAcc{}; });
  return clt_report(finals, n, chain_params(source, n, count, seed), count_saturated(finals));
}

VerificationReport lil_smoke(std::uint64_t seed, const SuiteOptions& o) {
  const ChainSource source = o.source.value_or(ChainSource::kExactChain);
  const std::size_t n = pick(o.n, kAsymptoticN), count = pick(o.count, 50);
  const auto accs = summarize<LilAcc>(source, n, count, seed, o.workers,
                                      [] { return LilAcc{LilNormalization::kIteratedLog}; });
  return lil_report(accs, n, chain_params(source, n, count, seed), LilNormalization::kIteratedLog);
}

VerificationReport borel_bernstein_check(std::uint64_t seed, const SuiteOptions& o) {
  const ChainSource source = o.source.value_or(ChainSource::kExactChain);
  const std::size_t n = pick(o.n, kAsymptoticN), count = pick(o.count, 200);
  std::vector<PhiFunction> phis = o.phis;
  if (phis.empty()) phis = {PhiFunction::power(1.0), PhiFunction::nlogpow(3.0)};
  std::vector<PhiTable> tables;
  for (const auto& phi : phis) tables.push_back(make_table(phi, n));
  const auto accs = summarize<BbAcc>(source, n, count, seed, o.workers, [&] {
    return BbAcc{&tables, std::vector<BbCounts>(tables.size()), -kInf};
  });
  return bb_report(accs, tables, n, chain_params(source, n, count, seed));
}

VerificationReport ratio_limsup_check(std::uint64_t seed, const SuiteOptions& o) {
  const ChainSource source = o.source.value_or(ChainSource::kExactChain);
  const std::size_t n = pick(o.n, kAsymptoticN), count = pick(o.count, 100);
  const auto accs =
      summarize<RatioAcc>(source, n, count, seed, o.workers, [] { return RatioAcc{}; });
  return ratio_report(accs, n, chain_params(source, n, count, seed));
}

VerificationReport yn_uniformity_check(std::uint64_t seed, const SuiteOptions& o) {
  const std::size_t n = pick(o.n, 5), count = pick(o.count, 10000);
  constexpr unsigned kDigits = 40;
  constexpr std::size_t kMaxK = 5;
  const CounterRng rng(seed, "yn");

  struct Sample {
    std::vector<double> y;
    std::vector<std::uint64_t> big_y;
  };
  std::vector<Sample> samples(count);
  parallel_for(
      count,
      [&](std::size_t i) {
        const CertifiedSample s = certified_sample(rng, i, kDigits, n, true);
        const DerivedSequences seq = derive_sequences(s.expansion, s.orbit);
        Sample& out = samples[i];
        for (std::size_t k = 0; k < n; ++k) {
          out.y.push_back(seq.y_values[k].to_double());
          const BigInt& yk = seq.Y_values[k];
          out.big_y.push_back(yk.fits_ulong_p() ? yk.get_ui() : ~std::uint64_t{0});
        }
      },
      o.workers);

  VerificationReport r;
  r.suite = "yn";
  r.params["source"] = "real";
  r.params["n"] = n;
  r.params["count"] = count;
  r.params["seed"] = seed;
  r.params["decimal_digits"] = kDigits;

  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> column;
    column.reserve(count);
    for (const auto& s : samples) column.push_back(s.y[k]);
    const double ks = ks_distance_uniform(std::move(column));
    r.add_check("KS y_" + std::to_string(k + 1) + " vs U(0,1)", ks, "< 0.03", ks < 0.03);
  }
  std::size_t y_one = 0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 1; j <= kMaxK; ++j) {
      const std::uint64_t threshold = 2 * j - 1;
      std::size_t hits = 0;
      for (const auto& s : samples) hits += s.big_y[k] >= threshold ? 1 : 0;
      const double p = 1.0 / static_cast<double>(threshold);
      const double f = share(hits, count);
      const double sigma = proportion_sigma(p, count);
      r.add_check("P(Y_" + std::to_string(k + 1) + " >= " + std::to_string(threshold) + ")", f,
                  "within 3 sigma (" + fmt(3 * sigma) + ") of 1/" + std::to_string(threshold),
                  std::abs(f - p) <= 3 * sigma);
    }
    for (const auto& s : samples) y_one += s.big_y[k] == 1 ? 1 : 0;
  }
  if (n >= 2) {
    std::size_t joint_y = 0, joint_small = 0;
    for (const auto& s : samples) {
      joint_y += (s.big_y[0] >= 3 && s.big_y[1] >= 3) ? 1 : 0;
      joint_small += (s.y[0] <= 1.0 / 3.0 && s.y[1] <= 1.0 / 5.0) ? 1 : 0;
    }
    const double f = share(joint_y, count);
    const double sigma = proportion_sigma(1.0 / 9.0, count);
    r.add_check("P(Y_1 >= 3, Y_2 >= 3)", f, "within 3 sigma (" + fmt(3 * sigma) + ") of 1/9",
                std::abs(f - 1.0 / 9.0) <= 3 * sigma);
    const double g = share(joint_small, count);
    const double sigma_g = proportion_sigma(1.0 / 15.0, count);
    r.add_check("P(y_1 <= 1/3, y_2 <= 1/5)", g, "within 3 sigma (" + fmt(3 * sigma_g) + ") of 1/15",
                std::abs(g - 1.0 / 15.0) <= 3 * sigma_g);
  }
  const double y_freq = share(y_one, count * n);
  r.add_check("frequency of Y_n = 1", y_freq, "within 0.02 of 2/3", std::abs(y_freq - 2.0 / 3.0) < 0.02);
  r.conclude();
  if (count < 10000 || n < 5) r.mark_inconclusive("needs count >= 10000 and n >= 5");
  return r;
}

VerificationReport empirical_pmf_check(std::span<const std::uint64_t> first_digits,
                                       std::size_t bins) {
  if (bins < 1) throw Error(ErrorCode::kOutOfDomain, "pmf check needs at least one bin");
  std::vector<std::uint64_t> observed(bins + 1, 0);
  for (const std::uint64_t d : first_digits) {
    if (d < 2 || d % 2 != 0) {
      throw Error(ErrorCode::kOutOfDomain, "first digits of reals are even and >= 2");
    }
    observed[std::min<std::uint64_t>(d / 2, bins + 1) - 1] += 1;
  }
  std::vector<double> probs;
  for (std::size_t k = 1; k <= bins; ++k) probs.push_back(initial_pmf(BigInt(static_cast<unsigned long>(k))).to_double());
  probs.push_back(1.0 / static_cast<double>(2 * bins + 1));
  const ChiSquareResult chi = chi_square_gof(observed, probs);

  VerificationReport r;
  r.suite = "pmf";
  r.params["count"] = first_digits.size();
  r.params["bins"] = bins;
  r.metrics["chi_square"] = chi.statistic;
  r.metrics["dof"] = chi.dof;
  nlohmann::ordered_json counts = nlohmann::ordered_json::array();
  for (const auto c : observed) counts.push_back(c);
  r.metrics["observed"] = counts;
  const double f2 = share(observed[0], first_digits.size());
  r.add_check("chi-square p-value of d_1 vs initial law", chi.p_value, "> 0.01", chi.p_value > 0.01);
  r.add_check("frequency of d_1 = 2", f2, "within 0.01 of 2/3", std::abs(f2 - 2.0 / 3.0) < 0.01);
  r.conclude();
  if (first_digits.size() < 100000) r.mark_inconclusive("needs count >= 100000");
  return r;
}

VerificationReport empirical_pmf_check(std::uint64_t seed, const SuiteOptions& o, std::size_t bins) {
  const std::size_t count = pick(o.count, 100000);
  constexpr unsigned kDigits = 20;
  const CounterRng rng(seed, "pmf");
  std::vector<std::uint64_t> first(count);
  parallel_for(
      count,
      [&](std::size_t i) {
        const CertifiedSample s = certified_sample(rng, i, kDigits, 1, false);
        first[i] = s.expansion.digits[0].get_ui();
      },
      o.workers);
  VerificationReport r = empirical_pmf_check(first, bins);
  r.params["source"] = "real";
  r.params["seed"] = seed;
  r.params["decimal_digits"] = kDigits;
  return r;
}

VerificationReport kernel_check(std::uint64_t seed, const SuiteOptions& o) {
  const ChainSource source = o.source.value_or(ChainSource::kSurrogateChain);
  const std::size_t count = pick(o.count, 100000);
  constexpr std::size_t kBins = 10;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs(count);
  parallel_for(
      count,
      [&](std::size_t i) {
        const Trajectory t = simulate_one(source, 2, seed, i);
        pairs[i] = {t.states[0].state, t.states[1].state};
      },
      o.workers);

  VerificationReport r;
  r.suite = "kernel";
  r.params = chain_params(source, 2, count, seed);
  for (const std::uint64_t k : {std::uint64_t{1}, std::uint64_t{2}}) {
    std::vector<std::uint64_t> observed(kBins + 1, 0);
    std::size_t from = 0;
    for (const auto& [d1, d2] : pairs) {
      if (d1 != 2 * k) continue;
      ++from;
      const std::uint64_t l = d2 / 2;
      observed[std::min<std::uint64_t>(l - k, kBins)] += 1;
    }
    const BigInt bk(static_cast<unsigned long>(k));
    std::vector<double> probs;
    for (std::size_t j = 0; j < kBins; ++j) {
      probs.push_back(transition_pmf(bk, BigInt(static_cast<unsigned long>(k + j))).to_double());
    }
    probs.push_back(
        (Rational(1) - transition_cdf(bk, BigInt(static_cast<unsigned long>(k + kBins - 1)))).to_double());
    const ChiSquareResult chi = chi_square_gof(observed, probs);
    const std::string tag = "from D_1 = " + std::to_string(2 * k);
    nlohmann::ordered_json m;
    m["conditioned_samples"] = from;
    m["chi_square"] = chi.statistic;
    m["dof"] = chi.dof;
    r.metrics[tag] = m;
    r.add_check("chi-square p-value " + tag, chi.p_value, "> 0.01", chi.p_value > 0.01);
    if (k == 1) {
      const double stay = share(observed[0], from);
      r.add_check("P(D_2 = 2 | D_1 = 2)", stay, "within 0.01 of 1/2", std::abs(stay - 0.5) < 0.01);
    }
  }
  r.conclude();
  return r;
}

VerificationReport repeat_check(std::uint64_t seed, const SuiteOptions& o) {
  const ChainSource source = o.source.value_or(ChainSource::kSurrogateChain);
  const std::size_t n = pick(o.n, 51), count = pick(o.count, 100000);

  struct RepeatAcc {
    std::vector<std::uint8_t> hit;
    void observe(std::size_t k, const ChainState* prev, const ChainState& cur) {
      if (prev != nullptr) hit[k - 2] = repeated(*prev, cur) ? 1 : 0;
    }
  };
  const std::size_t horizon = n > 1 ? n - 1 : 0;
  const auto accs = summarize<RepeatAcc>(source, n, count, seed, o.workers,
                                         [&] { return RepeatAcc{std::vector<std::uint8_t>(horizon, 0)}; });
  std::vector<std::size_t> totals(horizon, 0);
  for (const auto& a : accs) {
    for (std::size_t k = 0; k < horizon; ++k) totals[k] += a.hit[k];
  }
  auto freq = [&](std::size_t k) { return share(totals[k - 1], count); };

  VerificationReport r;
  r.suite = "repeat";
  r.params = chain_params(source, n, count, seed);
  nlohmann::ordered_json f = nlohmann::ordered_json::object();
  const std::vector<std::size_t> checkpoints{1, 2, 4, 8};
  for (std::size_t k : {1, 2, 4, 8, 16, 32, 50}) {
    if (k <= horizon) f["n=" + std::to_string(k)] = freq(k);
  }
  r.metrics["repeat_frequency"] = f;
  if (horizon >= 50) {
    std::size_t decreasing = 0;
    for (std::size_t i = 0; i + 1 < checkpoints.size(); ++i) {
      decreasing += freq(checkpoints[i + 1]) < freq(checkpoints[i]) ? 1 : 0;
    }
    r.add_check("decreasing steps across n = 1, 2, 4, 8", static_cast<double>(decreasing), "== 3",
                decreasing == checkpoints.size() - 1);
    r.add_check("frequency of D_51 = D_50", freq(50), "< 0.02", freq(50) < 0.02);
    r.conclude();
  } else {
    r.mark_inconclusive("needs n >= 51");
  }
  return r;
}

// ---- dispatch ----

std::vector<std::string_view> suite_names() {
  return {"lln", "clt", "lil", "bb", "ratio", "yn", "pmf", "kernel", "repeat"};
}

VerificationReport run_suite(std::string_view suite, std::uint64_t seed, const SuiteOptions& o) {
  if (suite == "all") {
    VerificationReport all;
    all.suite = "all";
    all.params["seed"] = seed;
    bool any_fail = false, any_inconclusive = false;
    for (const auto name : suite_names()) {
      const VerificationReport sub = run_suite(name, seed, o);
      all.metrics[std::string(name)] = to_json(sub);
      for (const auto& c : sub.checks) all.add_check(std::string(name) + ": " + c.name, c.value, c.gate, c.pass);
      any_fail = any_fail || sub.verdict == Verdict::kFail;
      any_inconclusive = any_inconclusive || sub.verdict == Verdict::kInconclusive;
    }
    all.verdict = any_fail ? Verdict::kFail : any_inconclusive ? Verdict::kInconclusive : Verdict::kPass;
    return all;
  }
  const std::uint64_t sub_seed = derive_seed(seed, suite);
  VerificationReport r;
  if (suite == "lln") {
    r = lln_check(sub_seed, o);
  } else if (suite == "clt") {
    r = clt_check(sub_seed, o);
  } else if (suite == "lil") {
    r = lil_smoke(sub_seed, o);
  } else if (suite == "bb") {
    r = borel_bernstein_check(sub_seed, o);
  } else if (suite == "ratio") {
    r = ratio_limsup_check(sub_seed, o);
  } else if (suite == "yn") {
    r = yn_uniformity_check(sub_seed, o);
  } else if (suite == "pmf") {
    r = empirical_pmf_check(sub_seed, o);
  } else if (suite == "kernel") {
    r = kernel_check(sub_seed, o);
  } else if (suite == "repeat") {
    r = repeat_check(sub_seed, o);
  } else {
    throw Error(ErrorCode::kParseError, "unknown suite '" + std::string(suite) + "'");
  }
  r.params["master_seed"] = seed;
  return r;
}

}  // namespace signed_engel
