#pragma once

// Verification pipelines: each one builds the regions involved, compares them
// by exact LP and records per-check outcomes with witnesses.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cutset.hpp"
#include "geometry.hpp"
#include "lattice.hpp"
#include "network.hpp"
#include "random.hpp"
#include "regions.hpp"

namespace groupcast {

struct CheckWitness {
  std::vector<std::string> variables;
  Point point;
  std::string violated_row;
  Rational lhs, rhs;
};

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  std::optional<CheckWitness> witness;
  nlohmann::json certificate;  // null unless the check produced one
  double millis = 0;
};

struct VerificationReport {
  std::string kind;
  int K = 0;
  std::optional<std::uint64_t> seed;
  nlohmann::json instance;  // network or valuation
  std::vector<Check> checks;

  [[nodiscard]] bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  [[nodiscard]] const Check* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

// Timing is left out unless asked for, so equal inputs give byte-identical output.
inline nlohmann::json to_json(const VerificationReport& r, bool include_timing = false) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json jc{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) jc["detail"] = c.detail;
    if (c.witness) {
      jc["witness"] = {{"point", point_to_json(c.witness->variables, c.witness->point)},
                       {"violated_row", c.witness->violated_row},
                       {"lhs", to_string(c.witness->lhs)},
                       {"rhs", to_string(c.witness->rhs)}};
    }
    if (!c.certificate.is_null()) jc["certificate"] = c.certificate;
    if (include_timing) jc["millis"] = c.millis;
    checks.push_back(std::move(jc));
  }
  nlohmann::json j{{"kind", r.kind}, {"K", r.K}, {"pass", r.pass()}, {"instance", r.instance}, {"checks", checks}};
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

namespace detail {

template <class F>
Check timed(const std::string& name, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Check c = body();
  c.name = name;
  c.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

inline Check containment_check(const HPolytope& outer, const HPolytope& inner) {
  Check c;
  const auto res = check_containment(outer, inner);
  c.pass = res.contained;
  if (res.witness) {
    const auto& w = *res.witness;
    c.witness = CheckWitness{outer.variables, w.point, w.row_label, w.lhs, w.rhs};
    c.detail = "point of the inner region violates " + format_row(outer, outer.rows[w.row_index]);
  }
  return c;
}

inline void add_equality_checks(VerificationReport& rep, const std::string& prefix, const std::string& a_name,
                                const HPolytope& a, const std::string& b_name, const HPolytope& b) {
  rep.checks.push_back(timed(prefix + ":" + b_name + "<=" + a_name, [&] { return containment_check(a, b); }));
  rep.checks.push_back(timed(prefix + ":" + a_name + "<=" + b_name, [&] { return containment_check(b, a); }));
}

// Every row of `rows` must be implied by `poly`.
inline Check redundancy_check(const HPolytope& rows_any, const HPolytope& poly) {
  Check c;
  c.pass = true;
  const auto rows = reorder(rows_any, poly.variables);
  for (const auto& r : rows.rows) {
    const auto lp = solve_lp(poly, r.coeffs);
    if (lp.status == LpStatus::infeasible || (lp.status == LpStatus::optimal && lp.value <= r.rhs)) continue;
    c.pass = false;
    CheckWitness w{poly.variables, lp.point, r.label, Rational(0), r.rhs};
    if (lp.status == LpStatus::unbounded) {
      Rational t = (r.rhs - r.eval(lp.point)) / r.eval(lp.ray);
      if (sgn(t) < 0) t = 0;
      t += 1;
      for (std::size_t k = 0; k < w.point.size(); ++k) w.point[k] += t * lp.ray[k];
    }
    w.lhs = r.eval(w.point);
    c.witness = std::move(w);
    c.detail = "row " + r.label + " is not implied";
    return c;
  }
  c.detail = std::to_string(rows.rows.size()) + " rows implied";
  return c;
}

inline HPolytope rows_with_prefix(const HPolytope& poly, const std::string& prefix) {
  HPolytope out(poly.variables);
  for (const auto& r : poly.rows) {
    if (r.label.rfind(prefix, 0) == 0) out.rows.push_back(r);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Capacity region: inner bound of the combination network vs. the cut-set outer bound.

inline VerificationReport verify_capacity(const CombinationNetwork& net) {
  VerificationReport rep{"capacity", net.K(), std::nullopt, to_json(net), {}};
  const auto inner = corollary1_region(net);
  const auto outer = outer_region(net);
  detail::add_equality_checks(rep, "capacity", "outer", outer, "corollary1", inner);
  rep.checks.push_back(detail::timed("redundant-families", [&] {
    return detail::redundancy_check(redundant_families(net), inner);
  }));
  rep.checks.push_back(detail::timed("outer-rows-match-theorem2", [&] {
    Check c;
    const auto t2 = theorem2_symbolic(net.K()), ob = outer_symbolic(net.K());
    c.pass = t2.rows.size() == ob.rows.size();
    for (std::size_t i = 0; c.pass && i < t2.rows.size(); ++i) {
      HPolytope a(t2.variables), b(ob.variables);
      a.add(t2.rows[i].lhs, 0);
      b.add(ob.rows[i].lhs, 0);
      const bool same = reorder(b, a.variables).rows[0].coeffs == a.rows[0].coeffs && t2.rows[i].rhs == ob.rows[i].rhs;
      if (!same) {
        c.pass = false;
        c.detail = "row " + t2.rows[i].label + " differs from " + ob.rows[i].label;
      }
    }
    return c;
  }));
  return rep;
}

// ---------------------------------------------------------------------------
// Five-step projection of the split-rate polytope.

struct FmeTrace {
  std::vector<HPolytope> states;  // after steps 1..5
};

inline FmeTrace fme_trace(const InfoValuation& v, std::size_t steps = 5) {
  FmeTrace t;
  HPolytope p = split_rate_region(v);
  const auto order = split_elimination_order(v.K);
  for (std::size_t s = 0; s < steps && s < order.size(); ++s) {
    p = fme_eliminate(p, order[s]);
    t.states.push_back(p);
  }
  return t;
}

inline VerificationReport fme_pipeline(const InfoValuation& v, bool check_intermediates) {
  VerificationReport rep{"fme", v.K, std::nullopt, to_json(v), {}};
  const auto trace = fme_trace(v);
  for (std::size_t s = 0; s < trace.states.size(); ++s) {
    rep.checks.push_back({"rows-after-step-" + std::to_string(s + 1), true,
                          std::to_string(trace.states[s].rows.size()) + " rows", std::nullopt, nullptr, 0});
  }
  if (check_intermediates) {
    const std::vector<std::pair<std::size_t, HPolytope>> reference{
        {2, fme_step2_system(v)}, {3, fme_step3_system(v)}, {4, fme_step4_system(v)}};
    for (const auto& [step, sys] : reference) {
      detail::add_equality_checks(rep, "step" + std::to_string(step), "pipeline", trace.states[step - 1], "reference",
                                  sys);
    }
    const auto mirror = fme_trace(v.swapped(), 4);
    const auto swap = DiamondMessageSet(v.K).swap_map();
    for (std::size_t step : {2U, 4U}) {
      detail::add_equality_checks(rep, "symmetry-step" + std::to_string(step), "pipeline", trace.states[step - 1],
                                  "exchanged", rename(mirror.states[step - 1], swap));
    }
  }
  detail::add_equality_checks(rep, "final", "theorem1", theorem1_region(v), "projection", trace.states.back());
  return rep;
}

// ---------------------------------------------------------------------------
// Theorem 3 without binning.

// Checks that `target` equals the weighted sum of `parts` in its coefficients and
// that the summed bound does not exceed the target bound.
inline bool certify_combination(const HPolytope& poly, const std::string& target,
                                const std::vector<std::pair<Rational, std::string>>& parts, nlohmann::json& out) {
  auto row_of = [&](const std::string& label) -> const LinearInequality& {
    for (const auto& r : poly.rows) {
      if (r.label == label) return r;
    }
    throw DomainError("no row labelled " + label);
  };
  const auto& t = row_of(target);
  std::vector<Rational> sum(poly.dim());
  Rational rhs;
  nlohmann::json combo = nlohmann::json::array();
  for (const auto& [lambda, label] : parts) {
    if (sgn(lambda) < 0) return false;
    const auto& r = row_of(label);
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += lambda * r.coeffs[k];
    rhs += lambda * r.rhs;
    combo.push_back({{"row", label}, {"multiplier", to_string(lambda)}});
  }
  const bool ok = sum == t.coeffs && rhs <= t.rhs;
  out.push_back({{"row", target}, {"combination", combo}, {"valid", ok}});
  return ok;
}

inline VerificationReport verify_binning_reduction(const InfoValuation& v_in) {
  InfoValuation v = v_in;
  v.g = 0;
  VerificationReport rep{"binning", v.K, std::nullopt, to_json(v), {}};
  const auto t3 = theorem3_region(v), t1 = theorem1_region(v);
  detail::add_equality_checks(rep, "binning", "theorem1", t1, "theorem3", t3);
  rep.checks.push_back(detail::timed("certificates", [&] {
    Check c;
    c.pass = true;
    c.certificate = nlohmann::json::array();
    using detail::jl;
    c.pass &= certify_combination(t3, "th3.5", {{1, "th3.1"}, {1, "th3.2"}}, c.certificate);
    for (int j = 1; j <= v.K - 2; ++j) {
      c.pass &= certify_combination(t3, "th3.14" + jl(j), {{1, "th3.7" + jl(j)}, {1, "th3.2"}}, c.certificate);
      c.pass &= certify_combination(t3, "th3.15" + jl(j), {{1, "th3.8" + jl(j)}, {1, "th3.1"}}, c.certificate);
    }
    for (int j1 = 1; j1 <= v.K - 2; ++j1) {
      for (int j2 = 1; j2 <= v.K - 2; ++j2) {
        c.pass &= certify_combination(t3, "th3.16" + jl(j1, j2), {{1, "th3.8" + jl(j1)}, {1, "th3.7" + jl(j2)}},
                                      c.certificate);
      }
    }
    return c;
  }));
  return rep;
}

// ---------------------------------------------------------------------------
// Example 1: the K=4 capacity region written out link by link.

struct ExampleRow {
  std::vector<std::pair<std::string, int>> rates;
  std::vector<std::pair<std::string, int>> links;
};

// Coefficients as listed for the four-receiver network.
inline const std::vector<ExampleRow>& example_k4_table() {
  static const std::vector<ExampleRow> rows{
      {{{"1234", 1}, {"124", 1}},
       {{"4", 1}, {"14", 1}, {"24", 1}, {"34", 1}, {"124", 1}, {"134", 1}, {"234", 1}, {"1234", 1}}},
      {{{"1234", 1}, {"123", 1}},
       {{"3", 1}, {"13", 1}, {"23", 1}, {"34", 1}, {"123", 1}, {"134", 1}, {"234", 1}, {"1234", 1}}},
      {{{"1234", 1}, {"124", 1}, {"123", 1}},
       {{"3", 1}, {"4", 1}, {"13", 1}, {"14", 1}, {"23", 1}, {"24", 1}, {"34", 1}, {"123", 1}, {"124", 1}, {"134", 1},
        {"234", 1}, {"1234", 1}}},
      {{{"1234", 1}, {"124", 1}, {"123", 1}, {"12", 1}},
       {{"1", 1}, {"12", 1}, {"13", 1}, {"14", 1}, {"123", 1}, {"124", 1}, {"134", 1}, {"1234", 1}}},
      {{{"1234", 1}, {"124", 1}, {"123", 1}, {"12", 1}},
       {{"2", 1}, {"12", 1}, {"23", 1}, {"24", 1}, {"123", 1}, {"124", 1}, {"234", 1}, {"1234", 1}}},
      {{{"1234", 2}, {"124", 1}, {"123", 1}, {"12", 1}},
       {{"1", 1}, {"3", 1}, {"4", 1}, {"12", 1}, {"13", 1}, {"14", 1}, {"23", 1}, {"24", 1}, {"34", 2}, {"123", 1},
        {"124", 1}, {"134", 2}, {"234", 2}, {"1234", 2}}},
      {{{"1234", 2}, {"124", 1}, {"123", 1}, {"12", 1}},
       {{"2", 1}, {"3", 1}, {"4", 1}, {"12", 1}, {"13", 1}, {"14", 1}, {"23", 1}, {"24", 1}, {"34", 2}, {"123", 1},
        {"124", 1}, {"134", 2}, {"234", 2}, {"1234", 2}}},
      {{{"1234", 2}, {"124", 2}, {"123", 2}, {"12", 1}},
       {{"1", 1}, {"3", 1}, {"4", 1}, {"12", 1}, {"13", 2}, {"14", 2}, {"23", 1}, {"24", 1}, {"34", 2}, {"123", 2},
        {"124", 2}, {"134", 2}, {"234", 2}, {"1234", 2}}},
      {{{"1234", 2}, {"124", 2}, {"123", 2}, {"12", 1}},
       {{"2", 1}, {"3", 1}, {"4", 1}, {"12", 1}, {"13", 1}, {"14", 1}, {"23", 2}, {"24", 2}, {"34", 2}, {"123", 2},
        {"124", 2}, {"134", 2}, {"234", 2}, {"1234", 2}}},
  };
  return rows;
}

struct ExampleMatch {
  std::size_t matched = 0, expected = 0, generated = 0;
  std::vector<std::string> lines;  // one per table row: "row 1 <-> th2.1"
  std::vector<Rational> unit_rhs;  // bounds at unit capacities, table order
};

inline ExampleMatch match_example_k4() {
  const auto sym = theorem2_symbolic(4);
  const auto& table = example_k4_table();
  ExampleMatch m;
  m.expected = table.size();
  m.generated = sym.rows.size();
  std::vector<bool> used(sym.rows.size(), false);
  const auto unit = CombinationNetwork::uniform(4, 1);
  for (std::size_t t = 0; t < table.size(); ++t) {
    std::map<std::string, Rational> rates;
    for (const auto& [name, q] : table[t].rates) rates["R_" + name] = q;
    CapacityForm links;
    for (const auto& [name, q] : table[t].links) links[ReceiverSet::parse(name)] += q;
    m.unit_rhs.push_back(evaluate(links, unit));
    std::string hit = "unmatched";
    for (std::size_t s = 0; s < sym.rows.size(); ++s) {
      if (used[s]) continue;
      std::map<std::string, Rational> gen;
      for (const auto& [name, q] : sym.rows[s].lhs) gen[name] += q;
      if (gen == rates && sym.rows[s].rhs == links) {
        used[s] = true;
        ++m.matched;
        hit = sym.rows[s].label;
        break;
      }
    }
    m.lines.push_back("row " + std::to_string(t + 1) + " <-> " + hit);
  }
  return m;
}

inline VerificationReport verify_example_k4() {
  VerificationReport rep{"example-k4", 4, std::nullopt, nlohmann::json::object(), {}};
  rep.checks.push_back(detail::timed("nine-row-match", [] {
    Check c;
    const auto m = match_example_k4();
    c.pass = m.matched == m.expected && m.generated == m.expected;
    c.detail = std::to_string(m.matched) + "/" + std::to_string(m.expected) + " rows matched";
    nlohmann::json rhs = nlohmann::json::array();
    for (const auto& q : m.unit_rhs) rhs.push_back(to_string(q));
    c.certificate = {{"pairing", m.lines}, {"unit_capacity_rhs", rhs}};
    return c;
  }));
  return rep;
}

// ---------------------------------------------------------------------------
// Degraded message sets.

inline VerificationReport verify_degraded_specializations(const CombinationNetwork& net) {
  const int K = net.K();
  VerificationReport rep{"degraded", K, std::nullopt, to_json(net), {}};
  const DiamondMessageSet m(K);
  const auto three = degraded_region(net, Degraded::three);
  const auto two = degraded_region(net, Degraded::two);
  const auto t2 = theorem2_region(net);

  const auto t2_three = fix_variable(t2, m.r_km1(), 0);
  const auto t2_two = fix_variable(t2_three, m.r_k(), 0);
  detail::add_equality_checks(rep, "three", "theorem2-slice", t2_three, "degraded", three);
  detail::add_equality_checks(rep, "two", "theorem2-slice", t2_two, "degraded", two);

  rep.checks.push_back(detail::timed("three:theorem2-row3-redundant", [&] {
    return detail::redundancy_check(detail::rows_with_prefix(t2_three, "th2.3"), three);
  }));
  rep.checks.push_back(detail::timed("two:three-row6-redundant", [&] {
    const auto sliced = fix_variable(degraded_symbolic(K, Degraded::three).instantiate(net), m.r_k(), 0);
    return detail::redundancy_check(detail::rows_with_prefix(sliced, "deg.6"), two);
  }));
  return rep;
}

// ---------------------------------------------------------------------------
// Integer-point oracle: no LP involved.

inline std::vector<std::vector<long>> integer_points(const HPolytope& poly, const std::vector<long>& upper) {
  std::vector<std::vector<long>> pts;
  const std::size_t d = poly.dim();
  std::vector<long> x(d, 0);
  Point q(d);
  for (;;) {
    for (std::size_t k = 0; k < d; ++k) q[k] = x[k];
    if (poly.satisfies(q)) pts.push_back(x);
    std::size_t k = 0;
    while (k < d && x[k] == upper[k]) x[k++] = 0;
    if (k == d) break;
    ++x[k];
  }
  return pts;
}

inline Check grid_oracle_check(const CombinationNetwork& net) {
  Check c;
  c.name = "grid-oracle";
  const auto t2 = theorem2_region(net);
  const auto outer = reorder(outer_region(net), t2.variables);
  // Every rate appears in each per-j cut-set row, so C_{W_1} bounds all of them.
  const auto cap = capacity_sum(net, receiver_family(1, net.K()));
  const mpz_class whole = cap.get_num() / cap.get_den();
  const long box = whole.get_si();
  const std::vector<long> upper(t2.dim(), box);
  const auto a = integer_points(t2, upper), b = integer_points(outer, upper);
  c.pass = a == b;
  c.detail = std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " integer points";
  return c;
}

// ---------------------------------------------------------------------------
// Campaigns

enum class CampaignKind { capacity, fme, binning, degraded };

inline CampaignKind parse_campaign_kind(const std::string& s) {
  if (s == "capacity") return CampaignKind::capacity;
  if (s == "fme") return CampaignKind::fme;
  if (s == "binning") return CampaignKind::binning;
  if (s == "degraded") return CampaignKind::degraded;
  throw SchemaError("unknown campaign kind '" + s + "'");
}

struct CampaignSpec {
  CampaignKind kind = CampaignKind::capacity;
  int kmin = 3, kmax = 3;
  int count = 50;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool check_intermediates = false;
};

inline std::uint64_t instance_seed(std::uint64_t seed, int K, int index) {
  return derive_seed(derive_seed(seed, static_cast<std::uint64_t>(K)), static_cast<std::uint64_t>(index));
}

inline VerificationReport run_instance(const CampaignSpec& spec, int K, int index) {
  const auto s = instance_seed(spec.seed, K, index);
  Rng rng(s);
  VerificationReport rep;
  switch (spec.kind) {
    case CampaignKind::capacity:
      rep = verify_capacity(random_network(K, rng));
      break;
    case CampaignKind::fme:
      rep = fme_pipeline(evaluate_optimal_distribution(random_network(K, rng)), spec.check_intermediates);
      break;
    case CampaignKind::binning:
      // Even indices: unrelated atoms; odd: combination-network atoms.
      rep = verify_binning_reduction(index % 2 == 0 ? random_valuation(K, rng)
                                                    : evaluate_optimal_distribution(random_network(K, rng)));
      break;
    case CampaignKind::degraded:
      rep = verify_degraded_specializations(random_network(K, rng));
      break;
  }
  rep.seed = s;
  return rep;
}

// Instances are ordered by (K, index); workers pull the next index and write
// into its slot, so the output order never depends on scheduling.
inline std::vector<VerificationReport> run_campaign(const CampaignSpec& spec,
                                                    const std::function<void(std::size_t, const VerificationReport&)>&
                                                        progress = {}) {
  if (spec.kmin < 3 || spec.kmax < spec.kmin) throw DomainError("campaign needs 3 <= kmin <= kmax");
  if (spec.kmax > kMaxReceivers) throw CapabilityError("K > 16 not supported");
  std::vector<std::pair<int, int>> work;
  for (int K = spec.kmin; K <= spec.kmax; ++K) {
    for (int i = 0; i < spec.count; ++i) work.emplace_back(K, i);
  }
  std::vector<VerificationReport> out(work.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mu;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= work.size()) return;
      try {
        out[i] = run_instance(spec, work[i].first, work[i].second);
      } catch (...) {
        const std::lock_guard lock(progress_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
      if (progress) {
        const std::lock_guard lock(progress_mu);
        progress(i, out[i]);
      }
    }
  };
  const unsigned n = std::max(1U, spec.jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

// instance,check,pass,millis
inline std::string csv_summary(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "instance,check,pass,millis\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (const auto& c : reports[i].checks) {
      os << reports[i].kind << "-K" << reports[i].K << "-" << i << "," << c.name << "," << (c.pass ? "1" : "0") << ","
         << c.millis << "\n";
    }
  }
  return os.str();
}

}  // namespace groupcast
