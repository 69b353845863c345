#pragma once

// Rate-region generators for the diamond message set.
//
// Rate variables, in order: R_phibar, R_Kbar, R_(K-1)bar, R_(K-1.K)bar, named by
// the receiver set of each message (R_1234, R_123, R_124, R_12 for K=4).
// Row labels name the family and index, e.g. "th1.12/j1=1,j2=2".

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "lattice.hpp"
#include "network.hpp"

namespace groupcast {

enum class RegionKind {
  theorem1,
  split_rate_9d,
  corollary1,
  theorem2,
  three_degraded,
  two_degraded,
  theorem3,
  binning_split_11d,
  example_k4,
  outer,
};

inline const std::map<std::string, RegionKind>& region_kind_names() {
  static const std::map<std::string, RegionKind> names{
      {"theorem1", RegionKind::theorem1},     {"split9", RegionKind::split_rate_9d},
      {"corollary1", RegionKind::corollary1}, {"theorem2", RegionKind::theorem2},
      {"three-degraded", RegionKind::three_degraded}, {"two-degraded", RegionKind::two_degraded},
      {"theorem3", RegionKind::theorem3},     {"binning11", RegionKind::binning_split_11d},
      {"example-k4", RegionKind::example_k4}, {"outer", RegionKind::outer},
  };
  return names;
}

inline RegionKind parse_region_kind(const std::string& s) {
  const auto& names = region_kind_names();
  if (auto it = names.find(s); it != names.end()) return it->second;
  throw SchemaError("unknown region kind '" + s + "'");
}

// True for kinds generated from an InfoValuation rather than a network.
inline bool kind_takes_valuation(RegionKind k) {
  return k == RegionKind::theorem1 || k == RegionKind::split_rate_9d || k == RegionKind::theorem3 ||
         k == RegionKind::binning_split_11d;
}

namespace detail {

inline std::string jl(int j) { return "/j=" + std::to_string(j); }
inline std::string jl(int j1, int j2) { return "/j1=" + std::to_string(j1) + ",j2=" + std::to_string(j2); }

// Shorthand bundle for writing rows.
struct RateNames {
  std::string P, A, B, Q;  // phibar, (K-1)bar, Kbar, (K-1.K)bar
  std::string s1, s2, s3, s4, s5, tk, tkm1;
  explicit RateNames(const DiamondMessageSet& m)
      : P(m.r_all()), A(m.r_km1()), B(m.r_k()), Q(m.r_pair()),
        s1(m.s1()), s2(m.s2()), s3(m.s3()), s4(m.s4()), s5(m.s5()),
        tk(m.excess_k()), tkm1(m.excess_km1()) {}

  [[nodiscard]] std::vector<Term> all4(int w = 1) const { return {{P, w}, {A, w}, {B, w}, {Q, w}}; }
  [[nodiscard]] std::vector<Term> plus(std::vector<Term> t, const std::vector<Term>& more) const {
    t.insert(t.end(), more.begin(), more.end());
    return t;
  }
};

inline HPolytope rate_polytope(const DiamondMessageSet& m, const std::vector<std::string>& extra = {}) {
  auto vars = m.rate_names();
  vars.insert(vars.end(), extra.begin(), extra.end());
  return HPolytope(vars);
}

inline std::size_t jx(int j) { return static_cast<std::size_t>(j - 1); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Theorem 1: superposition + rate splitting inner bound at a valuation.

inline HPolytope theorem1_region(const InfoValuation& v) {
  v.validate();
  if (sgn(v.g) != 0) throw DomainError("theorem 1 rows assume a zero binning atom");
  const DiamondMessageSet m(v.K);
  const detail::RateNames n(m);
  auto poly = detail::rate_polytope(m);
  using detail::jl;
  using detail::jx;
  const int J = v.inner_count();

  poly.add({{n.P, 1}, {n.A, 1}}, v.a1, "th1.1");
  poly.add({{n.P, 1}, {n.B, 1}}, v.a2, "th1.2");
  poly.add({{n.P, 1}, {n.A, 1}, {n.B, 1}}, v.a3 + v.a1, "th1.3");
  poly.add({{n.P, 1}, {n.A, 1}, {n.B, 1}}, v.a4 + v.a2, "th1.4");
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.b[jx(j)], "th1.5" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.c[jx(j)] + v.a1, "th1.6" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.d[jx(j)] + v.a2, "th1.7" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.e[jx(j)] + v.a3 + v.a1, "th1.8" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.e[jx(j)] + v.a4 + v.a2, "th1.9" + jl(j));
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.P, 2}, {n.A, 1}, {n.B, 1}, {n.Q, 1}}, v.e[jx(j)] + v.a2 + v.a1, "th1.10" + jl(j));
  }
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.P, 2}, {n.A, 2}, {n.B, 2}, {n.Q, 1}}, v.f[jx(j)] + v.a2 + v.a1, "th1.11" + jl(j));
  }
  for (int j1 = 1; j1 <= J; ++j1) {
    for (int j2 = 1; j2 <= J; ++j2) {
      poly.add(n.all4(2), v.f[jx(j1)] + v.e[jx(j2)] + v.a2 + v.a1, "th1.12" + jl(j1, j2));
    }
  }
  poly.add_nonnegativity(m.rate_names());
  return poly;
}

// Original and split rates before projection (9 variables).
inline HPolytope split_rate_region(const InfoValuation& v) {
  v.validate();
  if (sgn(v.g) != 0) throw DomainError("the split-rate system assumes a zero binning atom");
  const DiamondMessageSet m(v.K);
  const detail::RateNames n(m);
  auto poly = detail::rate_polytope(m, m.split_names());
  using detail::jl;
  using detail::jx;
  const int J = v.inner_count();

  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.b[jx(j)], "split.1" + jl(j));
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.A, 1}, {n.B, 1}, {n.Q, 1}, {n.s1, -1}, {n.s2, -1}, {n.s5, -1}}, v.f[jx(j)], "split.2" + jl(j));
  }
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.B, 1}, {n.Q, 1}, {n.s2, -1}, {n.s4, -1}, {n.s5, -1}}, v.c[jx(j)], "split.3" + jl(j));
  }
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.A, 1}, {n.Q, 1}, {n.s1, -1}, {n.s3, -1}, {n.s5, -1}}, v.d[jx(j)], "split.4" + jl(j));
  }
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.Q, 1}, {n.s3, -1}, {n.s4, -1}, {n.s5, -1}}, v.e[jx(j)], "split.5" + jl(j));
  }
  poly.add({{n.P, 1}, {n.B, 1}, {n.s1, 1}, {n.s3, 1}, {n.s5, 1}}, v.a2, "split.6");
  poly.add({{n.B, 1}, {n.s2, -1}, {n.s3, 1}}, v.a3, "split.7");
  poly.add({{n.P, 1}, {n.A, 1}, {n.s2, 1}, {n.s4, 1}, {n.s5, 1}}, v.a1, "split.8");
  poly.add({{n.A, 1}, {n.s1, -1}, {n.s4, 1}}, v.a4, "split.9");

  poly.add({{n.Q, -1}, {n.s3, 1}, {n.s4, 1}, {n.s5, 1}}, 0, "split.pos1");
  poly.add({{n.s4, -1}}, 0, "split.pos2");
  poly.add({{n.s3, -1}}, 0, "split.pos3");
  poly.add({{n.s5, -1}}, 0, "split.pos4");
  poly.add({{n.B, -1}, {n.s2, 1}}, 0, "split.pos5");
  poly.add({{n.s2, -1}}, 0, "split.pos6");
  poly.add({{n.A, -1}, {n.s1, 1}}, 0, "split.pos7");
  poly.add({{n.s1, -1}}, 0, "split.pos8");
  poly.add_nonnegativity(m.rate_names());
  return poly;
}

// ---------------------------------------------------------------------------
// Intermediate systems of the five-step projection (after steps 2, 3, 4).
//
// The s4 <= ... row after step 3 is bounded by the conditional term given
// U_phibar,U_Kbar (it comes from pairing the (K-1.K)-split nonnegativity row
// with the step-2 row bounded by that term), and the second single-rate row
// after step 4 involves R_Kbar, mirroring its partner under the K-1 <-> K exchange.

inline HPolytope fme_step2_system(const InfoValuation& v) {
  v.validate();
  const DiamondMessageSet m(v.K);
  const detail::RateNames n(m);
  auto poly = detail::rate_polytope(m, {m.s3(), m.s4(), m.s5()});
  using detail::jl;
  using detail::jx;
  const int J = v.inner_count();
  auto with = [&](std::vector<Term> t, std::initializer_list<Term> more) { return n.plus(std::move(t), more); };

  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.d[jx(j)] + v.a2, "fme2.1" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.c[jx(j)] + v.a1, "fme2.2" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.b[jx(j)], "fme2.3" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add({{n.Q, 1}, {n.s5, -1}}, v.f[jx(j)], "fme2.4" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add({{n.Q, 1}, {n.s5, -1}, {n.s4, -1}}, v.c[jx(j)], "fme2.5" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add({{n.Q, 1}, {n.s5, -1}, {n.s3, -1}}, v.d[jx(j)], "fme2.6" + jl(j));
  poly.add({{n.s4, 1}}, v.a4, "fme2.7");
  poly.add({{n.s3, 1}}, v.a3, "fme2.8");
  poly.add({{n.P, 1}, {n.A, 1}, {n.s5, 1}, {n.s4, 1}}, v.a1, "fme2.9");
  poly.add({{n.P, 1}, {n.B, 1}, {n.s5, 1}, {n.s3, 1}}, v.a2, "fme2.10");
  for (int j = 1; j <= J; ++j) poly.add(with(n.all4(), {{n.s4, 1}}), v.f[jx(j)] + v.a1, "fme2.11" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(with(n.all4(), {{n.s3, 1}}), v.f[jx(j)] + v.a2, "fme2.12" + jl(j));
  const std::vector<Term> three_splits{{n.P, 1}, {n.A, 1}, {n.B, 1}, {n.s5, 1}, {n.s4, 1}, {n.s3, 1}};
  poly.add(three_splits, v.a3 + v.a1, "fme2.13");
  poly.add(three_splits, v.a4 + v.a2, "fme2.14");
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.Q, 1}, {n.s5, -1}, {n.s4, -1}, {n.s3, -1}}, v.e[jx(j)], "fme2.15" + jl(j));
  }
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.P, 2}, {n.A, 2}, {n.B, 2}, {n.Q, 1}, {n.s5, 1}, {n.s4, 1}, {n.s3, 1}}, v.f[jx(j)] + v.a2 + v.a1,
             "fme2.16" + jl(j));
  }
  poly.add({{n.Q, -1}, {n.s4, 1}, {n.s3, 1}, {n.s5, 1}}, 0, "fme2.17");
  poly.add({{n.s4, -1}}, 0, "fme2.18");
  poly.add({{n.s3, -1}}, 0, "fme2.19");
  poly.add({{n.s5, -1}}, 0, "fme2.20");
  poly.add_nonnegativity(m.rate_names());
  return poly;
}

inline HPolytope fme_step3_system(const InfoValuation& v) {
  v.validate();
  const DiamondMessageSet m(v.K);
  const detail::RateNames n(m);
  auto poly = detail::rate_polytope(m, {m.s4(), m.s5()});
  using detail::jl;
  using detail::jx;
  const int J = v.inner_count();
  auto with = [&](std::vector<Term> t, std::initializer_list<Term> more) { return n.plus(std::move(t), more); };

  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.d[jx(j)] + v.a2, "fme3.1" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.c[jx(j)] + v.a1, "fme3.2" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.b[jx(j)], "fme3.3" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.e[jx(j)] + v.a3 + v.a1, "fme3.4" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.e[jx(j)] + v.a4 + v.a2, "fme3.5" + jl(j));
  for (int j1 = 1; j1 <= J; ++j1) {
    for (int j2 = 1; j2 <= J; ++j2) {
      poly.add(n.all4(2), v.f[jx(j1)] + v.e[jx(j2)] + v.a2 + v.a1, "fme3.6" + jl(j1, j2));
    }
  }
  for (int j = 1; j <= J; ++j) poly.add({{n.Q, 1}, {n.s5, -1}}, v.f[jx(j)], "fme3.7" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add({{n.Q, 1}, {n.s5, -1}}, v.d[jx(j)] + v.a3, "fme3.8" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add({{n.Q, 1}, {n.s5, -1}, {n.s4, -1}}, v.c[jx(j)], "fme3.9" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add({{n.Q, 1}, {n.s5, -1}, {n.s4, -1}}, v.e[jx(j)] + v.a3, "fme3.10" + jl(j));
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.P, 1}, {n.B, 1}, {n.Q, 1}, {n.s4, -1}}, v.e[jx(j)] + v.a2, "fme3.11" + jl(j));
  }
  for (int j1 = 1; j1 <= J; ++j1) {
    for (int j2 = 1; j2 <= J; ++j2) {
      poly.add({{n.P, 1}, {n.A, 1}, {n.B, 1}, {n.Q, 2}, {n.s5, -1}, {n.s4, -1}},
               v.f[jx(j1)] + v.e[jx(j2)] + v.a2, "fme3.12" + jl(j1, j2));
    }
  }
  for (int j = 1; j <= J; ++j) poly.add({{n.s4, 1}}, v.d[jx(j)], "fme3.13" + jl(j));
  poly.add({{n.s4, 1}}, v.a4, "fme3.14");
  poly.add({{n.P, 1}, {n.B, 1}, {n.s5, 1}}, v.a2, "fme3.15");
  for (int j = 1; j <= J; ++j) poly.add(with(n.all4(), {{n.s4, 1}}), v.f[jx(j)] + v.a1, "fme3.16" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(with(n.all4(), {{n.s4, 1}}), v.d[jx(j)] + v.a3 + v.a1, "fme3.17" + jl(j));
  poly.add({{n.P, 1}, {n.A, 1}, {n.s5, 1}, {n.s4, 1}}, v.a1, "fme3.18");
  const std::vector<Term> two_splits{{n.P, 1}, {n.A, 1}, {n.B, 1}, {n.s5, 1}, {n.s4, 1}};
  poly.add(two_splits, v.a3 + v.a1, "fme3.19");
  poly.add(two_splits, v.a4 + v.a2, "fme3.20");
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.P, 2}, {n.A, 2}, {n.B, 2}, {n.Q, 1}, {n.s5, 1}, {n.s4, 1}}, v.f[jx(j)] + v.a2 + v.a1,
             "fme3.21" + jl(j));
  }
  poly.add({{n.Q, -1}, {n.s4, 1}, {n.s5, 1}}, 0, "fme3.22");
  poly.add({{n.s4, -1}}, 0, "fme3.23");
  poly.add({{n.s5, -1}}, 0, "fme3.24");
  poly.add_nonnegativity(m.rate_names());
  return poly;
}

inline HPolytope fme_step4_system(const InfoValuation& v) {
  v.validate();
  const DiamondMessageSet m(v.K);
  const detail::RateNames n(m);
  auto poly = detail::rate_polytope(m, {m.s5()});
  using detail::jl;
  using detail::jx;
  const int J = v.inner_count();

  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.d[jx(j)] + v.a2, "fme4.1" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.c[jx(j)] + v.a1, "fme4.2" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.b[jx(j)], "fme4.3" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.e[jx(j)] + v.a3 + v.a1, "fme4.4" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.e[jx(j)] + v.a4 + v.a2, "fme4.5" + jl(j));
  for (int j1 = 1; j1 <= J; ++j1) {
    for (int j2 = 1; j2 <= J; ++j2) {
      poly.add(n.all4(2), v.f[jx(j1)] + v.e[jx(j2)] + v.a2 + v.a1, "fme4.6" + jl(j1, j2));
    }
  }
  poly.add({{n.P, 1}, {n.A, 1}, {n.s5, 1}}, v.a1, "fme4.7");
  poly.add({{n.P, 1}, {n.B, 1}, {n.s5, 1}}, v.a2, "fme4.8");
  poly.add({{n.P, 1}, {n.A, 1}, {n.B, 1}, {n.s5, 1}}, v.a3 + v.a1, "fme4.9");
  poly.add({{n.P, 1}, {n.A, 1}, {n.B, 1}, {n.s5, 1}}, v.a4 + v.a2, "fme4.10");
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.P, 2}, {n.A, 1}, {n.B, 1}, {n.Q, 1}, {n.s5, 1}}, v.e[jx(j)] + v.a2 + v.a1, "fme4.11" + jl(j));
  }
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.P, 2}, {n.A, 2}, {n.B, 2}, {n.Q, 1}, {n.s5, 1}}, v.f[jx(j)] + v.a2 + v.a1, "fme4.12" + jl(j));
  }
  const std::vector<Term> tail{{n.Q, 1}, {n.s5, -1}};
  for (int j = 1; j <= J; ++j) poly.add(tail, v.f[jx(j)], "fme4.13" + jl(j));
  for (int j1 = 1; j1 <= J; ++j1) {
    for (int j2 = 1; j2 <= J; ++j2) poly.add(tail, v.c[jx(j1)] + v.d[jx(j2)], "fme4.14" + jl(j1, j2));
  }
  for (int j = 1; j <= J; ++j) poly.add(tail, v.c[jx(j)] + v.a4, "fme4.15" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(tail, v.d[jx(j)] + v.a3, "fme4.16" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(tail, v.e[jx(j)] + v.a3 + v.a4, "fme4.17" + jl(j));
  poly.add({{n.Q, -1}, {n.s5, 1}}, 0, "fme4.18");
  poly.add({{n.s5, -1}}, 0, "fme4.19");
  poly.add_nonnegativity(m.rate_names());
  return poly;
}

// ---------------------------------------------------------------------------
// Capacity regions of the combination network, kept symbolic in the C_S.

struct SymbolicRow {
  std::vector<Term> lhs;
  CapacityForm rhs;
  std::string label;
};

struct SymbolicRegion {
  std::vector<std::string> variables;
  std::vector<SymbolicRow> rows;

  [[nodiscard]] HPolytope instantiate(const CombinationNetwork& net, bool nonnegativity = true) const {
    HPolytope poly(variables);
    for (const auto& r : rows) poly.add(r.lhs, evaluate(r.rhs, net), r.label);
    if (nonnegativity) poly.add_nonnegativity(variables);
    return poly;
  }
};

namespace detail {

// Capacity forms that recur in the capacity region.
struct CapacityTerms {
  int K;
  DiamondMessageSet m;
  SetFamily P;
  explicit CapacityTerms(int K_) : K(K_), m(K_), P(SetFamily::power_set(K_)) {}

  [[nodiscard]] SetFamily W(int i) const { return receiver_family(i, P); }
  [[nodiscard]] CapacityForm CW(int i) const { return capacity_form(W(i)); }
  [[nodiscard]] CapacityForm down(int i, std::vector<ReceiverSet> tops) const {
    return capacity_form(down_closure(SetFamily(K, std::move(tops)), W(i)));
  }
  // C of the down-set in W_i generated by K-bar, (K-1)bar, (K-1.K)bar or both bars.
  [[nodiscard]] CapacityForm down_k(int i) const { return down(i, {m.no_k()}); }
  [[nodiscard]] CapacityForm down_km1(int i) const { return down(i, {m.no_km1()}); }
  [[nodiscard]] CapacityForm down_pair(int i) const { return down(i, {m.no_pair()}); }
  [[nodiscard]] CapacityForm down_both(int i) const { return down(i, {m.no_k(), m.no_km1()}); }
};

inline void require_capacity_K(int K) {
  require_receiver_count(K);
  if (K < 3) throw DomainError("the diamond message set needs K >= 3");
}

}  // namespace detail

inline SymbolicRegion theorem2_symbolic(int K) {
  detail::require_capacity_K(K);
  const detail::CapacityTerms t(K);
  const detail::RateNames n(t.m);
  SymbolicRegion r{t.m.rate_names(), {}};
  using detail::jl;
  const auto CK = t.CW(K), CKm1 = t.CW(K - 1);

  r.rows.push_back({{{n.P, 1}, {n.A, 1}}, CK, "th2.1"});
  r.rows.push_back({{{n.P, 1}, {n.B, 1}}, CKm1, "th2.2"});
  r.rows.push_back({{{n.P, 1}, {n.A, 1}, {n.B, 1}}, t.down_k(K - 1) + CK, "th2.3"});
  for (int j = 1; j <= K - 2; ++j) r.rows.push_back({n.all4(), t.CW(j), "th2.4" + jl(j)});
  for (int j = 1; j <= K - 2; ++j) {
    r.rows.push_back({{{n.P, 2}, {n.A, 1}, {n.B, 1}, {n.Q, 1}}, t.down_pair(j) + CKm1 + CK, "th2.5" + jl(j)});
  }
  for (int j = 1; j <= K - 2; ++j) {
    r.rows.push_back({{{n.P, 2}, {n.A, 2}, {n.B, 2}, {n.Q, 1}}, t.down_both(j) + CKm1 + CK, "th2.6" + jl(j)});
  }
  return r;
}

inline HPolytope theorem2_region(const CombinationNetwork& net) { return theorem2_symbolic(net.K()).instantiate(net); }

inline HPolytope corollary1_region(const CombinationNetwork& net) {
  detail::require_capacity_K(net.K());
  return theorem1_region(evaluate_optimal_distribution(net));
}

// The five row families shown redundant in the achievability argument.
inline SymbolicRegion redundant_families_symbolic(int K) {
  detail::require_capacity_K(K);
  const detail::CapacityTerms t(K);
  const detail::RateNames n(t.m);
  SymbolicRegion r{t.m.rate_names(), {}};
  using detail::jl;
  const auto CK = t.CW(K), CKm1 = t.CW(K - 1);
  const int J = K - 2;

  for (int j = 1; j <= J; ++j) r.rows.push_back({n.all4(), t.down_k(j) + CK, "red.1" + jl(j)});
  for (int j = 1; j <= J; ++j) r.rows.push_back({n.all4(), t.down_km1(j) + CKm1, "red.2" + jl(j)});
  for (int j = 1; j <= J; ++j) r.rows.push_back({n.all4(), t.down_pair(j) + t.down_k(K - 1) + CK, "red.3" + jl(j)});
  for (int j = 1; j <= J; ++j) r.rows.push_back({n.all4(), t.down_pair(j) + t.down_km1(K) + CKm1, "red.4" + jl(j)});
  for (int j1 = 1; j1 <= J; ++j1) {
    for (int j2 = 1; j2 <= J; ++j2) {
      r.rows.push_back({n.all4(2), t.down_both(j1) + t.down_pair(j2) + CKm1 + CK, "red.5" + jl(j1, j2)});
    }
  }
  return r;
}

inline HPolytope redundant_families(const CombinationNetwork& net) {
  return redundant_families_symbolic(net.K()).instantiate(net, false);
}

enum class Degraded { three, two };

// Three degraded messages: R_(K-1)bar = 0. Two: additionally R_Kbar = 0.
inline SymbolicRegion degraded_symbolic(int K, Degraded kind) {
  detail::require_capacity_K(K);
  const detail::CapacityTerms t(K);
  const detail::RateNames n(t.m);
  using detail::jl;
  const auto CK = t.CW(K), CKm1 = t.CW(K - 1);
  const bool three = kind == Degraded::three;

  SymbolicRegion r;
  r.variables = three ? std::vector<std::string>{n.P, n.B, n.Q} : std::vector<std::string>{n.P, n.Q};
  auto rates = [&](int p, int b, int q) {
    std::vector<Term> lhs{{n.P, p}};
    if (three) lhs.push_back({n.B, b});
    lhs.push_back({n.Q, q});
    return lhs;
  };
  r.rows.push_back({{{n.P, 1}}, CK, "deg.1"});
  if (three) {
    r.rows.push_back({{{n.P, 1}, {n.B, 1}}, CKm1, "deg.2"});
  } else {
    r.rows.push_back({{{n.P, 1}}, CKm1, "deg.2"});
  }
  for (int j = 1; j <= K - 2; ++j) r.rows.push_back({rates(1, 1, 1), t.CW(j), "deg.4" + jl(j)});
  for (int j = 1; j <= K - 2; ++j) r.rows.push_back({rates(2, 1, 1), t.down_pair(j) + CKm1 + CK, "deg.5" + jl(j)});
  if (three) {
    for (int j = 1; j <= K - 2; ++j) {
      r.rows.push_back({rates(2, 2, 1), t.down_both(j) + CKm1 + CK, "deg.6" + jl(j)});
    }
  }
  return r;
}

inline HPolytope degraded_region(const CombinationNetwork& net, Degraded kind) {
  return degraded_symbolic(net.K(), kind).instantiate(net);
}

// ---------------------------------------------------------------------------
// Theorem 3: with binning. Rows keep the -g terms even if the bound goes negative.

inline HPolytope theorem3_region(const InfoValuation& v) {
  v.validate();
  const DiamondMessageSet m(v.K);
  const detail::RateNames n(m);
  auto poly = detail::rate_polytope(m);
  using detail::jl;
  using detail::jx;
  const int J = v.inner_count();
  const Rational& g = v.g;
  const std::vector<Term> pab{{n.P, 1}, {n.A, 1}, {n.B, 1}};

  poly.add({{n.P, 1}, {n.A, 1}}, v.a1, "th3.1");
  poly.add({{n.P, 1}, {n.B, 1}}, v.a2, "th3.2");
  poly.add(pab, v.a3 + v.a1 - g, "th3.3");
  poly.add(pab, v.a4 + v.a2 - g, "th3.4");
  poly.add({{n.P, 2}, {n.A, 1}, {n.B, 1}}, v.a2 + v.a1 - g, "th3.5");
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.b[jx(j)], "th3.6" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.c[jx(j)] + v.a1, "th3.7" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.d[jx(j)] + v.a2, "th3.8" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.e[jx(j)] + v.a3 + v.a1 - g, "th3.9" + jl(j));
  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.e[jx(j)] + v.a4 + v.a2 - g, "th3.10" + jl(j));
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.P, 2}, {n.A, 1}, {n.B, 1}, {n.Q, 1}}, v.e[jx(j)] + v.a2 + v.a1 - g, "th3.11" + jl(j));
  }
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.P, 2}, {n.A, 2}, {n.B, 2}, {n.Q, 1}}, v.f[jx(j)] + v.a2 + v.a1 - g, "th3.12" + jl(j));
  }
  for (int j1 = 1; j1 <= J; ++j1) {
    for (int j2 = 1; j2 <= J; ++j2) {
      poly.add(n.all4(2), v.f[jx(j1)] + v.e[jx(j2)] + v.a2 + v.a1 - g, "th3.13" + jl(j1, j2));
    }
  }
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.P, 2}, {n.A, 1}, {n.B, 2}, {n.Q, 1}}, v.c[jx(j)] + v.a1 + v.a2 - g, "th3.14" + jl(j));
  }
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.P, 2}, {n.A, 2}, {n.B, 1}, {n.Q, 1}}, v.d[jx(j)] + v.a1 + v.a2 - g, "th3.15" + jl(j));
  }
  for (int j1 = 1; j1 <= J; ++j1) {
    for (int j2 = 1; j2 <= J; ++j2) {
      poly.add(n.all4(2), v.d[jx(j1)] + v.c[jx(j2)] + v.a1 + v.a2 - g, "th3.16" + jl(j1, j2));
    }
  }
  poly.add_nonnegativity(m.rate_names());
  return poly;
}

// 11 variables: rates, split rates, and the two excess rates.
inline HPolytope binning_split_region(const InfoValuation& v) {
  v.validate();
  const DiamondMessageSet m(v.K);
  const detail::RateNames n(m);
  auto extra = m.split_names();
  extra.push_back(m.excess_k());
  extra.push_back(m.excess_km1());
  auto poly = detail::rate_polytope(m, extra);
  using detail::jl;
  using detail::jx;
  const int J = v.inner_count();

  for (int j = 1; j <= J; ++j) poly.add(n.all4(), v.b[jx(j)], "bin.1" + jl(j));
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.A, 1}, {n.B, 1}, {n.Q, 1}, {n.s1, -1}, {n.s2, -1}, {n.s5, -1}}, v.f[jx(j)], "bin.2" + jl(j));
  }
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.B, 1}, {n.Q, 1}, {n.s2, -1}, {n.s4, -1}, {n.s5, -1}}, v.c[jx(j)], "bin.3" + jl(j));
  }
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.A, 1}, {n.Q, 1}, {n.s1, -1}, {n.s3, -1}, {n.s5, -1}}, v.d[jx(j)], "bin.4" + jl(j));
  }
  for (int j = 1; j <= J; ++j) {
    poly.add({{n.Q, 1}, {n.s3, -1}, {n.s4, -1}, {n.s5, -1}}, v.e[jx(j)], "bin.5" + jl(j));
  }
  poly.add({{n.s3, 1}, {n.B, 1}, {n.s2, -1}, {n.tk, -1}}, 0, "bin.excess.K");
  poly.add({{n.s4, 1}, {n.A, 1}, {n.s1, -1}, {n.tkm1, -1}}, 0, "bin.excess.K-1");
  poly.add({{n.s3, 1}, {n.s4, 1}, {n.B, 1}, {n.s2, -1}, {n.A, 1}, {n.s1, -1}, {n.tk, -1}, {n.tkm1, -1}}, -v.g,
           "bin.cover");
  poly.add({{n.P, 1}, {n.s1, 1}, {n.s2, 1}, {n.s5, 1}, {n.tk, 1}}, v.a2, "bin.dec.K-1.1");
  poly.add({{n.tk, 1}}, v.a3, "bin.dec.K-1.2");
  poly.add({{n.P, 1}, {n.s1, 1}, {n.s2, 1}, {n.s5, 1}, {n.tkm1, 1}}, v.a1, "bin.dec.K.1");
  poly.add({{n.tkm1, 1}}, v.a4, "bin.dec.K.2");

  poly.add({{n.Q, -1}, {n.s3, 1}, {n.s4, 1}, {n.s5, 1}}, 0, "bin.pos1");
  poly.add({{n.s4, -1}}, 0, "bin.pos2");
  poly.add({{n.s3, -1}}, 0, "bin.pos3");
  poly.add({{n.s5, -1}}, 0, "bin.pos4");
  poly.add({{n.B, -1}, {n.s2, 1}}, 0, "bin.pos5");
  poly.add({{n.s2, -1}}, 0, "bin.pos6");
  poly.add({{n.A, -1}, {n.s1, 1}}, 0, "bin.pos7");
  poly.add({{n.s1, -1}}, 0, "bin.pos8");
  poly.add({{n.tk, -1}}, 0, "bin.pos9");
  poly.add({{n.tkm1, -1}}, 0, "bin.pos10");
  poly.add_nonnegativity(m.rate_names());
  return poly;
}

// Order in which the five split rates are eliminated.
inline std::vector<std::string> split_elimination_order(int K) { return DiamondMessageSet(K).split_names(); }

}  // namespace groupcast
