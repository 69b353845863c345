#pragma once

// Generalized cut-set bounds: set-operator expressions over the receiver
// families, their rate and capacity evaluations, the three extremal
// inequalities, and the resulting outer bound.

#include <bit>
#include <functional>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "lattice.hpp"
#include "network.hpp"
#include "random.hpp"
#include "regions.hpp"

namespace groupcast {

// Expression tree over placeholders W_1..W_K.
class SetExpr {
 public:
  enum class Op { leaf, unite, intersect };

  static SetExpr leaf(int i) {
    if (i < 1) throw DomainError("leaf index must be positive");
    SetExpr e;
    e.leaf_ = i;
    return e;
  }
  static SetExpr unite(std::vector<SetExpr> args) { return node(Op::unite, std::move(args)); }
  static SetExpr intersect(std::vector<SetExpr> args) { return node(Op::intersect, std::move(args)); }

  [[nodiscard]] Op op() const { return op_; }
  [[nodiscard]] int leaf_index() const { return leaf_; }
  [[nodiscard]] const std::vector<SetExpr>& args() const { return args_; }

  // families[i-1] stands for W_i.
  [[nodiscard]] SetFamily eval(const std::vector<SetFamily>& families) const {
    if (op_ == Op::leaf) {
      if (leaf_ > static_cast<int>(families.size())) {
        throw DomainError("leaf W_" + std::to_string(leaf_) + " outside the " + std::to_string(families.size()) +
                          " supplied families");
      }
      return families[static_cast<std::size_t>(leaf_ - 1)];
    }
    SetFamily acc = args_.front().eval(families);
    for (std::size_t k = 1; k < args_.size(); ++k) {
      const auto next = args_[k].eval(families);
      acc = op_ == Op::unite ? (acc | next) : (acc & next);
    }
    return acc;
  }

  [[nodiscard]] std::string to_string() const {
    if (op_ == Op::leaf) return "W" + std::to_string(leaf_);
    std::string s = "(";
    for (std::size_t k = 0; k < args_.size(); ++k) {
      if (k) s += op_ == Op::unite ? " u " : " n ";
      s += args_[k].to_string();
    }
    return s + ")";
  }

 private:
  static SetExpr node(Op op, std::vector<SetExpr> args) {
    if (args.empty()) throw DomainError("set operator needs at least one argument");
    SetExpr e;
    e.op_ = op;
    e.args_ = std::move(args);
    return e;
  }

  Op op_ = Op::leaf;
  int leaf_ = 1;
  std::vector<SetExpr> args_;
};

inline SetExpr operator|(SetExpr a, SetExpr b) { return SetExpr::unite({std::move(a), std::move(b)}); }
inline SetExpr operator&(SetExpr a, SetExpr b) { return SetExpr::intersect({std::move(a), std::move(b)}); }

inline SetFamily eval_set_expr(const SetExpr& e, const std::vector<SetFamily>& families) { return e.eval(families); }

inline nlohmann::json to_json(const SetExpr& e) {
  if (e.op() == SetExpr::Op::leaf) return {{"leaf", e.leaf_index()}};
  nlohmann::json args = nlohmann::json::array();
  for (const auto& a : e.args()) args.push_back(to_json(a));
  return {{"op", e.op() == SetExpr::Op::unite ? "union" : "intersection"}, {"args", args}};
}

inline SetExpr set_expr_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("leaf")) return SetExpr::leaf(j.at("leaf").get<int>());
    const auto op = j.at("op").get<std::string>();
    std::vector<SetExpr> args;
    for (const auto& a : j.at("args")) args.push_back(set_expr_from_json(a));
    if (op == "union") return SetExpr::unite(std::move(args));
    if (op == "intersection") return SetExpr::intersect(std::move(args));
    throw SchemaError("unknown set operator '" + op + "'");
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("set expression JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw SchemaError(std::string("set expression JSON: ") + e.what());
  }
}

// sum_i alpha_i * (quantity over Phi_i).
struct GcsBound {
  std::vector<std::pair<Rational, SetExpr>> terms;

  GcsBound() = default;
  GcsBound(std::initializer_list<std::pair<Rational, SetExpr>> t) : terms(t) {
    for (const auto& [a, e] : terms) {
      if (sgn(a) < 0) throw DomainError("cut-set weights must be nonnegative");
    }
  }
};

inline std::vector<SetFamily> receiver_families(const SetFamily& base) {
  std::vector<SetFamily> out;
  for (int i = 1; i <= base.K(); ++i) out.push_back(receiver_family(i, base));
  return out;
}

// Rate side: sum_i alpha_i * sum of R_S over the messages S in Phi_i(W_1^E, ..., W_K^E).
inline std::map<std::string, Rational> gcs_rate_lhs(const GcsBound& bound, const DiamondMessageSet& msg) {
  const auto W = receiver_families(msg.family());
  std::map<std::string, Rational> lhs;
  for (const auto& [alpha, expr] : bound.terms) {
    if (sgn(alpha) == 0) continue;
    for (const auto& S : expr.eval(W)) lhs[DiamondMessageSet::rate_name(S)] += alpha;
  }
  return lhs;
}

// Capacity side, kept as a linear form in the C_S.
inline CapacityForm gcs_capacity_form(const GcsBound& bound, int K) {
  const auto W = receiver_families(SetFamily::power_set(K));
  CapacityForm f;
  for (const auto& [alpha, expr] : bound.terms) {
    if (sgn(alpha) != 0) f += capacity_form(expr.eval(W), alpha);
  }
  return f;
}

inline Rational gcs_capacity_rhs(const GcsBound& bound, const CombinationNetwork& net) {
  return evaluate(gcs_capacity_form(bound, net.K()), net);
}

// ---------------------------------------------------------------------------
// Set functions on families

struct SubmodularFn {
  int K = 0;
  std::string name;
  std::function<Rational(const SetFamily&)> f;
  bool modular = false;

  Rational operator()(const SetFamily& w) const { return f(w); }
};

inline SubmodularFn modular_capacity_fn(const CombinationNetwork& net) {
  return {net.K(), "capacity-sum", [net](const SetFamily& w) { return capacity_sum(net, w); }, true};
}

// f(W) = |union of g(S) over S in W| with g(S) a random subset of a 64-element ground set.
inline SubmodularFn coverage_fn(int K, Rng& rng) {
  std::vector<std::uint64_t> g(std::size_t{1} << K);
  const auto density = uniform_int(rng, 1, 4);  // each ground element kept with prob 1/2^density
  for (auto& mask : g) {
    mask = ~std::uint64_t{0};
    for (int k = 0; k < density; ++k) mask &= rng();
  }
  return {K, "coverage", [g](const SetFamily& w) {
            std::uint64_t u = 0;
            for (const auto& S : w) u |= g[S.bits()];
            return Rational(std::popcount(u));
          }};
}

inline SubmodularFn truncated_cardinality_fn(int K, int t) {
  return {K, "truncated-cardinality(" + std::to_string(t) + ")",
          [t](const SetFamily& w) { return Rational(std::min<long>(static_cast<long>(w.size()), t)); }};
}

// Rank of a partition matroid: each member belongs to one of `blocks` classes with a capacity.
inline SubmodularFn partition_rank_fn(int K, Rng& rng) {
  const int blocks = static_cast<int>(uniform_int(rng, 1, 5));
  std::vector<int> cls(std::size_t{1} << K), cap(static_cast<std::size_t>(blocks));
  for (auto& c : cls) c = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(blocks)));
  for (auto& c : cap) c = static_cast<int>(uniform_int(rng, 0, 6));
  return {K, "partition-rank", [cls, cap](const SetFamily& w) {
            std::vector<int> count(cap.size(), 0);
            for (const auto& S : w) ++count[static_cast<std::size_t>(cls[S.bits()])];
            long r = 0;
            for (std::size_t b = 0; b < cap.size(); ++b) r += std::min(count[b], cap[b]);
            return Rational(r);
          }};
}

// Exhaustive check of f(A)+f(B) >= f(A u B)+f(A n B) over all pairs of
// families of P. Only practical for K <= 2 (15 members of P would need 2^15 families).
inline bool is_submodular_exhaustive(const SubmodularFn& fn) {
  const auto P = SetFamily::power_set(fn.K);
  if (P.size() > 4) throw CapabilityError("exhaustive submodularity check limited to K <= 2");
  const std::size_t n = std::size_t{1} << P.size();
  auto fam = [&](std::size_t mask) {
    std::vector<ReceiverSet> m;
    for (std::size_t k = 0; k < P.size(); ++k) {
      if ((mask >> k) & 1U) m.push_back(P.members()[k]);
    }
    return SetFamily(fn.K, m);
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto A = fam(a), B = fam(b);
      if (fn(A) + fn(B) < fn(A | B) + fn(A & B)) return false;
    }
  }
  return true;
}

struct ExtremalOutcome {
  Rational lhs, rhs;
  bool holds = false;
  bool tight = false;
};

// Evaluates extremal inequality `which` (0, 1 or 2) on A = W_{K-1}, B = W_K, J = W_j.
inline ExtremalOutcome evaluate_extremal(const SubmodularFn& fn, int which, int j) {
  const int K = fn.K;
  if (K < 3) throw DomainError("extremal inequalities need K >= 3");
  if (which < 0 || which > 2) throw DomainError("extremal inequality index must be 0, 1 or 2");
  const auto P = SetFamily::power_set(K);
  const auto A = receiver_family(K - 1, P), B = receiver_family(K, P);
  ExtremalOutcome out;
  if (which == 0) {
    out.lhs = fn(A | B);
    out.rhs = fn(A) + fn(B) - fn(A & B);
  } else {
    if (j < 1 || j > K - 2) throw DomainError("j must lie in [1:K-2]");
    const auto J = receiver_family(j, P);
    if (which == 1) {
      out.lhs = fn(A | B | J) + fn(A & B);
      out.rhs = fn(J) - fn(J & (A | B)) + fn(A) + fn(B);
    } else {
      out.lhs = fn(A | B | J) + fn((A & B) | (A & J) | (B & J));
      out.rhs = fn(J) - fn(J & A & B) + fn(A) + fn(B);
    }
  }
  out.holds = out.lhs <= out.rhs;
  out.tight = out.lhs == out.rhs;
  return out;
}

// True iff the inequality holds, and for modular functions holds with equality.
inline bool check_extremal_inequality(const SubmodularFn& fn, int which, int j) {
  const auto o = evaluate_extremal(fn, which, j);
  return o.holds && (!fn.modular || o.tight);
}

// ---------------------------------------------------------------------------
// Outer bound

struct NamedBound {
  std::string label;
  GcsBound bound;
};

// The cut-set and generalized cut-set bounds used for the converse, with
// A = W_{K-1}, B = W_K, J = W_j.
inline std::vector<NamedBound> converse_bounds(int K) {
  detail::require_capacity_K(K);
  const auto A = SetExpr::leaf(K - 1), B = SetExpr::leaf(K);
  std::vector<NamedBound> out;
  out.push_back({"cut.K", {{1, B}}});
  out.push_back({"cut.K-1", {{1, A}}});
  out.push_back({"gcs.0", {{1, A | B}}});
  for (int j = 1; j <= K - 2; ++j) out.push_back({"cut.j" + detail::jl(j), {{1, SetExpr::leaf(j)}}});
  for (int j = 1; j <= K - 2; ++j) {
    const auto J = SetExpr::leaf(j);
    out.push_back({"gcs.1" + detail::jl(j), {{1, SetExpr::unite({A, B, J})}, {1, A & B}}});
  }
  for (int j = 1; j <= K - 2; ++j) {
    const auto J = SetExpr::leaf(j);
    out.push_back({"gcs.2" + detail::jl(j),
                   {{1, SetExpr::unite({A, B, J})}, {1, SetExpr::unite({A & B, A & J, B & J})}}});
  }
  return out;
}

inline SymbolicRegion outer_symbolic(int K) {
  const DiamondMessageSet m(K);
  SymbolicRegion r{m.rate_names(), {}};
  for (const auto& nb : converse_bounds(K)) {
    std::vector<Term> lhs;
    for (const auto& [name, q] : gcs_rate_lhs(nb.bound, m)) lhs.emplace_back(name, q);
    r.rows.push_back({std::move(lhs), gcs_capacity_form(nb.bound, K), nb.label});
  }
  return r;
}

inline HPolytope outer_region(const CombinationNetwork& net) { return outer_symbolic(net.K()).instantiate(net); }

}  // namespace groupcast
