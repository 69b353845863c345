#pragma once

// Combination network data model, the modular capacity functional C_W, and
// the mutual-information atoms evaluated under the independent-uniform coding
// distribution.

#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "rational.hpp"

namespace groupcast {

class CombinationNetwork {
 public:
  explicit CombinationNetwork(int K) : K_(K) {
    require_receiver_count(K);
    caps_.assign(std::size_t{1} << K, Rational(0));
  }

  static CombinationNetwork uniform(int K, const Rational& c) {
    CombinationNetwork net(K);
    for (std::size_t b = 1; b < net.caps_.size(); ++b) net.caps_[b] = c;
    return net;
  }

  [[nodiscard]] int K() const { return K_; }

  [[nodiscard]] const Rational& capacity(ReceiverSet s) const {
    check(s);
    return caps_[s.bits()];
  }
  void set_capacity(ReceiverSet s, const Rational& c) {
    check(s);
    if (sgn(c) < 0) throw DomainError("negative capacity for link " + s.to_string());
    caps_[s.bits()] = c;
  }

  // Image under the receiver permutation perm (perm[i-1] = new label of i).
  [[nodiscard]] CombinationNetwork relabeled(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != K_) throw DomainError("permutation length must equal K");
    CombinationNetwork out(K_);
    for (std::size_t b = 1; b < caps_.size(); ++b) {
      ReceiverSet image;
      for (int i : ReceiverSet(static_cast<ReceiverSet::Bits>(b)).receivers()) image = image | ReceiverSet::singleton(perm[i - 1]);
      out.set_capacity(image, caps_[b]);
    }
    return out;
  }

  // Swaps receivers K-1 and K.
  [[nodiscard]] CombinationNetwork weak_pair_swapped() const {
    std::vector<int> perm(K_);
    for (int i = 1; i <= K_; ++i) perm[i - 1] = i;
    std::swap(perm[K_ - 2], perm[K_ - 1]);
    return relabeled(perm);
  }

  friend bool operator==(const CombinationNetwork&, const CombinationNetwork&) = default;

 private:
  void check(ReceiverSet s) const {
    if (s.empty() || !s.fits(K_)) throw DomainError("link " + s.to_string() + " is not a nonempty subset of [1:" + std::to_string(K_) + "]");
  }

  int K_;
  std::vector<Rational> caps_;  // indexed by bitmask, slot 0 unused
};

// C_W = sum of C_S over S in W.
inline Rational capacity_sum(const CombinationNetwork& net, const SetFamily& family) {
  if (family.K() != net.K()) throw DomainError("family and network disagree on K");
  Rational s;
  for (const auto& S : family) s += net.capacity(S);
  return s;
}

// A linear form over the link capacities, used to keep formulas symbolic.
using CapacityForm = std::map<ReceiverSet, Rational>;

inline CapacityForm capacity_form(const SetFamily& family, const Rational& weight = 1) {
  CapacityForm f;
  for (const auto& S : family) f[S] += weight;
  return f;
}

inline CapacityForm& operator+=(CapacityForm& a, const CapacityForm& b) {
  for (const auto& [S, q] : b) {
    if (sgn(a[S] += q) == 0) a.erase(S);
  }
  return a;
}
inline CapacityForm operator+(CapacityForm a, const CapacityForm& b) { return a += b; }
inline CapacityForm operator-(CapacityForm a, const CapacityForm& b) {
  for (const auto& [S, q] : b) {
    if (sgn(a[S] -= q) == 0) a.erase(S);
  }
  return a;
}

inline Rational evaluate(const CapacityForm& f, const CombinationNetwork& net) {
  Rational s;
  for (const auto& [S, q] : f) s += q * net.capacity(S);
  return s;
}

// "C_1+C_12+2C_34"
inline std::string format_form(const CapacityForm& f) {
  std::string out;
  for (const auto& [S, q] : f) {
    if (!out.empty()) out += sgn(q) < 0 ? "-" : "+";
    else if (sgn(q) < 0) out += "-";
    if (abs(q) != 1) out += to_string(abs(q));
    out += "C_" + S.to_string();
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Down-set capacity identities

// C over {T in W_j : T <= complement(S)}, computed directly and as
// C_{W_j} - C_{W_j & (union_{k in S} W_k)}.
inline Rational downset_capacity_complement(const CombinationNetwork& net, int j, ReceiverSet S) {
  const int K = net.K();
  if (!S.fits(K)) throw DomainError("set " + S.to_string() + " not contained in [1:" + std::to_string(K) + "]");
  const auto P = SetFamily::power_set(K);
  const auto Wj = receiver_family(j, P);
  const ReceiverSet top = S.complement(K);
  const Rational direct =
      top.empty() ? Rational(0) : capacity_sum(net, down_filter(SetFamily(K, {top}), Wj));
  SetFamily cover(K);
  for (int k : S.receivers()) cover = cover | receiver_family(k, P);
  const Rational via = capacity_sum(net, Wj) - capacity_sum(net, Wj & cover);
  if (direct != via) throw ConsistencyError("down-set capacity identity failed for j=" + std::to_string(j));
  return direct;
}

// C over {T in W_j : T <= complement({k}) for some k in S}, computed directly and as
// C_{W_j} - C_{W_j & (intersection_{k in S} W_k)}. S must be nonempty.
inline Rational downset_capacity_antichain(const CombinationNetwork& net, int j, ReceiverSet S) {
  const int K = net.K();
  if (S.empty() || !S.fits(K)) throw DomainError("antichain index set must be a nonempty subset of [1:K]");
  const auto P = SetFamily::power_set(K);
  const auto Wj = receiver_family(j, P);
  std::vector<ReceiverSet> tops;
  for (int k : S.receivers()) {
    if (const auto t = ReceiverSet::singleton(k).complement(K); !t.empty()) tops.push_back(t);
  }
  const Rational direct = capacity_sum(net, down_filter(SetFamily(K, tops), Wj));
  SetFamily meet = P;
  for (int k : S.receivers()) meet = meet & receiver_family(k, P);
  const Rational via = capacity_sum(net, Wj) - capacity_sum(net, Wj & meet);
  if (direct != via) throw ConsistencyError("antichain capacity identity failed for j=" + std::to_string(j));
  return direct;
}

// ---------------------------------------------------------------------------
// Diamond message set: indices phi-bar = [1:K], K-bar, (K-1)-bar, (K-1.K)-bar.

struct DiamondMessageSet {
  int K;

  explicit DiamondMessageSet(int K_) : K(K_) {
    require_receiver_count(K_);
    if (K_ < 3) throw DomainError("the diamond message set needs K >= 3");
  }

  [[nodiscard]] ReceiverSet all() const { return ReceiverSet::full(K); }
  [[nodiscard]] ReceiverSet no_k() const { return all() - ReceiverSet::singleton(K); }
  [[nodiscard]] ReceiverSet no_km1() const { return all() - ReceiverSet::singleton(K - 1); }
  [[nodiscard]] ReceiverSet no_pair() const { return all() - ReceiverSet::of({K - 1, K}); }

  // In variable order: R_phibar, R_Kbar, R_(K-1)bar, R_(K-1.K)bar.
  [[nodiscard]] std::vector<ReceiverSet> messages() const { return {all(), no_k(), no_km1(), no_pair()}; }
  [[nodiscard]] SetFamily family() const { return SetFamily(K, messages()); }

  static std::string rate_name(ReceiverSet s) { return "R_" + s.to_string(); }
  [[nodiscard]] std::string r_all() const { return rate_name(all()); }
  [[nodiscard]] std::string r_k() const { return rate_name(no_k()); }
  [[nodiscard]] std::string r_km1() const { return rate_name(no_km1()); }
  [[nodiscard]] std::string r_pair() const { return rate_name(no_pair()); }
  [[nodiscard]] std::vector<std::string> rate_names() const { return {r_all(), r_k(), r_km1(), r_pair()}; }

  static std::string split_name(ReceiverSet from, ReceiverSet to) { return "R_" + from.to_string() + "->" + to.to_string(); }
  // s1..s5 in the order they are eliminated.
  [[nodiscard]] std::string s1() const { return split_name(no_km1(), all()); }
  [[nodiscard]] std::string s2() const { return split_name(no_k(), all()); }
  [[nodiscard]] std::string s3() const { return split_name(no_pair(), no_k()); }
  [[nodiscard]] std::string s4() const { return split_name(no_pair(), no_km1()); }
  [[nodiscard]] std::string s5() const { return split_name(no_pair(), all()); }
  [[nodiscard]] std::vector<std::string> split_names() const { return {s1(), s2(), s3(), s4(), s5()}; }

  [[nodiscard]] std::string excess_k() const { return "Rt_" + no_k().to_string(); }
  [[nodiscard]] std::string excess_km1() const { return "Rt_" + no_km1().to_string(); }

  // Name map exchanging the roles of receivers K-1 and K.
  [[nodiscard]] std::map<std::string, std::string> swap_map() const {
    return {{r_k(), r_km1()}, {r_km1(), r_k()}, {s1(), s2()}, {s2(), s1()},
            {s3(), s4()},     {s4(), s3()},     {excess_k(), excess_km1()}, {excess_km1(), excess_k()}};
  }
};

// ---------------------------------------------------------------------------
// Mutual-information atoms

struct InfoValuation {
  int K = 3;
  Rational a1, a2, a3, a4;
  std::vector<Rational> b, c, d, e, f;  // indexed j-1 for j in [1:K-2]
  Rational g;

  InfoValuation() = default;
  explicit InfoValuation(int K_) : K(K_) {
    if (K_ < 3) throw DomainError("valuation needs K >= 3");
    const auto n = static_cast<std::size_t>(K_ - 2);
    b.assign(n, 0);
    c.assign(n, 0);
    d.assign(n, 0);
    e.assign(n, 0);
    f.assign(n, 0);
  }

  [[nodiscard]] int inner_count() const { return K - 2; }

  void validate() const {
    if (K < 3 || K > kMaxReceivers) throw DomainError("valuation needs 3 <= K <= 16");
    const auto n = static_cast<std::size_t>(K - 2);
    for (const auto* v : {&b, &c, &d, &e, &f}) {
      if (v->size() != n) throw DomainError("per-receiver atom vectors must have K-2 entries");
      for (const auto& q : *v) {
        if (sgn(q) < 0) throw DomainError("negative atom");
      }
    }
    for (const auto* q : {&a1, &a2, &a3, &a4, &g}) {
      if (sgn(*q) < 0) throw DomainError("negative atom");
    }
  }

  // Valuation seen after exchanging receivers K-1 and K.
  [[nodiscard]] InfoValuation swapped() const {
    InfoValuation v = *this;
    std::swap(v.a1, v.a2);
    std::swap(v.a3, v.a4);
    std::swap(v.c, v.d);
    return v;
  }

  friend bool operator==(const InfoValuation&, const InfoValuation&) = default;
};

inline InfoValuation evaluate_optimal_distribution(const CombinationNetwork& net) {
  const int K = net.K();
  if (K < 3) throw DomainError("the diamond message set needs K >= 3");
  const DiamondMessageSet m(K);
  const auto P = SetFamily::power_set(K);
  auto W = [&](int i) { return receiver_family(i, P); };
  auto C_down = [&](int i, std::initializer_list<ReceiverSet> tops) {
    return capacity_sum(net, down_closure(SetFamily(K, std::vector<ReceiverSet>(tops)), W(i)));
  };

  InfoValuation v(K);
  v.a1 = capacity_sum(net, W(K));
  v.a2 = capacity_sum(net, W(K - 1));
  v.a3 = C_down(K - 1, {m.no_k()});
  v.a4 = C_down(K, {m.no_km1()});
  for (int j = 1; j <= K - 2; ++j) {
    const auto x = static_cast<std::size_t>(j - 1);
    v.b[x] = capacity_sum(net, W(j));
    // Conditioning on U_{K-1} (every link that reaches K) leaves the links of j
    // that miss K, so c_j sits under no_k and d_j under no_km1.
    v.c[x] = C_down(j, {m.no_k()});
    v.d[x] = C_down(j, {m.no_km1()});
    v.e[x] = C_down(j, {m.no_pair()});
    v.f[x] = C_down(j, {m.no_k(), m.no_km1()});
  }
  v.g = 0;
  return v;
}

// ---------------------------------------------------------------------------
// JSON

// Missing links default to 0; each one is reported in `warnings`.
inline CombinationNetwork network_from_json(const nlohmann::json& j, std::vector<std::string>* warnings = nullptr) {
  try {
    if (!j.is_object() || !j.contains("K") || !j.contains("capacities")) {
      throw SchemaError("network needs 'K' and 'capacities'");
    }
    const int K = j.at("K").get<int>();
    if (K < 1 || K > kMaxReceivers) throw CapabilityError("K=" + std::to_string(K) + " outside [1:16]");
    CombinationNetwork net(K);
    std::vector<bool> given(std::size_t{1} << K, false);
    for (const auto& [key, val] : j.at("capacities").items()) {
      const auto S = ReceiverSet::parse(key);
      if (S.to_string() != key) throw SchemaError("capacity key '" + key + "' is not a sorted digit string");
      if (!S.fits(K)) throw SchemaError("capacity key '" + key + "' outside [1:K]");
      const auto c = parse_rational(val.get<std::string>());
      if (sgn(c) < 0) throw SchemaError("negative capacity for '" + key + "'");
      net.set_capacity(S, c);
      given[S.bits()] = true;
    }
    if (warnings) {
      for (std::size_t b = 1; b < given.size(); ++b) {
        if (!given[b]) warnings->push_back("capacity C_" + ReceiverSet(static_cast<ReceiverSet::Bits>(b)).to_string() + " missing, using 0");
      }
    }
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("network JSON: ") + e.what());
  }
}

inline nlohmann::json to_json(const CombinationNetwork& net) {
  nlohmann::json caps = nlohmann::json::object();
  for (const auto& S : SetFamily::power_set(net.K())) caps[S.to_string()] = to_string(net.capacity(S));
  return {{"K", net.K()}, {"capacities", caps}};
}

inline nlohmann::json to_json(const InfoValuation& v) {
  auto vec = [](const std::vector<Rational>& xs) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& q : xs) a.push_back(to_string(q));
    return a;
  };
  return {{"K", v.K},          {"a1", to_string(v.a1)}, {"a2", to_string(v.a2)}, {"a3", to_string(v.a3)},
          {"a4", to_string(v.a4)}, {"b", vec(v.b)},         {"c", vec(v.c)},         {"d", vec(v.d)},
          {"e", vec(v.e)},         {"f", vec(v.f)},         {"g", to_string(v.g)}};
}

inline InfoValuation valuation_from_json(const nlohmann::json& j) {
  try {
    InfoValuation v(j.at("K").get<int>());
    auto scalar = [&](const char* key) { return j.contains(key) ? parse_rational(j.at(key).get<std::string>()) : Rational(0); };
    auto vec = [&](const char* key) {
      std::vector<Rational> out;
      for (const auto& q : j.at(key)) out.push_back(parse_rational(q.get<std::string>()));
      return out;
    };
    v.a1 = scalar("a1");
    v.a2 = scalar("a2");
    v.a3 = scalar("a3");
    v.a4 = scalar("a4");
    v.g = scalar("g");
    v.b = vec("b");
    v.c = vec("c");
    v.d = vec("d");
    v.e = vec("e");
    v.f = vec("f");
    v.validate();
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("valuation JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw SchemaError(std::string("valuation JSON: ") + e.what());
  }
}

}  // namespace groupcast
