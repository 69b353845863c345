#pragma once

// Subset-inclusion lattice on receiver indices [1:K].
//
// Receiver i is stored as bit (i - 1). The ground family P is the power set of
// [1:K] with the empty set removed; every family below is a subset of P.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace groupcast {

inline constexpr int kMaxReceivers = 16;

inline void require_receiver_count(int K) {
  if (K < 1 || K > kMaxReceivers) {
    throw CapabilityError("receiver count K=" + std::to_string(K) + " outside [1:" +
                          std::to_string(kMaxReceivers) + "]");
  }
}

class ReceiverSet {
 public:
  using Bits = std::uint32_t;

  constexpr ReceiverSet() = default;
  constexpr explicit ReceiverSet(Bits bits) : bits_(bits) {}

  static ReceiverSet of(std::initializer_list<int> receivers) {
    ReceiverSet s;
    for (int i : receivers) s = s | singleton(i);
    return s;
  }
  static ReceiverSet singleton(int i) {
    if (i < 1 || i > kMaxReceivers) throw DomainError("receiver index " + std::to_string(i) + " out of range");
    return ReceiverSet(Bits{1} << (i - 1));
  }
  static ReceiverSet full(int K) {
    require_receiver_count(K);
    return ReceiverSet((Bits{1} << K) - 1);
  }

  // Digits 1-9, then a-g for receivers 10-16, in increasing order: "134".
  static ReceiverSet parse(std::string_view text) {
    ReceiverSet s;
    for (char c : text) {
      int i = 0;
      if (c >= '1' && c <= '9') {
        i = c - '0';
      } else if (c >= 'a' && c <= 'g') {
        i = 10 + (c - 'a');
      } else {
        throw SchemaError("bad receiver set '" + std::string(text) + "'");
      }
      if (s.contains(i)) throw SchemaError("repeated receiver in '" + std::string(text) + "'");
      s = s | singleton(i);
    }
    if (s.empty()) throw SchemaError("empty receiver set string");
    return s;
  }

  [[nodiscard]] constexpr Bits bits() const { return bits_; }
  [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
  [[nodiscard]] int size() const { return std::popcount(bits_); }
  [[nodiscard]] bool contains(int i) const {
    return i >= 1 && i <= kMaxReceivers && ((bits_ >> (i - 1)) & 1U) != 0;
  }
  [[nodiscard]] constexpr bool subset_of(ReceiverSet other) const { return (bits_ & ~other.bits_) == 0; }
  [[nodiscard]] bool fits(int K) const { return subset_of(full(K)); }
  [[nodiscard]] ReceiverSet complement(int K) const { return ReceiverSet(full(K).bits_ & ~bits_); }

  [[nodiscard]] std::vector<int> receivers() const {
    std::vector<int> out;
    for (int i = 1; i <= kMaxReceivers; ++i) {
      if (contains(i)) out.push_back(i);
    }
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out;
    for (int i : receivers()) out.push_back(i <= 9 ? static_cast<char>('0' + i) : static_cast<char>('a' + i - 10));
    return out;
  }

  friend constexpr ReceiverSet operator|(ReceiverSet a, ReceiverSet b) { return ReceiverSet(a.bits_ | b.bits_); }
  friend constexpr ReceiverSet operator&(ReceiverSet a, ReceiverSet b) { return ReceiverSet(a.bits_ & b.bits_); }
  friend constexpr ReceiverSet operator-(ReceiverSet a, ReceiverSet b) { return ReceiverSet(a.bits_ & ~b.bits_); }
  friend constexpr auto operator<=>(ReceiverSet, ReceiverSet) = default;

 private:
  Bits bits_ = 0;
};

// A finite set of nonempty receiver sets over [1:K], stored sorted by bitmask.
class SetFamily {
 public:
  explicit SetFamily(int K) : K_(K) { require_receiver_count(K); }

  SetFamily(int K, std::vector<ReceiverSet> members) : K_(K), members_(std::move(members)) {
    require_receiver_count(K);
    for (const auto& s : members_) {
      if (s.empty()) throw InvalidFamilyError("empty set is not a member of P");
      if (!s.fits(K)) throw InvalidFamilyError("set " + s.to_string() + " not contained in [1:" + std::to_string(K) + "]");
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  SetFamily(int K, std::initializer_list<std::string_view> names) : SetFamily(K, parse_all(names)) {}

  // P: every nonempty subset of [1:K].
  static SetFamily power_set(int K) {
    require_receiver_count(K);
    SetFamily p(K);
    const auto top = ReceiverSet::full(K).bits();
    p.members_.reserve(top);
    for (ReceiverSet::Bits b = 1; b <= top; ++b) p.members_.emplace_back(b);
    return p;
  }

  [[nodiscard]] int K() const { return K_; }
  [[nodiscard]] const std::vector<ReceiverSet>& members() const { return members_; }
  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] bool empty() const { return members_.empty(); }
  [[nodiscard]] auto begin() const { return members_.begin(); }
  [[nodiscard]] auto end() const { return members_.end(); }

  [[nodiscard]] bool contains(ReceiverSet s) const { return std::binary_search(members_.begin(), members_.end(), s); }
  [[nodiscard]] bool subset_of(const SetFamily& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
  }

  [[nodiscard]] bool is_up_set() const {
    const auto top = ReceiverSet::full(K_).bits();
    for (const auto& s : members_) {
      for (ReceiverSet::Bits b = 1; b <= top; ++b) {
        if (s.subset_of(ReceiverSet(b)) && !contains(ReceiverSet(b))) return false;
      }
    }
    return true;
  }

  [[nodiscard]] bool is_down_set(const SetFamily& within) const {
    for (const auto& s : members_) {
      for (const auto& t : within) {
        if (t.subset_of(s) && !contains(t)) return false;
      }
    }
    return true;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i) out += ",";
      out += members_[i].to_string();
    }
    return out + "}";
  }

  friend SetFamily operator|(const SetFamily& a, const SetFamily& b) {
    SetFamily out(same_context(a, b));
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.members_));
    return out;
  }
  friend SetFamily operator&(const SetFamily& a, const SetFamily& b) {
    SetFamily out(same_context(a, b));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.members_));
    return out;
  }
  friend SetFamily operator-(const SetFamily& a, const SetFamily& b) {
    SetFamily out(same_context(a, b));
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.members_));
    return out;
  }
  friend bool operator==(const SetFamily&, const SetFamily&) = default;

  template <class Pred>
  [[nodiscard]] SetFamily filter(Pred pred) const {
    SetFamily out(K_);
    std::copy_if(members_.begin(), members_.end(), std::back_inserter(out.members_), pred);
    return out;
  }

 private:
  static int same_context(const SetFamily& a, const SetFamily& b) {
    if (a.K_ != b.K_) throw DomainError("families over different receiver counts");
    return a.K_;
  }
  static std::vector<ReceiverSet> parse_all(std::initializer_list<std::string_view> names) {
    std::vector<ReceiverSet> out;
    for (auto n : names) out.push_back(ReceiverSet::parse(n));
    return out;
  }

  int K_;
  std::vector<ReceiverSet> members_;
};

// Smallest up-set of P containing `family`.
inline SetFamily up_closure(const SetFamily& family) {
  return SetFamily::power_set(family.K()).filter([&](ReceiverSet t) {
    return std::any_of(family.begin(), family.end(), [&](ReceiverSet s) { return s.subset_of(t); });
  });
}

// {T in within : T <= S for some S in family}, with no requirement that family is inside `within`.
inline SetFamily down_filter(const SetFamily& family, const SetFamily& within) {
  return within.filter([&](ReceiverSet t) {
    return std::any_of(family.begin(), family.end(), [&](ReceiverSet s) { return t.subset_of(s); });
  });
}

// Smallest down-set of `within` containing `family`.
//
// P excludes the empty set, so the closure never contains it: the K=3 closure
// of {13} is {1,3,13}.
inline SetFamily down_closure(const SetFamily& family, const SetFamily& within) {
  if (family.K() != within.K()) throw DomainError("families over different receiver counts");
  if (!family.subset_of(within)) {
    throw DomainError("family " + family.to_string() + " is not contained in " + within.to_string());
  }
  return down_filter(family, within);
}

inline SetFamily down_closure(const SetFamily& family) {
  return down_closure(family, SetFamily::power_set(family.K()));
}

// W_i^base: members of `base` containing receiver i.
inline SetFamily receiver_family(int i, const SetFamily& base) {
  if (i < 1 || i > base.K()) {
    throw DomainError("receiver " + std::to_string(i) + " outside [1:" + std::to_string(base.K()) + "]");
  }
  return base.filter([i](ReceiverSet s) { return s.contains(i); });
}

inline SetFamily receiver_family(int i, int K) { return receiver_family(i, SetFamily::power_set(K)); }

// Family of singletons {i} for i in s.
inline SetFamily singletons(const ReceiverSet& s, int K) {
  std::vector<ReceiverSet> out;
  for (int i : s.receivers()) out.push_back(ReceiverSet::singleton(i));
  return SetFamily(K, std::move(out));
}

// Family of complements {[1:K] \ {i}} for i in s.
inline SetFamily complements_of(const ReceiverSet& s, int K) {
  std::vector<ReceiverSet> out;
  for (int i : s.receivers()) out.push_back(ReceiverSet::singleton(i).complement(K));
  return SetFamily(K, std::move(out));
}

// Exhaustively checks the union/intersection and partition identities of the
// receiver families W_i^P for every admissible S and i.
inline bool check_lattice_identities(int K) {
  require_receiver_count(K);
  const auto P = SetFamily::power_set(K);
  std::vector<SetFamily> W;
  W.reserve(K);
  for (int k = 1; k <= K; ++k) W.push_back(receiver_family(k, P));

  const auto top = ReceiverSet::full(K).bits();
  for (ReceiverSet::Bits bits = 1; bits <= top; ++bits) {
    const ReceiverSet S(bits);
    SetFamily union_w(K), inter_w = P;
    for (int k : S.receivers()) {
      union_w = union_w | W[k - 1];
      inter_w = inter_w & W[k - 1];
    }
    if (union_w != up_closure(singletons(S, K))) return false;
    if (inter_w != up_closure(SetFamily(K, {S}))) return false;
  }

  // Partition identities need S a proper subset and i outside S.
  for (ReceiverSet::Bits bits = 1; bits < top; ++bits) {
    const ReceiverSet S(bits);
    for (int i = 1; i <= K; ++i) {
      if (S.contains(i)) continue;
      const auto& Wi = W[i - 1];
      const auto low_a = down_closure(complements_of(S, K), Wi);
      const auto high_a = up_closure(SetFamily(K, {S})) & Wi;
      if ((low_a | high_a) != Wi || !(low_a & high_a).empty()) return false;

      const auto low_b = down_closure(SetFamily(K, {S.complement(K)}), Wi);
      const auto high_b = up_closure(singletons(S, K)) & Wi;
      if ((low_b | high_b) != Wi || !(low_b & high_b).empty()) return false;
    }
  }
  for (const auto& Wi : W) {
    if (Wi.size() != (std::size_t{1} << (K - 1))) return false;
  }
  return true;
}

}  // namespace groupcast
