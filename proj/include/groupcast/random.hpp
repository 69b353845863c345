#pragma once

// Seeded sampling that gives the same stream on every platform. The standard
// distributions are implementation-defined, so bounded draws are done here by
// rejection on top of mt19937_64 (whose output sequence is fixed by the standard).

#include <cstdint>
#include <random>

#include "lattice.hpp"
#include "network.hpp"
#include "rational.hpp"

namespace groupcast {

using Rng = std::mt19937_64;

// Uniform integer in [0, n), n > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

// Seed for instance `index` of a campaign with base seed `seed` (splitmix64 mix).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// p/q with p in [0,64], q in {1,2,4,8}.
inline Rational sample_capacity(Rng& rng) {
  static constexpr int denominators[] = {1, 2, 4, 8};
  const auto p = uniform_int(rng, 0, 64);
  const int q = denominators[uniform_below(rng, 4)];
  Rational r(static_cast<long>(p), q);
  r.canonicalize();
  return r;
}

inline CombinationNetwork random_network(int K, Rng& rng) {
  CombinationNetwork net(K);
  for (const auto& S : SetFamily::power_set(K)) net.set_capacity(S, sample_capacity(rng));
  return net;
}

// Integer capacities in [0, max].
inline CombinationNetwork random_integer_network(int K, int max, Rng& rng) {
  CombinationNetwork net(K);
  for (const auto& S : SetFamily::power_set(K)) net.set_capacity(S, Rational(uniform_int(rng, 0, max)));
  return net;
}

// Every atom drawn independently, with no relation between them.
inline InfoValuation random_valuation(int K, Rng& rng) {
  InfoValuation v(K);
  for (auto* q : {&v.a1, &v.a2, &v.a3, &v.a4}) *q = sample_capacity(rng);
  for (auto* vec : {&v.b, &v.c, &v.d, &v.e, &v.f}) {
    for (auto& q : *vec) q = sample_capacity(rng);
  }
  v.g = 0;
  return v;
}

}  // namespace groupcast
