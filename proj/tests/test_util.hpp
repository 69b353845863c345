#pragma once

#include <string>
#include <vector>

#include <groupcast/groupcast.hpp>

namespace gc = groupcast;

inline gc::Rational Q(const std::string& s) { return gc::parse_rational(s); }

inline gc::SetFamily fam(int K, std::initializer_list<std::string_view> names) { return gc::SetFamily(K, names); }

inline gc::CombinationNetwork unit_net(int K) { return gc::CombinationNetwork::uniform(K, 1); }

// Row of `poly` with the given label, as a variable -> coefficient map.
inline std::map<std::string, gc::Rational> row_terms(const gc::HPolytope& poly, const std::string& label) {
  for (const auto& r : poly.rows) {
    if (r.label != label) continue;
    std::map<std::string, gc::Rational> out;
    for (std::size_t k = 0; k < poly.dim(); ++k) {
      if (sgn(r.coeffs[k]) != 0) out[poly.variables[k]] = r.coeffs[k];
    }
    return out;
  }
  throw std::runtime_error("no row labelled " + label);
}

inline gc::Rational row_rhs(const gc::HPolytope& poly, const std::string& label) {
  for (const auto& r : poly.rows) {
    if (r.label == label) return r.rhs;
  }
  throw std::runtime_error("no row labelled " + label);
}
