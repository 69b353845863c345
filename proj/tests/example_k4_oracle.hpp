#pragma once

// The nine K=4 capacity-region inequalities written out as text, parsed here
// independently of the library's own table.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"

struct OracleRow {
  std::map<std::string, gc::Rational> rates;  // "R_1234" -> coefficient
  std::map<std::string, gc::Rational> links;  // "34" -> coefficient
};

inline std::map<std::string, gc::Rational> parse_linear_sum(const std::string& text, char prefix) {
  std::map<std::string, gc::Rational> out;
  std::stringstream ss(text);
  std::string term;
  while (std::getline(ss, term, '+')) {
    term.erase(0, term.find_first_not_of(' '));
    term.erase(term.find_last_not_of(' ') + 1);
    std::size_t k = 0;
    while (k < term.size() && std::isdigit(static_cast<unsigned char>(term[k]))) ++k;
    const gc::Rational coeff = k == 0 ? gc::Rational(1) : gc::parse_rational(term.substr(0, k));
    std::string name = term.substr(k);
    if (prefix == 'C') name = name.substr(2);  // drop "C_"
    out[name] += coeff;
  }
  return out;
}

inline const std::vector<std::string>& example_k4_text() {
  static const std::vector<std::string> rows{
      "R_1234 + R_124 <= C_4 + C_14 + C_24 + C_34 + C_124 + C_134 + C_234 + C_1234",
      "R_1234 + R_123 <= C_3 + C_13 + C_23 + C_34 + C_123 + C_134 + C_234 + C_1234",
      "R_1234 + R_124 + R_123 <= C_3 + C_4 + C_13 + C_14 + C_23 + C_24 + C_34 + C_123 + C_124 + C_134 + C_234 + C_1234",
      "R_1234 + R_124 + R_123 + R_12 <= C_1 + C_12 + C_13 + C_14 + C_123 + C_124 + C_134 + C_1234",
      "R_1234 + R_124 + R_123 + R_12 <= C_2 + C_12 + C_23 + C_24 + C_123 + C_124 + C_234 + C_1234",
      "2R_1234 + R_124 + R_123 + R_12 <= C_1 + C_3 + C_4 + C_12 + C_13 + C_14 + C_23 + C_24 + 2C_34 + C_123 + C_124 "
      "+ 2C_134 + 2C_234 + 2C_1234",
      "2R_1234 + R_124 + R_123 + R_12 <= C_2 + C_3 + C_4 + C_12 + C_13 + C_14 + C_23 + C_24 + 2C_34 + C_123 + C_124 "
      "+ 2C_134 + 2C_234 + 2C_1234",
      "2R_1234 + 2R_124 + 2R_123 + R_12 <= C_1 + C_3 + C_4 + C_12 + 2C_13 + 2C_14 + C_23 + C_24 + 2C_34 + 2C_123 "
      "+ 2C_124 + 2C_134 + 2C_234 + 2C_1234",
      "2R_1234 + 2R_124 + 2R_123 + R_12 <= C_2 + C_3 + C_4 + C_12 + C_13 + C_14 + 2C_23 + 2C_24 + 2C_34 + 2C_123 "
      "+ 2C_124 + 2C_134 + 2C_234 + 2C_1234",
  };
  return rows;
}

inline std::vector<OracleRow> example_k4_oracle() {
  std::vector<OracleRow> out;
  for (const auto& line : example_k4_text()) {
    const auto at = line.find("<=");
    out.push_back({parse_linear_sum(line.substr(0, at), 'R'), parse_linear_sum(line.substr(at + 2), 'C')});
  }
  return out;
}

// Unit-capacity bounds of the nine rows, summed by hand from the text above.
inline const std::vector<gc::Rational>& example_k4_unit_rhs() {
  static const std::vector<gc::Rational> v{8, 8, 12, 8, 8, 18, 18, 22, 22};
  return v;
}

// Number of oracle rows matched one-to-one by rows of the generated symbolic region.
inline std::size_t match_against_oracle(const gc::SymbolicRegion& sym) {
  const auto oracle = example_k4_oracle();
  std::vector<bool> used(sym.rows.size(), false);
  std::size_t matched = 0;
  for (const auto& o : oracle) {
    for (std::size_t s = 0; s < sym.rows.size(); ++s) {
      if (used[s]) continue;
      std::map<std::string, gc::Rational> rates, links;
      for (const auto& [name, q] : sym.rows[s].lhs) rates[name] += q;
      for (const auto& [S, q] : sym.rows[s].rhs) {
        if (sgn(q) != 0) links[S.to_string()] += q;
      }
      if (rates == o.rates && links == o.links) {
        used[s] = true;
        ++matched;
        break;
      }
    }
  }
  return matched;
}
