#pragma once

// H-polytopes over named variables: normalization, redundancy removal,
// Fourier-Motzkin projection, containment and vertex enumeration.

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "lp.hpp"
#include "rational.hpp"

namespace groupcast {

using Point = std::vector<Rational>;

// sum_k coeffs[k] * x_k <= rhs, coefficients aligned with the owning polytope's variables.
struct LinearInequality {
  std::vector<Rational> coeffs;
  Rational rhs;
  std::string label;

  [[nodiscard]] bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& q) { return sgn(q) == 0; });
  }
  [[nodiscard]] Rational eval(const Point& x) const {
    Rational s;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (sgn(coeffs[k]) != 0) s += coeffs[k] * x[k];
    }
    return s;
  }
  // Index of the single nonzero coefficient, if there is exactly one.
  [[nodiscard]] std::optional<std::size_t> single_support() const {
    std::optional<std::size_t> at;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (sgn(coeffs[k]) == 0) continue;
      if (at) return std::nullopt;
      at = k;
    }
    return at;
  }
};

using Term = std::pair<std::string, Rational>;

struct HPolytope {
  std::vector<std::string> variables;
  std::vector<LinearInequality> rows;

  HPolytope() = default;
  explicit HPolytope(std::vector<std::string> vars) : variables(std::move(vars)) {}

  [[nodiscard]] std::size_t dim() const { return variables.size(); }

  [[nodiscard]] std::size_t index_of(const std::string& name) const {
    const auto it = std::find(variables.begin(), variables.end(), name);
    if (it == variables.end()) throw DomainError("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - variables.begin());
  }
  [[nodiscard]] bool has_variable(const std::string& name) const {
    return std::find(variables.begin(), variables.end(), name) != variables.end();
  }

  // Repeated names accumulate.
  LinearInequality& add(const std::vector<Term>& terms, const Rational& rhs, std::string label = {}) {
    LinearInequality row{std::vector<Rational>(dim()), rhs, std::move(label)};
    for (const auto& [name, q] : terms) row.coeffs[index_of(name)] += q;
    rows.push_back(std::move(row));
    return rows.back();
  }

  void add_nonnegativity(const std::vector<std::string>& names) {
    for (const auto& v : names) add({{v, -1}}, 0, "nonneg/" + v);
  }

  [[nodiscard]] bool satisfies(const Point& x) const {
    return std::all_of(rows.begin(), rows.end(), [&](const LinearInequality& r) { return r.eval(x) <= r.rhs; });
  }

  // Variables bounded below by a row of the form -c x_v <= b with c > 0, b <= 0.
  [[nodiscard]] std::vector<bool> nonnegative_variables() const {
    std::vector<bool> out(dim(), false);
    for (const auto& r : rows) {
      const auto k = r.single_support();
      if (k && sgn(r.coeffs[*k]) < 0 && sgn(r.rhs) <= 0) out[*k] = true;
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Row normalization

// Scales to coprime integer coefficients with a positive factor. Zero rows are
// left alone.
inline LinearInequality normalize_row(LinearInequality row) {
  if (row.is_zero()) return row;
  mpz_class den = 1, g = 0;
  for (const auto& q : row.coeffs) {
    if (sgn(q) != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  }
  for (const auto& q : row.coeffs) {
    if (sgn(q) == 0) continue;
    const mpz_class scaled = q.get_num() * (den / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational factor(den, g);
  factor.canonicalize();
  for (auto& q : row.coeffs) q *= factor;
  row.rhs *= factor;
  return row;
}

inline HPolytope empty_polytope(std::vector<std::string> variables) {
  HPolytope p(std::move(variables));
  p.rows.push_back({std::vector<Rational>(p.dim()), Rational(-1), "infeasible"});
  return p;
}

inline bool is_canonical_empty(const HPolytope& p) {
  return p.rows.size() == 1 && p.rows[0].is_zero() && sgn(p.rows[0].rhs) < 0;
}

// Normalizes every row, drops 0 <= b rows with b >= 0, merges rows with equal
// left-hand sides (keeping the tightest bound at the first position).
inline HPolytope normalized(const HPolytope& poly) {
  HPolytope out(poly.variables);
  std::map<std::vector<Rational>, std::size_t> seen;
  for (const auto& raw : poly.rows) {
    auto row = normalize_row(raw);
    if (row.is_zero()) {
      if (sgn(row.rhs) < 0) return empty_polytope(poly.variables);
      continue;
    }
    auto [it, fresh] = seen.emplace(row.coeffs, out.rows.size());
    if (fresh) {
      out.rows.push_back(std::move(row));
    } else if (row.rhs < out.rows[it->second].rhs) {
      out.rows[it->second].rhs = row.rhs;
      out.rows[it->second].label = row.label;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Linear programming over a polytope

namespace detail {

inline LpResult solve_subset(const HPolytope& poly, const std::vector<std::size_t>& active,
                             const std::vector<Rational>& objective) {
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  std::vector<bool> nonneg(poly.dim(), false);
  A.reserve(active.size());
  b.reserve(active.size());
  for (auto i : active) {
    const auto& r = poly.rows[i];
    const auto k = r.single_support();
    if (k && sgn(r.coeffs[*k]) < 0 && sgn(r.rhs) == 0) {
      // x_k >= 0 is carried by the column itself.
      nonneg[*k] = true;
      continue;
    }
    A.push_back(r.coeffs);
    b.push_back(r.rhs);
  }
  return solve_lp(A, b, objective, nonneg);
}

inline std::vector<std::size_t> all_rows(const HPolytope& poly) {
  std::vector<std::size_t> idx(poly.rows.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

}  // namespace detail

inline LpResult solve_lp(const HPolytope& poly, const std::vector<Rational>& objective, bool maximize = true) {
  if (objective.size() != poly.dim()) throw DomainError("objective length does not match polytope dimension");
  if (maximize) return detail::solve_subset(poly, detail::all_rows(poly), objective);
  std::vector<Rational> neg(objective.size());
  for (std::size_t k = 0; k < neg.size(); ++k) neg[k] = -objective[k];
  auto r = detail::solve_subset(poly, detail::all_rows(poly), neg);
  r.value = -r.value;
  return r;
}

inline LpResult solve_lp(const HPolytope& poly, const std::map<std::string, Rational>& objective,
                         bool maximize = true) {
  std::vector<Rational> c(poly.dim());
  for (const auto& [name, q] : objective) c[poly.index_of(name)] = q;
  return solve_lp(poly, c, maximize);
}

inline bool is_feasible(const HPolytope& poly) {
  return solve_lp(poly, std::vector<Rational>(poly.dim())).status != LpStatus::infeasible;
}

// True iff the row is implied by `poly` (an infeasible poly implies everything).
inline bool is_redundant(const LinearInequality& row, const HPolytope& poly) {
  const auto r = solve_lp(poly, row.coeffs);
  if (r.status == LpStatus::infeasible) return true;
  return r.status == LpStatus::optimal && r.value <= row.rhs;
}

// Removes every row implied by the others. Row order of survivors is kept, so
// a second call returns its input unchanged.
inline HPolytope minimize(const HPolytope& poly) {
  HPolytope norm = normalized(poly);
  if (is_canonical_empty(norm)) return norm;
  if (!is_feasible(norm)) return empty_polytope(poly.variables);

  const std::size_t m = norm.rows.size();
  std::vector<bool> alive(m, true);

  // Cheap pass: with x >= 0 on the relevant coordinates, a.x <= b is implied by
  // a'.x <= b' whenever a <= a' coordinatewise and b >= b'. Rows that define
  // nonnegativity are left for the LP pass.
  const auto nonneg = norm.nonnegative_variables();
  auto defines_sign = [&](const LinearInequality& r) {
    const auto k = r.single_support();
    return k && sgn(r.coeffs[*k]) < 0 && sgn(r.rhs) <= 0;
  };
  for (std::size_t r = 0; r < m; ++r) {
    if (defines_sign(norm.rows[r])) continue;
    for (std::size_t s = 0; s < m && alive[r]; ++s) {
      if (s == r || norm.rows[r].rhs < norm.rows[s].rhs) continue;
      bool dominated = true;
      for (std::size_t k = 0; k < norm.dim() && dominated; ++k) {
        const int c = cmp(norm.rows[r].coeffs[k], norm.rows[s].coeffs[k]);
        dominated = nonneg[k] ? c <= 0 : c == 0;
      }
      if (dominated) alive[r] = false;
    }
  }

  for (std::size_t r = 0; r < m; ++r) {
    if (!alive[r]) continue;
    std::vector<std::size_t> others;
    for (std::size_t s = 0; s < m; ++s) {
      if (s != r && alive[s]) others.push_back(s);
    }
    const auto res = detail::solve_subset(norm, others, norm.rows[r].coeffs);
    if (res.status == LpStatus::optimal && res.value <= norm.rows[r].rhs) alive[r] = false;
  }

  HPolytope out(norm.variables);
  for (std::size_t r = 0; r < m; ++r) {
    if (alive[r]) out.rows.push_back(std::move(norm.rows[r]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin elimination

inline HPolytope fme_eliminate(const HPolytope& poly, const std::string& var, bool reduce = true) {
  const std::size_t v = poly.index_of(var);
  std::vector<std::string> vars = poly.variables;
  vars.erase(vars.begin() + static_cast<long>(v));
  HPolytope out(vars);

  auto drop = [v](const std::vector<Rational>& c) {
    std::vector<Rational> r = c;
    r.erase(r.begin() + static_cast<long>(v));
    return r;
  };

  std::vector<const LinearInequality*> pos, neg;
  for (const auto& row : poly.rows) {
    const int s = sgn(row.coeffs[v]);
    if (s > 0) {
      pos.push_back(&row);
    } else if (s < 0) {
      neg.push_back(&row);
    } else {
      out.rows.push_back({drop(row.coeffs), row.rhs, row.label});
    }
  }
  for (const auto* p : pos) {
    for (const auto* n : neg) {
      const Rational wp = -n->coeffs[v], wn = p->coeffs[v];
      LinearInequality row{std::vector<Rational>(poly.dim()), wp * p->rhs + wn * n->rhs, p->label + "+" + n->label};
      for (std::size_t k = 0; k < poly.dim(); ++k) row.coeffs[k] = wp * p->coeffs[k] + wn * n->coeffs[k];
      row.coeffs = drop(row.coeffs);
      out.rows.push_back(normalize_row(std::move(row)));
    }
  }
  return reduce ? minimize(out) : normalized(out);
}

inline HPolytope fme_eliminate_all(HPolytope poly, const std::vector<std::string>& order, bool reduce = true) {
  for (const auto& v : order) poly = fme_eliminate(poly, v, reduce);
  return poly;
}

// ---------------------------------------------------------------------------
// Variable manipulation

// Same polytope with columns permuted into `order` (a permutation of the variables).
inline HPolytope reorder(const HPolytope& poly, const std::vector<std::string>& order) {
  if (order.size() != poly.dim()) throw DomainError("variable sets differ");
  std::vector<std::size_t> src;
  for (const auto& name : order) src.push_back(poly.index_of(name));
  HPolytope out(order);
  for (const auto& r : poly.rows) {
    LinearInequality row{std::vector<Rational>(order.size()), r.rhs, r.label};
    for (std::size_t k = 0; k < order.size(); ++k) row.coeffs[k] = r.coeffs[src[k]];
    out.rows.push_back(std::move(row));
  }
  return out;
}

inline HPolytope rename(HPolytope poly, const std::map<std::string, std::string>& mapping) {
  for (auto& v : poly.variables) {
    if (auto it = mapping.find(v); it != mapping.end()) v = it->second;
  }
  std::set<std::string> uniq(poly.variables.begin(), poly.variables.end());
  if (uniq.size() != poly.variables.size()) throw DomainError("rename produced duplicate variables");
  return poly;
}

// Intersects with {var = value} and drops the variable.
inline HPolytope fix_variable(const HPolytope& poly, const std::string& var, const Rational& value) {
  const std::size_t v = poly.index_of(var);
  std::vector<std::string> vars = poly.variables;
  vars.erase(vars.begin() + static_cast<long>(v));
  HPolytope out(vars);
  for (const auto& r : poly.rows) {
    LinearInequality row{r.coeffs, r.rhs - r.coeffs[v] * value, r.label};
    row.coeffs.erase(row.coeffs.begin() + static_cast<long>(v));
    out.rows.push_back(std::move(row));
  }
  return normalized(out);
}

// ---------------------------------------------------------------------------
// Containment

struct Witness {
  Point point;
  std::string row_label;
  std::size_t row_index = 0;
  Rational lhs, rhs;
};

struct ContainmentResult {
  bool contained = true;
  std::optional<Witness> witness;  // point of inner violating a row of outer
};

inline void require_same_variables(const HPolytope& a, const HPolytope& b) {
  std::set<std::string> sa(a.variables.begin(), a.variables.end()), sb(b.variables.begin(), b.variables.end());
  if (sa != sb) throw DomainError("polytopes are over different variable sets");
}

inline ContainmentResult check_containment(const HPolytope& outer, const HPolytope& inner_any) {
  require_same_variables(outer, inner_any);
  const HPolytope inner = reorder(inner_any, outer.variables);
  for (std::size_t i = 0; i < outer.rows.size(); ++i) {
    const auto& row = outer.rows[i];
    const auto res = solve_lp(inner, row.coeffs);
    if (res.status == LpStatus::infeasible) return {};
    if (res.status == LpStatus::optimal && res.value <= row.rhs) continue;
    Witness w;
    w.point = res.point;
    if (res.status == LpStatus::unbounded) {
      const Rational base = row.eval(res.point), slope = row.eval(res.ray);
      Rational t = (row.rhs - base) / slope;
      if (sgn(t) < 0) t = 0;
      t += 1;
      for (std::size_t k = 0; k < w.point.size(); ++k) w.point[k] += t * res.ray[k];
    }
    w.row_label = row.label;
    w.row_index = i;
    w.lhs = row.eval(w.point);
    w.rhs = row.rhs;
    return {false, std::move(w)};
  }
  return {};
}

inline bool contains(const HPolytope& outer, const HPolytope& inner) { return check_containment(outer, inner).contained; }

inline bool equal_point_sets(const HPolytope& a, const HPolytope& b) { return contains(a, b) && contains(b, a); }

// ---------------------------------------------------------------------------
// Vertex enumeration by basis enumeration

inline constexpr std::size_t kMaxVertexDim = 6;

namespace detail {

// Solves the square system M x = r exactly; nullopt when singular.
inline std::optional<Point> solve_square(std::vector<std::vector<Rational>> M, std::vector<Rational> r) {
  const std::size_t d = r.size();
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && sgn(M[piv][col]) == 0) ++piv;
    if (piv == d) return std::nullopt;
    std::swap(M[piv], M[col]);
    std::swap(r[piv], r[col]);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == col || sgn(M[i][col]) == 0) continue;
      const Rational f = M[i][col] / M[col][col];
      for (std::size_t k = col; k < d; ++k) M[i][k] -= f * M[col][k];
      r[i] -= f * r[col];
    }
  }
  Point x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = r[i] / M[i][i];
  return x;
}

}  // namespace detail

inline std::vector<Point> enumerate_vertices(const HPolytope& poly_in) {
  const std::size_t d = poly_in.dim();
  if (d > kMaxVertexDim) {
    throw CapabilityError("vertex enumeration limited to dimension " + std::to_string(kMaxVertexDim) + ", got " +
                          std::to_string(d));
  }
  const HPolytope poly = minimize(poly_in);
  if (is_canonical_empty(poly)) return {};
  for (std::size_t k = 0; k < d; ++k) {
    for (int s : {1, -1}) {
      std::vector<Rational> c(d);
      c[k] = s;
      if (solve_lp(poly, c).status == LpStatus::unbounded) {
        throw UnboundedError("polytope is unbounded along " + poly.variables[k]);
      }
    }
  }
  if (d == 0) return {Point{}};

  std::set<Point> found;
  const std::size_t m = poly.rows.size();
  std::vector<std::size_t> pick(d);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  if (m < d) return {};
  for (;;) {
    std::vector<std::vector<Rational>> M;
    std::vector<Rational> r;
    for (auto i : pick) {
      M.push_back(poly.rows[i].coeffs);
      r.push_back(poly.rows[i].rhs);
    }
    if (auto x = detail::solve_square(std::move(M), std::move(r)); x && poly.satisfies(*x)) found.insert(*x);

    std::size_t k = d;
    while (k > 0 && pick[k - 1] == m - d + (k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return {found.begin(), found.end()};
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json row_to_json(const HPolytope& poly, const LinearInequality& row) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (std::size_t k = 0; k < poly.dim(); ++k) {
    if (sgn(row.coeffs[k]) != 0) coeffs[poly.variables[k]] = to_string(row.coeffs[k]);
  }
  nlohmann::json j{{"coeffs", coeffs}, {"rhs", to_string(row.rhs)}};
  if (!row.label.empty()) j["label"] = row.label;
  return j;
}

inline nlohmann::json to_json(const HPolytope& poly) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : poly.rows) rows.push_back(row_to_json(poly, r));
  return {{"variables", poly.variables}, {"rows", rows}};
}

inline HPolytope hpolytope_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("variables") || !j.contains("rows")) {
      throw SchemaError("H-rep needs 'variables' and 'rows'");
    }
    HPolytope poly(j.at("variables").get<std::vector<std::string>>());
    std::set<std::string> uniq(poly.variables.begin(), poly.variables.end());
    if (uniq.size() != poly.dim()) throw SchemaError("duplicate variable names");
    for (const auto& jr : j.at("rows")) {
      LinearInequality row{std::vector<Rational>(poly.dim()), parse_rational(jr.at("rhs").get<std::string>()),
                           jr.value("label", std::string{})};
      for (const auto& [name, q] : jr.at("coeffs").items()) {
        if (!uniq.count(name)) throw SchemaError("row references undeclared variable '" + name + "'");
        row.coeffs[poly.index_of(name)] = parse_rational(q.get<std::string>());
      }
      poly.rows.push_back(std::move(row));
    }
    return poly;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("H-rep JSON: ") + e.what());
  }
}

inline nlohmann::json vertices_to_json(const std::vector<Point>& vertices) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : vertices) {
    nlohmann::json p = nlohmann::json::array();
    for (const auto& q : v) p.push_back(to_string(q));
    out.push_back(std::move(p));
  }
  return out;
}

inline nlohmann::json point_to_json(const std::vector<std::string>& vars, const Point& x) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t k = 0; k < vars.size(); ++k) out[vars[k]] = to_string(x[k]);
  return out;
}

// Human-readable row, e.g. "2 R_1234 + R_12 <= 13/2".
inline std::string format_row(const HPolytope& poly, const LinearInequality& row) {
  std::string s;
  for (std::size_t k = 0; k < poly.dim(); ++k) {
    const Rational& q = row.coeffs[k];
    if (sgn(q) == 0) continue;
    if (s.empty()) {
      s += sgn(q) < 0 ? "-" : "";
    } else {
      s += sgn(q) < 0 ? " - " : " + ";
    }
    const Rational mag = abs(q);
    if (mag != 1) s += to_string(mag) + " ";
    s += poly.variables[k];
  }
  if (s.empty()) s = "0";
  return s + " <= " + to_string(row.rhs);
}

}  // namespace groupcast
