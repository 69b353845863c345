#pragma once

// Exact rational simplex for  max c.x  s.t.  A x <= b,  x free.
//
// Dictionary form with Bland's rule; a single artificial column handles
// infeasible starts. Small dense problems only (tens of columns, a few
// hundred rows).

#include <cstddef>
#include <optional>
#include <vector>

#include "rational.hpp"

namespace groupcast {

enum class LpStatus { optimal, unbounded, infeasible };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational value;                // optimum when status == optimal
  std::vector<Rational> point;   // feasible point (optimal vertex, or ray origin)
  std::vector<Rational> ray;     // improving direction when unbounded
};

namespace detail {

class Dictionary {
 public:
  // Basic variable ids per row, nonbasic ids per column.
  std::vector<int> basic, nonbasic;
  std::vector<Rational> rhs;
  std::vector<std::vector<Rational>> a;  // x_B[i] = rhs[i] - sum_j a[i][j] x_N[j]
  Rational obj0;
  std::vector<Rational> obj;  // z = obj0 + sum_j obj[j] x_N[j]

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t m = rhs.size(), n = nonbasic.size();
    Rational inv = 1 / a[r][c];
    rhs[r] *= inv;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != c) a[r][j] *= inv;
    }
    a[r][c] = inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      const Rational f = a[i][c];
      rhs[i] -= f * rhs[r];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c || sgn(a[r][j]) == 0) continue;
        a[i][j] -= f * a[r][j];
      }
      a[i][c] = -f * a[r][c];
    }
    if (sgn(obj[c]) != 0) {
      const Rational f = obj[c];
      obj0 += f * rhs[r];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c || sgn(a[r][j]) == 0) continue;
        obj[j] -= f * a[r][j];
      }
      obj[c] = -f * a[r][c];
    }
    std::swap(basic[r], nonbasic[c]);
  }

  // Runs Bland-rule pivots until optimal; returns the entering column on
  // unboundedness.
  std::optional<std::size_t> optimize() {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < obj.size(); ++j) {
        if (sgn(obj[j]) > 0 && (!enter || nonbasic[j] < nonbasic[*enter])) enter = j;
      }
      if (!enter) return std::nullopt;
      const std::size_t c = *enter;
      std::optional<std::size_t> leave;
      for (std::size_t i = 0; i < rhs.size(); ++i) {
        if (sgn(a[i][c]) <= 0) continue;
        if (!leave) {
          leave = i;
          continue;
        }
        // rhs[i]/a[i][c] vs rhs[l]/a[l][c], both denominators positive
        const int cmp = ::cmp(rhs[i] * a[*leave][c], rhs[*leave] * a[i][c]);
        if (cmp < 0 || (cmp == 0 && basic[i] < basic[*leave])) leave = i;
      }
      if (!leave) return c;
      pivot(*leave, c);
    }
  }
};

}  // namespace detail

// A: m rows of n coefficients. `nonneg[v]` may mark variables known to be >= 0
// (they are then not split into a difference of two columns).
inline LpResult solve_lp(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                         const std::vector<Rational>& c, const std::vector<bool>& nonneg = {}) {
  const std::size_t m = A.size(), n = c.size();

  // Column layout: structural columns, each original variable maps to
  // (pos column, optional neg column).
  std::vector<int> pos_col(n), neg_col(n, -1);
  int ncols = 0;
  for (std::size_t v = 0; v < n; ++v) {
    pos_col[v] = ncols++;
    if (nonneg.empty() || !nonneg[v]) neg_col[v] = ncols++;
  }
  const int artificial = ncols + static_cast<int>(m);

  detail::Dictionary d;
  d.basic.resize(m);
  d.rhs = b;
  d.a.assign(m, std::vector<Rational>(ncols));
  for (std::size_t i = 0; i < m; ++i) {
    d.basic[i] = ncols + static_cast<int>(i);
    for (std::size_t v = 0; v < n; ++v) {
      if (sgn(A[i][v]) == 0) continue;
      d.a[i][pos_col[v]] = A[i][v];
      if (neg_col[v] >= 0) d.a[i][neg_col[v]] = -A[i][v];
    }
  }
  for (int j = 0; j < ncols; ++j) d.nonbasic.push_back(j);

  std::optional<std::size_t> worst;
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(d.rhs[i]) < 0 && (!worst || d.rhs[i] < d.rhs[*worst])) worst = i;
  }

  LpResult result;
  if (worst) {
    // Phase 1: maximize -x0 with x0 entering every row at coefficient -1.
    d.nonbasic.push_back(artificial);
    for (auto& row : d.a) row.push_back(Rational(-1));
    d.obj.assign(d.nonbasic.size(), Rational(0));
    d.obj.back() = -1;
    d.obj0 = 0;
    d.pivot(*worst, d.nonbasic.size() - 1);
    d.optimize();
    if (sgn(d.obj0) < 0) return result;

    for (std::size_t i = 0; i < d.basic.size(); ++i) {
      if (d.basic[i] != artificial) continue;
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < d.nonbasic.size(); ++j) {
        if (sgn(d.a[i][j]) != 0) {
          col = j;
          break;
        }
      }
      if (col) {
        d.pivot(i, *col);
      } else {
        d.basic.erase(d.basic.begin() + static_cast<long>(i));
        d.rhs.erase(d.rhs.begin() + static_cast<long>(i));
        d.a.erase(d.a.begin() + static_cast<long>(i));
      }
      break;
    }
    for (std::size_t j = 0; j < d.nonbasic.size(); ++j) {
      if (d.nonbasic[j] != artificial) continue;
      d.nonbasic.erase(d.nonbasic.begin() + static_cast<long>(j));
      for (auto& row : d.a) row.erase(row.begin() + static_cast<long>(j));
      break;
    }
  }

  // Phase 2 objective over structural columns.
  std::vector<Rational> cost(ncols);
  for (std::size_t v = 0; v < n; ++v) {
    cost[pos_col[v]] = c[v];
    if (neg_col[v] >= 0) cost[neg_col[v]] = -c[v];
  }
  d.obj.assign(d.nonbasic.size(), Rational(0));
  d.obj0 = 0;
  for (std::size_t j = 0; j < d.nonbasic.size(); ++j) {
    if (d.nonbasic[j] < ncols) d.obj[j] = cost[d.nonbasic[j]];
  }
  for (std::size_t i = 0; i < d.basic.size(); ++i) {
    if (d.basic[i] >= ncols || sgn(cost[d.basic[i]]) == 0) continue;
    const Rational& w = cost[d.basic[i]];
    d.obj0 += w * d.rhs[i];
    for (std::size_t j = 0; j < d.nonbasic.size(); ++j) d.obj[j] -= w * d.a[i][j];
  }

  const auto unbounded_col = d.optimize();

  auto column_values = [&](const std::vector<Rational>& basic_vals, std::optional<std::size_t> entering) {
    std::vector<Rational> y(ncols);
    for (std::size_t i = 0; i < d.basic.size(); ++i) {
      if (d.basic[i] < ncols) y[d.basic[i]] = basic_vals[i];
    }
    if (entering && d.nonbasic[*entering] < ncols) y[d.nonbasic[*entering]] = 1;
    std::vector<Rational> x(n);
    for (std::size_t v = 0; v < n; ++v) {
      x[v] = y[pos_col[v]];
      if (neg_col[v] >= 0) x[v] -= y[neg_col[v]];
    }
    return x;
  };

  result.point = column_values(d.rhs, std::nullopt);
  if (unbounded_col) {
    std::vector<Rational> delta(d.basic.size());
    for (std::size_t i = 0; i < d.basic.size(); ++i) delta[i] = -d.a[i][*unbounded_col];
    result.status = LpStatus::unbounded;
    result.ray = column_values(delta, unbounded_col);
    return result;
  }
  result.status = LpStatus::optimal;
  result.value = d.obj0;
  return result;
}

}  // namespace groupcast
