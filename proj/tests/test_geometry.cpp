#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace groupcast;

namespace {

HPolytope box_xy() {
  HPolytope p({"x", "y"});
  p.add({{"x", 1}}, 1);
  p.add({{"y", 1}}, 1);
  p.add_nonnegativity({"x", "y"});
  return p;
}

}  // namespace

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(Q("6/4"), Rational(3, 2));
  EXPECT_EQ(to_string(Q("6/4")), "3/2");
  EXPECT_EQ(to_string(Q("-7")), "-7");
  EXPECT_THROW(parse_rational("1.5"), SchemaError);
  EXPECT_THROW(parse_rational("1/0"), SchemaError);
  EXPECT_THROW(parse_rational(""), SchemaError);
}

TEST(Lp, Basic) {
  HPolytope p({"x"});
  p.add({{"x", 1}}, 1);
  p.add({{"x", -1}}, 0);
  auto r = solve_lp(p, std::map<std::string, Rational>{{"x", 1}});
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.value, 1);

  HPolytope half({"x"});
  half.add({{"x", -1}}, 0);
  EXPECT_EQ(solve_lp(half, std::map<std::string, Rational>{{"x", 1}}).status, LpStatus::unbounded);

  HPolytope empty({"x"});
  empty.add({{"x", 1}}, -1);
  empty.add({{"x", -1}}, 0);
  EXPECT_EQ(solve_lp(empty, std::map<std::string, Rational>{{"x", 1}}).status, LpStatus::infeasible);
}

TEST(Lp, FreeVariablesAndMinimize) {
  // min x + y over x + y >= 3/2, x <= 1, y <= 1, no sign constraints
  HPolytope p({"x", "y"});
  p.add({{"x", -1}, {"y", -1}}, Q("-3/2"));
  p.add({{"x", 1}}, 1);
  p.add({{"y", 1}}, 1);
  auto r = solve_lp(p, std::map<std::string, Rational>{{"x", 1}, {"y", 1}}, false);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.value, Q("3/2"));
  auto s = solve_lp(p, std::map<std::string, Rational>{{"x", 1}}, false);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_EQ(s.value, Q("1/2"));
}

TEST(Lp, ExampleOnePolytopeMaxCommonRate) {
  const auto poly = theorem2_region(unit_net(4));
  auto r = solve_lp(poly, std::map<std::string, Rational>{{"R_1234", 1}});
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.value, 8);
  EXPECT_TRUE(poly.satisfies(r.point));
}

TEST(Normalize, ScalesToCoprimeIntegers) {
  LinearInequality row{{Q("1/2"), Q("3/4")}, Q("5/4"), "r"};
  const auto n = normalize_row(row);
  EXPECT_EQ(n.coeffs[0], 2);
  EXPECT_EQ(n.coeffs[1], 3);
  EXPECT_EQ(n.rhs, 5);
}

TEST(Fme, NoLowerBoundGivesFullSpace) {
  HPolytope p({"x"});
  p.add({{"x", 1}}, 1);
  const auto r = fme_eliminate(p, "x");
  EXPECT_TRUE(r.variables.empty());
  EXPECT_TRUE(r.rows.empty());
}

TEST(Fme, OnePairing) {
  HPolytope p({"x", "y"});
  p.add({{"y", 1}, {"x", -1}}, 0);
  p.add({{"x", 1}}, 3);
  p.add({{"x", -1}}, 0);
  p.add({{"y", -1}}, 0);
  const auto r = fme_eliminate(p, "x");
  HPolytope expect({"y"});
  expect.add({{"y", 1}}, 3);
  expect.add({{"y", -1}}, 0);
  EXPECT_TRUE(equal_point_sets(r, expect));
  EXPECT_EQ(r.rows.size(), 2U);
}

TEST(Fme, ProjectionSoundness) {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    HPolytope p({"x", "y", "z"});
    for (int i = 0; i < 6; ++i) {
      p.add({{"x", uniform_int(rng, -3, 3)}, {"y", uniform_int(rng, -3, 3)}, {"z", uniform_int(rng, -3, 3)}},
            uniform_int(rng, 0, 6));
    }
    p.add_nonnegativity({"x", "y", "z"});
    const auto proj = fme_eliminate(p, "z");
    // every LP optimum over the projection is attained by a feasible lift
    for (int k = 0; k < 4; ++k) {
      const std::map<std::string, Rational> obj{{"x", uniform_int(rng, -2, 2)}, {"y", uniform_int(rng, -2, 2)}};
      const auto a = solve_lp(proj, obj);
      const auto b = solve_lp(p, obj);
      ASSERT_EQ(a.status, b.status);
      if (a.status == LpStatus::optimal) {
      EXPECT_EQ(a.value, b.value);
    }
    }
  }
}

TEST(Redundancy, Examples) {
  HPolytope p({"x"});
  p.add({{"x", 1}}, 1);
  LinearInequality loose{{Rational(1)}, Rational(2), ""};
  LinearInequality tight{{Rational(1)}, Rational(1, 2), ""};
  EXPECT_TRUE(is_redundant(loose, p));
  EXPECT_FALSE(is_redundant(tight, p));

  HPolytope q({"x"});
  q.add({{"x", 1}}, 2);
  LinearInequality one{{Rational(1)}, Rational(1), ""};
  EXPECT_FALSE(is_redundant(one, q));
}

TEST(Minimize, DropsImpliedRows) {
  HPolytope p({"x"});
  p.add({{"x", 1}}, 1, "a");
  p.add({{"x", 1}}, 2, "b");
  const auto m = minimize(p);
  ASSERT_EQ(m.rows.size(), 1U);
  EXPECT_EQ(m.rows[0].rhs, 1);
  EXPECT_EQ(minimize(m).rows.size(), 1U);
}

TEST(Minimize, PreservesLpOptima) {
  Rng rng(9);
  const auto poly = theorem1_region(evaluate_optimal_distribution(random_network(4, rng)));
  const auto m = minimize(poly);
  EXPECT_LE(m.rows.size(), poly.rows.size());
  for (int t = 0; t < 100; ++t) {
    std::vector<Rational> c(poly.dim());
    for (auto& q : c) q = uniform_int(rng, -3, 5);
    const auto a = solve_lp(poly, c), b = solve_lp(m, c);
    ASSERT_EQ(a.status, b.status);
    if (a.status == LpStatus::optimal) {
      EXPECT_EQ(a.value, b.value);
    }
  }
}

TEST(Minimize, InfeasibleCollapsesToCanonicalEmpty) {
  HPolytope p({"x"});
  p.add({{"x", 1}}, -1);
  p.add({{"x", -1}}, 0);
  const auto m = minimize(p);
  EXPECT_TRUE(is_canonical_empty(m));
  EXPECT_FALSE(is_feasible(m));
}

TEST(Containment, Examples) {
  HPolytope outer({"x"}), inner({"x"});
  outer.add({{"x", 1}}, 2);
  inner.add({{"x", 1}}, 1);
  inner.add({{"x", -1}}, 0);
  EXPECT_TRUE(contains(outer, inner));

  HPolytope a({"x"}), b({"x"});
  a.add({{"x", 1}}, 1);
  b.add({{"x", 1}}, 2);
  b.add({{"x", -1}}, 0);
  const auto res = check_containment(a, b);
  ASSERT_FALSE(res.contained);
  ASSERT_TRUE(res.witness);
  EXPECT_TRUE(b.satisfies(res.witness->point));
  EXPECT_GT(a.rows[res.witness->row_index].eval(res.witness->point), a.rows[res.witness->row_index].rhs);
}

TEST(Containment, UnboundedInnerWitness) {
  HPolytope outer({"x", "y"}), inner({"x", "y"});
  outer.add({{"x", 1}, {"y", 1}}, 10);
  inner.add_nonnegativity({"x", "y"});
  const auto res = check_containment(outer, inner);
  ASSERT_FALSE(res.contained);
  EXPECT_TRUE(inner.satisfies(res.witness->point));
  EXPECT_GT(res.witness->lhs, res.witness->rhs);
}

TEST(Vertices, Square) {
  const auto v = enumerate_vertices(box_xy());
  EXPECT_EQ(v.size(), 4U);
}

TEST(Vertices, Simplex) {
  HPolytope p({"x", "y"});
  p.add({{"x", 1}, {"y", 1}}, 1);
  p.add_nonnegativity({"x", "y"});
  auto v = enumerate_vertices(p);
  std::sort(v.begin(), v.end());
  const std::vector<Point> expect{{0, 0}, {0, 1}, {1, 0}};
  EXPECT_EQ(v, expect);
}

TEST(Vertices, Capability) {
  HPolytope p({"a", "b", "c", "d", "e", "f", "g"});
  EXPECT_THROW(enumerate_vertices(p), CapabilityError);
  HPolytope half({"x"});
  half.add({{"x", -1}}, 0);
  EXPECT_THROW(enumerate_vertices(half), UnboundedError);
}

TEST(Vertices, AgreeWithLpOnTheoremTwo) {
  const auto poly = minimize(theorem2_region(unit_net(3)));
  const auto verts = enumerate_vertices(poly);
  Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    std::vector<Rational> c(poly.dim());
    for (auto& q : c) q = uniform_int(rng, -4, 4);
    Rational best;
    bool first = true;
    for (const auto& v : verts) {
      Rational s;
      for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * v[k];
      if (first || s > best) best = s;
      first = false;
    }
    const auto r = solve_lp(poly, c);
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_EQ(r.value, best);
  }
}

TEST(Vertices, EqualPointSetsGiveEqualVertexSets) {
  const auto net = unit_net(3);
  auto a = enumerate_vertices(minimize(theorem2_region(net)));
  auto b = enumerate_vertices(minimize(reorder(outer_region(net), theorem2_region(net).variables)));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

TEST(Json, HRepRoundTrip) {
  const auto poly = minimize(theorem2_region(unit_net(4)));
  const auto j = to_json(poly);
  const auto back = hpolytope_from_json(j);
  EXPECT_EQ(to_json(back), j);
  EXPECT_EQ(to_json(minimize(back)), j);
  EXPECT_THROW(hpolytope_from_json(nlohmann::json{{"rows", nlohmann::json::array()}}), SchemaError);
  auto bad = j;
  bad["rows"][0]["coeffs"]["nope"] = "1";
  EXPECT_THROW(hpolytope_from_json(bad), SchemaError);
}

TEST(Json, RationalsAreStrings) {
  HPolytope p({"x"});
  p.add({{"x", 2}}, Q("13/2"));
  const auto j = to_json(p);
  EXPECT_EQ(j["rows"][0]["coeffs"]["x"], "2");
  EXPECT_EQ(j["rows"][0]["rhs"], "13/2");
}
