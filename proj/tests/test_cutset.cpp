#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace groupcast;

TEST(SetExpr, EvalOnMessageFamilies) {
  const DiamondMessageSet m(4);
  const auto fams = receiver_families(m.family());
  const auto e = SetExpr::leaf(3) | SetExpr::leaf(4);
  EXPECT_EQ(eval_set_expr(e, fams), fam(4, {"1234", "123", "124"}));
  EXPECT_EQ(eval_set_expr(SetExpr::leaf(2), fams), fams[1]);
}

TEST(SetExpr, IntersectionOnP) {
  const auto fams = receiver_families(SetFamily::power_set(3));
  EXPECT_EQ(eval_set_expr(SetExpr::leaf(2) & SetExpr::leaf(3), fams), fam(3, {"23", "123"}));
  EXPECT_THROW(eval_set_expr(SetExpr::leaf(4), fams), DomainError);
}

TEST(SetExpr, JsonRoundTrip) {
  const auto e = SetExpr::unite({SetExpr::leaf(3), SetExpr::leaf(4) & SetExpr::leaf(1)});
  const auto j = to_json(e);
  EXPECT_EQ(j["op"], "union");
  EXPECT_EQ(j["args"][0]["leaf"], 3);
  EXPECT_EQ(to_json(set_expr_from_json(j)), j);
  EXPECT_THROW(set_expr_from_json(nlohmann::json::parse(R"({"op":"xor","args":[]})")), SchemaError);
}

TEST(GcsRateLhs, Examples) {
  const DiamondMessageSet m(4);
  const auto A = SetExpr::leaf(3), B = SetExpr::leaf(4);
  const GcsBound first{{1, A | B}};
  EXPECT_EQ(gcs_rate_lhs(first, m), (std::map<std::string, Rational>{{"R_1234", 1}, {"R_124", 1}, {"R_123", 1}}));

  const GcsBound second{{1, SetExpr::unite({A, B, SetExpr::leaf(1)})}, {1, A & B}};
  EXPECT_EQ(gcs_rate_lhs(second, m),
            (std::map<std::string, Rational>{{"R_1234", 2}, {"R_124", 1}, {"R_123", 1}, {"R_12", 1}}));

  // no message reaches only receivers 3 and 4 without also reaching 1 and 2
  const GcsBound none{{1, A & B & (SetExpr::leaf(1) & SetExpr::leaf(2))}};
  const auto lhs = gcs_rate_lhs(none, m);
  EXPECT_EQ(lhs.at("R_1234"), 1);
  EXPECT_EQ(lhs.count("R_12"), 0U);
}

TEST(GcsCapacity, Examples) {
  const GcsBound b{{1, SetExpr::leaf(2) | SetExpr::leaf(3)}};
  EXPECT_EQ(gcs_capacity_rhs(b, unit_net(3)), 6);
  const GcsBound zero{{0, SetExpr::leaf(1)}};
  EXPECT_EQ(gcs_capacity_rhs(zero, unit_net(3)), 0);
  EXPECT_THROW((GcsBound{{-1, SetExpr::leaf(1)}}), DomainError);
}

TEST(GcsCapacity, UpperBoundOneMatchesRewrittenRow) {
  Rng rng(14);
  for (int t = 0; t < 10; ++t) {
    const auto net = t == 0 ? unit_net(4) : random_network(4, rng);
    const auto A = SetExpr::leaf(3), B = SetExpr::leaf(4);
    for (int j = 1; j <= 2; ++j) {
      const GcsBound ub{{1, SetExpr::unite({A, B, SetExpr::leaf(j)})}, {1, A & B}};
      const auto P = SetFamily::power_set(4);
      const auto Wj = receiver_family(j, P);
      const Rational rewritten = capacity_sum(net, down_closure(SetFamily(4, {ReceiverSet::parse("12")}), Wj)) +
                             capacity_sum(net, receiver_family(3, P)) + capacity_sum(net, receiver_family(4, P));
      EXPECT_EQ(gcs_capacity_rhs(ub, net), rewritten);
    }
  }
  // unit capacities: 2 + 8 + 8
  const GcsBound ub{{1, SetExpr::unite({SetExpr::leaf(3), SetExpr::leaf(4), SetExpr::leaf(1)})},
                    {1, SetExpr::leaf(3) & SetExpr::leaf(4)}};
  EXPECT_EQ(gcs_capacity_rhs(ub, unit_net(4)), 18);
}

TEST(GcsCapacity, UpperBoundZeroKFour) {
  const auto net = unit_net(4);
  const GcsBound ub{{1, SetExpr::leaf(3) | SetExpr::leaf(4)}};
  EXPECT_EQ(gcs_capacity_rhs(ub, net), 12);
  EXPECT_EQ(row_rhs(theorem2_region(net), "th2.3"), 12);
}

TEST(Extremal, ModularIsTight) {
  Rng rng(19);
  for (int t = 0; t < 30; ++t) {
    const int K = 3 + t % 4;
    const auto fn = modular_capacity_fn(random_network(K, rng));
    EXPECT_TRUE(evaluate_extremal(fn, 0, 0).tight);
    for (int j = 1; j <= K - 2; ++j) {
      EXPECT_TRUE(evaluate_extremal(fn, 1, j).tight);
      EXPECT_TRUE(evaluate_extremal(fn, 2, j).tight);
    }
  }
}

TEST(Extremal, TruncatedCardinality) {
  Rng rng(27);
  for (int t = 0; t < 500; ++t) {
    const int K = 3 + static_cast<int>(uniform_below(rng, 4));
    const int cap = static_cast<int>(uniform_int(rng, 0, 1 << K));
    const int j = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(K - 2)));
    const auto fn = truncated_cardinality_fn(K, cap);
    for (int w = 0; w <= 2; ++w) EXPECT_TRUE(check_extremal_inequality(fn, w, j));
  }
}

TEST(Extremal, CoverageAndMatroidRank) {
  Rng rng(29);
  for (int t = 0; t < 300; ++t) {
    const int K = 3 + t % 4;
    const auto cov = coverage_fn(K, rng);
    const auto rank = partition_rank_fn(K, rng);
    for (int j = 1; j <= K - 2; ++j) {
      for (int w = 0; w <= 2; ++w) {
        EXPECT_TRUE(check_extremal_inequality(cov, w, j));
        EXPECT_TRUE(check_extremal_inequality(rank, w, j));
      }
    }
  }
}

TEST(Extremal, ZeroFunction) {
  const SubmodularFn zero{3, "zero", [](const SetFamily&) { return Rational(0); }, true};
  const auto o = evaluate_extremal(zero, 2, 1);
  EXPECT_EQ(o.lhs, 0);
  EXPECT_EQ(o.rhs, 0);
  EXPECT_TRUE(o.tight);
}

TEST(Extremal, GeneratorsAreSubmodular) {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    EXPECT_TRUE(is_submodular_exhaustive(coverage_fn(2, rng)));
    EXPECT_TRUE(is_submodular_exhaustive(partition_rank_fn(2, rng)));
    EXPECT_TRUE(is_submodular_exhaustive(truncated_cardinality_fn(2, t % 4)));
  }
}

TEST(Extremal, RejectsNonSubmodular) {
  // |W|^2 is supermodular
  const SubmodularFn sq{2, "square", [](const SetFamily& w) { return Rational(static_cast<long>(w.size() * w.size())); }};
  EXPECT_FALSE(is_submodular_exhaustive(sq));
  const SubmodularFn sq3{3, "square", sq.f};
  EXPECT_FALSE(check_extremal_inequality(sq3, 0, 0));
}

TEST(Outer, RowsMatchTheoremTwo) {
  Rng rng(37);
  for (int t = 0; t < 12; ++t) {
    const int K = 3 + t % 4;
    const auto net = random_network(K, rng);
    const auto outer = outer_region(net);
    const auto t2 = theorem2_region(net);
    ASSERT_EQ(outer.rows.size(), t2.rows.size());
    ASSERT_EQ(outer.variables, t2.variables);
    for (std::size_t i = 0; i < outer.rows.size(); ++i) {
      const auto a = normalize_row(outer.rows[i]), b = normalize_row(t2.rows[i]);
      EXPECT_EQ(a.coeffs, b.coeffs);
      EXPECT_EQ(a.rhs, b.rhs);
    }
    EXPECT_TRUE(equal_point_sets(outer, t2));
  }
}

TEST(Outer, ZeroIsOrigin) {
  const auto outer = outer_region(CombinationNetwork(3));
  const auto r = solve_lp(outer, std::vector<Rational>(4, 1));
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.value, 0);
}
