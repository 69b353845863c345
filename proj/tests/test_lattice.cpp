#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace groupcast;

TEST(ReceiverSet, ParseAndPrint) {
  const auto s = ReceiverSet::parse("134");
  EXPECT_EQ(s, ReceiverSet::of({1, 3, 4}));
  EXPECT_EQ(s.to_string(), "134");
  EXPECT_EQ(s.size(), 3);
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(ReceiverSet::parse("1a").receivers(), (std::vector<int>{1, 10}));
  EXPECT_EQ(ReceiverSet::of({2}).complement(3), ReceiverSet::parse("13"));
  EXPECT_THROW(ReceiverSet::parse("x"), SchemaError);
}

TEST(SetFamily, PowerSetExcludesEmpty) {
  EXPECT_EQ(SetFamily::power_set(3).size(), 7U);
  EXPECT_EQ(SetFamily::power_set(5).size(), 31U);
  EXPECT_THROW(SetFamily(3, {ReceiverSet::parse("14")}), InvalidFamilyError);
  EXPECT_THROW(SetFamily(3, {ReceiverSet(0)}), InvalidFamilyError);
}

TEST(UpClosure, Examples) {
  EXPECT_EQ(up_closure(fam(3, {"13"})), fam(3, {"13", "123"}));
  EXPECT_TRUE(up_closure(SetFamily(3)).empty());
  EXPECT_EQ(up_closure(fam(4, {"12", "34"})), fam(4, {"12", "123", "124", "1234", "34", "134", "234"}));
}

TEST(DownClosure, Examples) {
  EXPECT_EQ(down_closure(fam(3, {"13"})), fam(3, {"1", "3", "13"}));
  EXPECT_EQ(down_closure(fam(3, {"123"})), SetFamily::power_set(3));
  EXPECT_EQ(down_closure(fam(4, {"12"}), receiver_family(1, 4)), fam(4, {"1", "12"}));
  EXPECT_THROW(down_closure(fam(4, {"23"}), receiver_family(1, 4)), DomainError);
}

TEST(ReceiverFamily, Examples) {
  EXPECT_EQ(receiver_family(3, 3), fam(3, {"3", "13", "23", "123"}));
  EXPECT_TRUE(receiver_family(1, SetFamily(3)).empty());
  EXPECT_EQ(receiver_family(4, 4), fam(4, {"4", "14", "24", "34", "124", "134", "234", "1234"}));
  EXPECT_THROW(receiver_family(0, 3), DomainError);
  EXPECT_THROW(receiver_family(4, 3), DomainError);
}

TEST(ClosureProperties, IdempotentMonotoneExtensive) {
  Rng rng(11);
  const auto P = SetFamily::power_set(4);
  for (int t = 0; t < 200; ++t) {
    const auto a = P.filter([&](ReceiverSet) { return uniform_below(rng, 4) == 0; });
    const auto b = a | P.filter([&](ReceiverSet) { return uniform_below(rng, 6) == 0; });
    EXPECT_EQ(up_closure(up_closure(a)), up_closure(a));
    EXPECT_EQ(down_closure(down_closure(a)), down_closure(a));
    EXPECT_TRUE(a.subset_of(up_closure(a)));
    EXPECT_TRUE(a.subset_of(down_closure(a)));
    EXPECT_TRUE(up_closure(a).subset_of(up_closure(b)));
    EXPECT_TRUE(down_closure(a).subset_of(down_closure(b)));
    EXPECT_TRUE(up_closure(a).is_up_set());
    EXPECT_TRUE(down_closure(a).is_down_set(P));
  }
}

TEST(LatticeIdentities, SmallK) {
  EXPECT_TRUE(check_lattice_identities(2));
  EXPECT_TRUE(check_lattice_identities(3));
  EXPECT_TRUE(check_lattice_identities(6));
  EXPECT_THROW(check_lattice_identities(17), CapabilityError);
}

TEST(LatticeIdentities, ReceiverFamilySize) {
  for (int K = 1; K <= 8; ++K) {
    for (int i = 1; i <= K; ++i) EXPECT_EQ(receiver_family(i, K).size(), std::size_t{1} << (K - 1));
  }
}
