#include <gtest/gtest.h>

#include <set>

#include "heckecell/coxeter.hpp"

using namespace heckecell;

namespace {

// Order of a word under the group law, by repeated multiplication.
int element_order(const CoxeterGroup& g, int w) {
  int x = w, k = 1;
  while (x != g.identity()) {
    x = g.mul(x, w);
    ++k;
  }
  return k;
}

}  // namespace

TEST(Enumerate, ClassicalOrders) {
  struct Case {
    const char* name;
    int order;
    int longest;
  };
  // |A_n| = (n+1)!, |B_n| = 2^n n!, |I2(m)| = 2m, |H3| = 120.
  for (Case c : {Case{"A1", 2, 1}, Case{"A2", 6, 3}, Case{"A3", 24, 6}, Case{"A4", 120, 10}, Case{"B2", 8, 4},
                 Case{"B3", 48, 9}, Case{"I2:5", 10, 5}, Case{"I2:12", 24, 12}, Case{"H3", 120, 15}}) {
    CoxeterGroup g(coxeter_type(c.name));
    EXPECT_EQ(g.size(), c.order) << c.name;
    EXPECT_EQ(g.max_length(), c.longest) << c.name;
  }
}

TEST(Enumerate, BoundTooSmall) {
  try {
    CoxeterGroup g(coxeter_type("B3"), 40);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "group not finite or bound too small");
  }
}

TEST(Enumerate, CycleInGraphRejected) {
  CoxeterMatrix cm{"affine", {"s1", "s2", "s3"}, {{1, 3, 3}, {3, 1, 3}, {3, 3, 1}}};
  EXPECT_THROW(CoxeterGroup g(cm), Error);
}

TEST(Enumerate, RelationsAndLengthsHold) {
  for (const char* name : {"A3", "B3", "I2:7", "H3"}) {
    CoxeterGroup g(coxeter_type(name));
    for (int s = 0; s < g.rank(); ++s)
      for (int t = 0; t < g.rank(); ++t)
        EXPECT_EQ(element_order(g, g.mul(g.generator(s), g.generator(t))), g.m(s, t)) << name;
    for (int w = 0; w < g.size(); ++w) {
      EXPECT_EQ(g.inverse(g.inverse(w)), w);
      EXPECT_EQ(g.length(g.inverse(w)), g.length(w));
      EXPECT_EQ(g.mul(w, g.inverse(w)), g.identity());
      EXPECT_EQ(static_cast<int>(g.word(w).size()), g.length(w));
      EXPECT_EQ(g.from_word(g.word(w)), w);
      for (int s = 0; s < g.rank(); ++s) {
        int d = g.length(g.lmul(s, w)) - g.length(w);
        EXPECT_TRUE(d == 1 || d == -1);
        EXPECT_EQ(g.in_left_descent(s, w), d < 0);
        EXPECT_EQ(g.in_right_descent(w, s), g.length(g.rmul(w, s)) < g.length(w));
        EXPECT_EQ(g.lmul(s, w), g.mul(g.generator(s), w));
      }
    }
  }
}

TEST(Enumerate, IdsAreShortLexSorted) {
  CoxeterGroup g(coxeter_type("B3"));
  for (int w = 1; w < g.size(); ++w) {
    EXPECT_LE(g.length(w - 1), g.length(w));
    if (g.length(w - 1) == g.length(w)) {
      EXPECT_LT(g.word(w - 1), g.word(w));
    }
  }
}

TEST(Conjugacy, OddPathRuleMatchesBruteForce) {
  for (const char* name : {"A3", "B2", "B3", "I2:5", "I2:6", "H3"}) {
    CoxeterGroup g(coxeter_type(name));
    for (int s = 0; s < g.rank(); ++s)
      for (int t = 0; t < g.rank(); ++t) {
        bool conj = false;
        for (int w = 0; w < g.size() && !conj; ++w)
          conj = g.mul(g.mul(w, g.generator(s)), g.inverse(w)) == g.generator(t);
        EXPECT_EQ(conj, g.class_of(s) == g.class_of(t)) << name;
      }
  }
}

TEST(Weights, UniversalExamples) {
  CoxeterGroup a2(coxeter_type("A2"));
  auto L = weight_universal(a2);
  EXPECT_EQ(L.rank, 1);
  EXPECT_EQ(L.values[0], ExponentVec{1});
  EXPECT_EQ(L.values[1], ExponentVec{1});
  CoxeterGroup b2(coxeter_type("B2"));
  auto Lb = weight_universal(b2);
  EXPECT_EQ(Lb.rank, 2);
  EXPECT_EQ(Lb.values[0], (ExponentVec{0, 1}));
  EXPECT_EQ(Lb.values[1], (ExponentVec{1, 0}));
  EXPECT_EQ(weight_universal(CoxeterGroup(coxeter_type("I2:6"))).rank, 2);
  EXPECT_EQ(weight_universal(CoxeterGroup(coxeter_type("I2:5"))).rank, 1);
}

TEST(Weights, ValidateExamples) {
  CoxeterGroup b2(coxeter_type("B2"));
  WeightFunction L{2, {ExponentVec{0, 1}, ExponentVec{1, 0}}};
  EXPECT_TRUE(validate_weight(b2, L, MonomialOrder({1, 0})).ok);
  WeightFunction bad{2, {ExponentVec{-1, 0}, ExponentVec{1, 0}}};
  EXPECT_EQ(validate_weight(b2, bad, MonomialOrder({1, 0})).message, "L(s) > 0 fails");
  CoxeterGroup a2(coxeter_type("A2"));
  WeightFunction unequal{1, {ExponentVec{1}, ExponentVec{2}}};
  EXPECT_EQ(validate_weight(a2, unequal, MonomialOrder::natural(1)).message,
            "conjugate generators with unequal weights");
}

TEST(Weights, UniversalPassesEveryPriorityOrder) {
  for (const char* name : {"A3", "B3", "I2:8", "H3"}) {
    CoxeterGroup g(coxeter_type(name));
    auto L = weight_universal(g);
    std::vector<int> p(L.rank);
    std::iota(p.begin(), p.end(), 0);
    do {
      EXPECT_TRUE(validate_weight(g, L, MonomialOrder(p)).ok);
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST(Bruhat, SubwordOracle) {
  // y <= w iff some subword of the reduced word of w is a word for y.
  for (const char* name : {"A3", "B2", "I2:5"}) {
    CoxeterGroup g(coxeter_type(name));
    for (int w = 0; w < g.size(); ++w) {
      const auto& wd = g.word(w);
      std::set<int> below;
      for (unsigned mask = 0; mask < (1u << wd.size()); ++mask) {
        int x = 0;
        for (std::size_t i = 0; i < wd.size(); ++i)
          if (mask >> i & 1u) x = g.rmul(x, wd[i]);
        below.insert(x);
      }
      for (int y = 0; y < g.size(); ++y) EXPECT_EQ(g.bruhat_le(y, w), below.count(y) == 1);
    }
  }
}

TEST(Field, ReducedConductor) {
  EXPECT_EQ(CoxeterGroup(coxeter_type("B3")).conductor(), 1);
  EXPECT_EQ(CoxeterGroup(coxeter_type("H3")).conductor(), 5);
  EXPECT_EQ(CoxeterGroup(coxeter_type("I2:12")).conductor(), 12);
  CoxeterGroup i8(coxeter_type("I2:8"));
  EXPECT_EQ(i8.two_cos(8, 2), FieldScalar());
}
