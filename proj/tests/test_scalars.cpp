#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "heckecell/text.hpp"
#include "test_support.hpp"

using namespace heckecell;
using heckecell::testing::random_nonzero_poly;
using heckecell::testing::random_order;
using heckecell::testing::random_poly;
using heckecell::testing::random_scalar;
using heckecell::testing::vpow;

namespace {

std::vector<Rational> ints(std::initializer_list<long> xs) {
  std::vector<Rational> r;
  for (long x : xs) r.emplace_back(x);
  return r;
}

int euler_phi(int n) {
  int r = 0;
  for (int k = 1; k <= n; ++k) r += std::gcd(k, n) == 1;
  return r;
}

}  // namespace

TEST(NumberField, MinimalPolynomialsOfSmallConductors) {
  EXPECT_EQ(NumberField::real_cyclotomic(5).minimal_polynomial(), ints({-1, 1, 1}));
  EXPECT_EQ(NumberField::real_cyclotomic(7).minimal_polynomial(), ints({-1, -2, 1, 1}));
  EXPECT_EQ(NumberField::real_cyclotomic(8).minimal_polynomial(), ints({-2, 0, 1}));
  EXPECT_EQ(NumberField::real_cyclotomic(9).minimal_polynomial(), ints({1, -3, 0, 1}));
  EXPECT_EQ(NumberField::real_cyclotomic(12).minimal_polynomial(), ints({-3, 0, 1}));
  EXPECT_EQ(NumberField::real_cyclotomic(3).degree(), 1);
  EXPECT_EQ(NumberField::real_cyclotomic(4).degree(), 1);
  EXPECT_EQ(NumberField::real_cyclotomic(6).degree(), 1);
}

TEST(NumberField, DegreeAndRootMatchFloatingOracle) {
  for (int n = 3; n <= 30; ++n) {
    const auto& f = NumberField::real_cyclotomic(n);
    EXPECT_EQ(f.degree(), euler_phi(n) / 2) << n;
    double x = 2 * std::cos(2 * std::numbers::pi / n);
    EXPECT_NEAR(detail::eval_double(f.minimal_polynomial(), x), 0.0, 1e-8) << n;
    for (int k = 0; k < n; ++k) {
      FieldScalar c = FieldScalar::two_cos(f, k);
      EXPECT_NEAR(c.approx(), 2 * std::cos(2 * std::numbers::pi * k / n), 1e-7) << n << " " << k;
    }
  }
}

TEST(FieldScalar, FieldAxiomsOnRandomElements) {
  std::mt19937 rng(7);
  for (int n : {5, 7, 9, 11, 16, 24}) {
    const auto& f = NumberField::real_cyclotomic(n);
    for (int i = 0; i < 50; ++i) {
      FieldScalar a = random_scalar(rng, &f), b = random_scalar(rng, &f), c = random_scalar(rng, &f);
      EXPECT_EQ((a + b) * c, a * c + b * c);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a - a, FieldScalar());
      if (!a.is_zero()) { EXPECT_EQ(a * a.inverse(), FieldScalar(1)); }
    }
  }
}

TEST(FieldScalar, ExactSignAgreesWithFloatingPoint) {
  std::mt19937 rng(11);
  for (int n : {5, 7, 8, 11, 12, 13}) {
    const auto& f = NumberField::real_cyclotomic(n);
    for (int i = 0; i < 60; ++i) {
      FieldScalar a = random_scalar(rng, &f);
      double x = a.approx();
      if (std::abs(x) > 1e-6) { EXPECT_EQ(a.sign(), x > 0 ? 1 : -1); }
    }
  }
  // Near-cancellation: 2cos(2pi/7) - 1.2469796 is tiny but positive.
  const auto& f7 = NumberField::real_cyclotomic(7);
  FieldScalar tiny = FieldScalar::two_cos(f7, 1) - FieldScalar(Rational(12469796, 10000000));
  EXPECT_EQ(tiny.sign(), 1);
}

TEST(FieldScalar, NormOfGoldenRatioUnit) {
  const auto& f = NumberField::real_cyclotomic(5);
  FieldScalar d = FieldScalar::generator(f);
  EXPECT_EQ(d.norm(), Rational(-1));
  EXPECT_EQ((FieldScalar(2) + d).norm(), Rational(1));
  EXPECT_EQ((FieldScalar(1) + FieldScalar(2) * d).norm(), Rational(-5));
}

TEST(MinExponent, Examples) {
  EXPECT_EQ(min_exponent(LaurentPoly::one(1), MonomialOrder::natural(1)), ExponentVec{0});
  EXPECT_EQ(min_exponent(vpow(1) + vpow(-1), MonomialOrder::natural(1)), ExponentVec{-1});
  LaurentPoly p = LaurentPoly::monomial(ExponentVec{2, -1}) + LaurentPoly::monomial(ExponentVec{0, 3});
  EXPECT_EQ(min_exponent(p, MonomialOrder({1, 0})), (ExponentVec{2, -1}));
  EXPECT_THROW(min_exponent(LaurentPoly(), MonomialOrder::natural(1)), Error);
}

TEST(MinExponent, AdditiveUnderMultiplication) {
  std::mt19937 rng(3);
  const auto& f = NumberField::real_cyclotomic(7);
  for (int i = 0; i < 200; ++i) {
    int rank = 1 + i % 3;
    MonomialOrder ord = random_order(rng, rank);
    LaurentPoly p = random_nonzero_poly(rng, rank, &f), q = random_nonzero_poly(rng, rank, &f);
    EXPECT_EQ(min_exponent(p * q, ord), min_exponent(p, ord) + min_exponent(q, ord));
  }
}

TEST(MonomialOrder, CompatibleWithAddition) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> e(-5, 5);
  for (int i = 0; i < 500; ++i) {
    int rank = 1 + i % 4;
    MonomialOrder ord = random_order(rng, rank);
    ExponentVec g(rank), h(rank), k(rank);
    for (int j = 0; j < rank; ++j) g[j] = e(rng), h[j] = e(rng), k[j] = e(rng);
    if (!ord.less(h, g)) { EXPECT_FALSE(ord.less(h + k, g + k)); }
    EXPECT_TRUE(ord.less(g, h) || ord.less(h, g) || g == h);
  }
}

TEST(ValuationData, Examples) {
  MonomialOrder nat = MonomialOrder::natural(1);
  auto one = valuation_data(KScalar(LaurentPoly::one(1)), nat);
  EXPECT_EQ(one.g, ExponentVec{0});
  EXPECT_EQ(one.r, FieldScalar(1));
  auto m = valuation_data(KScalar(vpow(-1, -1)), nat);
  EXPECT_EQ(m.g, ExponentVec{-1});
  EXPECT_EQ(m.r, FieldScalar(-1));
  // Oracle: v(1+v^2)/(1+v^2) divides exactly to v.
  LaurentPoly num = vpow(1) + vpow(3), den = vpow(0) + vpow(2);
  ASSERT_EQ(num.try_divide(den), vpow(1));
  auto x = valuation_data(KScalar(num, den), nat);
  EXPECT_EQ(x.g, ExponentVec{1});
  EXPECT_EQ(x.r, FieldScalar(1));
  EXPECT_TRUE(valuation_data(KScalar(), nat).infinite);
}

TEST(ValuationData, MultiplicativeOnRandomPairs) {
  std::mt19937 rng(13);
  const auto& f = NumberField::real_cyclotomic(5);
  for (int i = 0; i < 150; ++i) {
    int rank = 1 + i % 2;
    MonomialOrder ord = random_order(rng, rank);
    KScalar x(random_nonzero_poly(rng, rank, &f), random_nonzero_poly(rng, rank, &f));
    KScalar y(random_nonzero_poly(rng, rank, &f), random_nonzero_poly(rng, rank, &f));
    auto vx = valuation_data(x, ord), vy = valuation_data(y, ord), vxy = valuation_data(x * y, ord);
    EXPECT_EQ(vxy.g, vx.g + vy.g);
    EXPECT_EQ(vxy.r, vx.r * vy.r);
  }
}

TEST(ConstantTerm, Examples) {
  MonomialOrder nat = MonomialOrder::natural(1);
  ExponentVec one{1};
  EXPECT_EQ(constant_term_after_shift(KScalar(vpow(-1)), one, nat), FieldScalar(1));
  EXPECT_EQ(constant_term_after_shift(KScalar(vpow(-1) + vpow(0, 3)), one, nat), FieldScalar(1));
  EXPECT_EQ(constant_term_after_shift(KScalar(vpow(1)), one, nat), FieldScalar());
  EXPECT_THROW(constant_term_after_shift(KScalar(vpow(-2)), one, nat), Error);
  try {
    constant_term_after_shift(KScalar(vpow(-2)), one, nat);
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "not in valuation ring");
  }
}

TEST(ConstantTerm, MultiplicativeWhenDefined) {
  std::mt19937 rng(17);
  const auto& f = NumberField::real_cyclotomic(8);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    int rank = 1 + i % 2;
    MonomialOrder ord = random_order(rng, rank);
    KScalar x(random_nonzero_poly(rng, rank, &f), random_nonzero_poly(rng, rank, &f));
    KScalar y(random_nonzero_poly(rng, rank, &f), random_nonzero_poly(rng, rank, &f));
    ExponentVec g = -valuation_data(x, ord).g, h = -valuation_data(y, ord).g;
    if (i % 3 == 0) g[0] += 1;
    FieldScalar cx = constant_term_after_shift(x, g, ord), cy = constant_term_after_shift(y, h, ord);
    EXPECT_EQ(constant_term_after_shift(x * y, g + h, ord), cx * cy);
    ++checked;
  }
  EXPECT_EQ(checked, 400);
}

TEST(KScalar, EqualityConsistentWithArithmetic) {
  std::mt19937 rng(19);
  const auto& f = NumberField::real_cyclotomic(7);
  for (int i = 0; i < 100; ++i) {
    LaurentPoly a = random_nonzero_poly(rng, 2, &f), b = random_nonzero_poly(rng, 2, &f);
    LaurentPoly c = random_nonzero_poly(rng, 2, &f);
    KScalar x(a, b), y(a * c, b * c);
    EXPECT_EQ(x, y);
    EXPECT_EQ(x * KScalar(b), KScalar(a));
    KScalar z(random_nonzero_poly(rng, 2, &f), c);
    EXPECT_EQ((x + z) - z, x);
    EXPECT_EQ((x * z) / z, x);
    EXPECT_EQ(x + y, x * KScalar(LaurentPoly::constant(2, FieldScalar(2))));
  }
}

TEST(LaurentPoly, ExactDivision) {
  std::mt19937 rng(23);
  const auto& f = NumberField::real_cyclotomic(5);
  for (int i = 0; i < 200; ++i) {
    int rank = 1 + i % 3;
    LaurentPoly p = random_nonzero_poly(rng, rank, &f), q = random_nonzero_poly(rng, rank, &f);
    auto r = (p * q).try_divide(q);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, p);
  }
  EXPECT_FALSE((vpow(0) + vpow(2)).try_divide(vpow(0) + vpow(1)).has_value());
  EXPECT_FALSE(vpow(0).try_divide(vpow(0) + vpow(1)).has_value());
}

TEST(LaurentPoly, BarIsRingInvolution) {
  std::mt19937 rng(29);
  const auto& f = NumberField::real_cyclotomic(9);
  for (int i = 0; i < 100; ++i) {
    LaurentPoly p = random_poly(rng, 2, &f), q = random_poly(rng, 2, &f);
    EXPECT_EQ(p.bar().bar(), p);
    EXPECT_EQ((p * q).bar(), p.bar() * q.bar());
    EXPECT_EQ((p + q).bar(), p.bar() + q.bar());
  }
}

TEST(Text, RoundTripIsExact) {
  std::mt19937 rng(31);
  for (int n : {1, 5, 7, 12}) {
    const auto& f = NumberField::real_cyclotomic(n);
    for (int i = 0; i < 100; ++i) {
      int rank = 1 + i % 3;
      LaurentPoly p = random_poly(rng, rank, &f);
      std::string s = to_text(p);
      EXPECT_EQ(parse_laurent(s, &f, rank), p) << s;
      EXPECT_EQ(to_text(parse_laurent(s, &f, rank)), s);
      FieldScalar c = random_scalar(rng, &f);
      EXPECT_EQ(parse_field_scalar(to_text(c), &f), c);
    }
  }
}

TEST(Text, CanonicalForm) {
  const auto& f = NumberField::real_cyclotomic(5);
  LaurentPoly p = LaurentPoly::monomial(ExponentVec{0, 1}, FieldScalar(1) + FieldScalar::generator(f)) +
                  LaurentPoly::monomial(ExponentVec{-1, 0}, FieldScalar(Rational(-1, 2)));
  EXPECT_EQ(to_text(p), "-1/2*eps[-1,0] + (1 + 1*d)*eps[0,1]");
  EXPECT_EQ(to_text(LaurentPoly()), "0");
}
