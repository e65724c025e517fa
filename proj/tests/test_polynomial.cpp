#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace tacalc;
using tacalc::testing::kQ;

namespace {

using P = Polynomial<Rational>;

ContextPtr xyz() { return make_context({"x", "y", "z"}, kQ); }
ContextPtr s_vars() { return make_context({"X1", "X2", "X3", "X4", "X5"}, kQ); }

SkewMatrix<Rational> generic_skew(std::size_t d, std::vector<std::string>* names_out = nullptr) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= d; ++i)
    for (std::size_t j = i + 1; j <= d; ++j) names.push_back("t" + std::to_string(i) + std::to_string(j));
  auto ctx = make_context(names, kQ);
  SkewMatrix<Rational> a(d, ctx);
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) a.set(i, j, P::variable(ctx, k++));
  if (names_out) *names_out = names;
  return a;
}

}  // namespace

TEST(Poly, DifferenceOfSquares) {
  auto c = xyz();
  const P x = P::variable(c, 0), y = P::variable(c, 1);
  EXPECT_EQ(((x + y) * (x - y)).to_string(), "x^2 - y^2");
  EXPECT_TRUE((x + x.scaled(Rational::from_int(-1, kQ))).is_zero());
}

TEST(Poly, Distribution) {
  auto c = s_vars();
  const P p = parse_poly<Rational>("2*X1*X3 + X2*X3", c);
  EXPECT_EQ((p * P::variable(c, 4)).to_string(), "2*X1*X3*X5 + X2*X3*X5");
}

TEST(Poly, ParseRoundTrip) {
  auto c = s_vars();
  EXPECT_EQ(parse_poly<Rational>("2*X1*X3 + X2*X3", c).to_string(), "2*X1*X3 + X2*X3");
  // grlex: X1*X5 > X2*X5 > X3^2
  EXPECT_EQ(parse_poly<Rational>("X3^2 + 2*X1*X5 - X2*X5", c).to_string(), "2*X1*X5 - X2*X5 + X3^2");
  for (const char* s : {"2*X1*X3 + X2*X3", "X3^2 + 2*X1*X5 - X2*X5", "X4^2 + X1*X5 - X2*X5"}) {
    const P p = parse_poly<Rational>(s, c);
    EXPECT_EQ(parse_poly<Rational>(p.to_string(), c), p);
    EXPECT_EQ(parse_poly<Rational>(p.to_string(), c).to_string(), p.to_string());
  }
  const P h = parse_poly<Rational>("1/2*x^2", xyz());
  EXPECT_EQ(h.coefficient({2, 0, 0}).to_string(), "1/2");
  EXPECT_EQ(parse_poly<Rational>("  - x*y+3 *z ^2", xyz()).to_string(), "-x*y + 3*z^2");
}

TEST(Poly, ParseErrors) {
  auto c = xyz();
  EXPECT_THROW(parse_poly<Rational>("x + w", c), Error);
  EXPECT_THROW(parse_poly<Rational>("x + * y", c), Error);
  EXPECT_THROW(parse_poly<Rational>("x^1.5", c), Error);
  EXPECT_THROW(parse_poly<Rational>("x^y", c), Error);
  try {
    parse_poly<Rational>("x + w", c);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_NE(std::string(e.what()).find("unknown variable"), std::string::npos);
  }
}

TEST(Poly, ContextMismatch) {
  EXPECT_THROW(P::variable(xyz(), 0) + P::variable(s_vars(), 0), Error);
}

TEST(Poly, Homogeneity) {
  auto c = xyz();
  EXPECT_TRUE(parse_poly<Rational>("x*y + z^2", c).is_homogeneous());
  EXPECT_FALSE(parse_poly<Rational>("x*y + z", c).is_homogeneous());
  EXPECT_EQ(parse_poly<Rational>("0", c).degree(), -1);
}

TEST(Pfaffian, BaseAndOddCases) {
  auto c = make_context({"a"}, kQ);
  SkewMatrix<Rational> two(2, c);
  two.set(0, 1, P::variable(c, 0));
  EXPECT_EQ(pfaffian(two).to_string(), "a");
  EXPECT_TRUE(pfaffian(generic_skew(3)).is_zero());
}

TEST(Pfaffian, GenericFour) {
  EXPECT_EQ(pfaffian(generic_skew(4)).to_string(), "t12*t34 - t13*t24 + t14*t23");
}

// Pf(A)^2 = det(A) at integer points; the determinant comes from elimination,
// not from any Pfaffian expansion.
TEST(Pfaffian, SquareIsDeterminant) {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> val(-6, 6);
  for (std::size_t d : {2u, 4u, 6u}) {
    const auto a = generic_skew(d);
    const P pf = pfaffian(a);
    const std::size_t nv = a.context()->size();
    for (int t = 0; t < 20; ++t) {
      Vec<Rational> point;
      for (std::size_t k = 0; k < nv; ++k) point.push_back(Rational::from_int(val(rng), kQ));
      Matrix<Rational> m(d, d, kQ);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = a.entry(i, j).evaluate(point);
      const Rational v = pf.evaluate(point);
      EXPECT_EQ(v * v, determinant(m)) << "d=" << d;
    }
  }
}

TEST(Pfaffian, SubmaximalThree) {
  const auto s = submax_pfaffians(generic_skew(3));
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].to_string(), "t23");
  EXPECT_EQ(s[1].to_string(), "-t13");
  EXPECT_EQ(s[2].to_string(), "t12");
  EXPECT_THROW(submax_pfaffians(generic_skew(4)), Error);
}

TEST(Pfaffian, SubmaximalAnnihilatedByMatrix) {
  const std::map<std::size_t, std::size_t> terms{{3, 1}, {5, 3}, {7, 15}};
  for (auto [d, count] : terms) {
    const auto a = generic_skew(d);
    const auto s = submax_pfaffians(a);
    for (std::size_t i = 0; i < d; ++i) {
      P row = P::constant(a.context(), Rational::zero(kQ));
      for (std::size_t j = 0; j < d; ++j) row += a.entry(i, j) * s[j];
      EXPECT_TRUE(row.is_zero()) << "d=" << d << " row " << i;
    }
    for (const auto& p : s) EXPECT_EQ(p.term_count(), count);
  }
}

TEST(Property, MultiplicationCommutativeAssociative) {
  std::mt19937 rng(909);
  auto c = xyz();
  std::uniform_int_distribution<int> coef(-4, 4), ex(0, 3), nterms(1, 4);
  auto random_poly = [&] {
    P p = P::constant(c, Rational::zero(kQ));
    const int k = nterms(rng);
    for (int t = 0; t < k; ++t) p += P::monomial(c, {ex(rng), ex(rng), ex(rng)}, Rational::from_int(coef(rng), kQ));
    return p;
  };
  for (int t = 0; t < 60; ++t) {
    const P a = random_poly(), b = random_poly(), d = random_poly();
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * d, a * (b * d));
    EXPECT_EQ(a * (b + d), a * b + a * d);
  }
}

TEST(Property, DegreeOfProduct) {
  std::mt19937 rng(910);
  auto c = xyz();
  for (int t = 0; t < 60; ++t) {
    auto hom = [&](int deg) {
      P p = P::constant(c, Rational::zero(kQ));
      for (const auto& m : monomials_of_degree(3, deg))
        if (rng() % 3 == 0) p += P::monomial(c, m, Rational::from_int(1 + static_cast<int>(rng() % 5), kQ));
      if (p.is_zero()) p = P::monomial(c, monomials_of_degree(3, deg).front(), Rational::one(kQ));
      return p;
    };
    const int da = static_cast<int>(rng() % 4), db = static_cast<int>(rng() % 4);
    const P a = hom(da), b = hom(db);
    EXPECT_TRUE((a * b).is_homogeneous());
    EXPECT_EQ((a * b).degree(), da + db);
  }
}
