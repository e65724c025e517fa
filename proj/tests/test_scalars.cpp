#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace tacalc;
using tacalc::testing::kP;
using tacalc::testing::kQ;

namespace {

Matrix<Rational> q(const std::vector<std::vector<long long>>& rows) { return Matrix<Rational>::from_ints(rows, kQ); }

}  // namespace

TEST(Field, PrimeValidation) {
  EXPECT_THROW(Field::prime(1), Error);
  EXPECT_THROW(Field::prime(9), Error);
  EXPECT_NO_THROW(Field::prime(2));
  EXPECT_EQ(Field::prime(7).to_string(), "F 7");
  EXPECT_EQ(kQ.to_string(), "Q");
}

TEST(Rational, LowestTerms) {
  const Rational a = Rational::from_rational(mpq_class(6, -4), kQ);
  EXPECT_EQ(a.to_string(), "-3/2");
  EXPECT_TRUE((a * a.inverse()).is_one());
  Rational b = Rational::from_int(3, kQ);
  b /= Rational::from_int(6, kQ);
  EXPECT_EQ(b.to_string(), "1/2");
}

TEST(Zp, CanonicalRepresentatives) {
  const Field f = Field::prime(7);
  EXPECT_EQ(Zp::from_int(-1, f).value(), 6u);
  EXPECT_EQ(Zp::from_rational(mpq_class(1, 2), f).value(), 4u);
  EXPECT_THROW(Zp::from_rational(mpq_class(1, 7), f), Error);
  for (long long v = 1; v < 7; ++v) EXPECT_TRUE((Zp::from_int(v, f) * Zp::from_int(v, f).inverse()).is_one());
}

TEST(Rref, ProportionalRows) {
  const auto r = rref(q({{1, 2}, {2, 4}}));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
  EXPECT_EQ(r.rank(), 1u);
}

TEST(Rref, IdentityIsFixed) {
  const auto id = Matrix<Rational>::identity(3, kQ);
  const auto r = rref(id);
  EXPECT_EQ(r.reduced, id);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Rref, FieldMismatchRejected) {
  Matrix<Zp> m(1, 2, kP);
  m(0, 0) = Zp::from_int(1, Field::prime(7));
  EXPECT_THROW(rref(m), Error);
}

TEST(Nullspace, ZeroMatrixGivesStandardBasis) {
  const auto ns = nullspace_basis(Matrix<Rational>(2, 3, kQ));
  ASSERT_EQ(ns.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(ns[i][j].is_one(), i == j);
}

TEST(Nullspace, CoordinateCase) {
  const auto ns = nullspace_basis(q({{1, 0, 0}, {0, 0, 1}}));
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_TRUE(ns[0][0].is_zero());
  EXPECT_TRUE(ns[0][1].is_one());
  EXPECT_TRUE(ns[0][2].is_zero());
}

TEST(Solve, Examples) {
  auto x = solve_linear(Matrix<Rational>::identity(2, kQ), Vec<Rational>{Rational::from_int(3, kQ), Rational::from_int(7, kQ)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0].to_string(), "3");
  EXPECT_EQ((*x)[1].to_string(), "7");

  x = solve_linear(q({{1, 1}}), Vec<Rational>{Rational::zero(kQ)});
  ASSERT_TRUE(x);
  EXPECT_TRUE(is_zero_vector<Rational>(*x));

  EXPECT_FALSE(solve_linear(q({{1}, {1}}), Vec<Rational>{Rational::zero(kQ), Rational::one(kQ)}));
  EXPECT_THROW(solve_linear(q({{1}, {1}}), Vec<Rational>{Rational::zero(kQ)}), Error);
}

TEST(Determinant, SmallCases) {
  EXPECT_EQ(determinant(q({{1, 2}, {3, 4}})).to_string(), "-2");
  EXPECT_TRUE(determinant(q({{1, 2}, {2, 4}})).is_zero());
}

TEST(EchelonBasis, InsertAndReduce) {
  EchelonBasis<Rational> e(3, kQ);
  EXPECT_TRUE(e.insert(q({{1, 1, 0}}).to_rows()[0]));
  EXPECT_TRUE(e.insert(q({{0, 1, 1}}).to_rows()[0]));
  EXPECT_FALSE(e.insert(q({{1, 2, 1}}).to_rows()[0]));
  EXPECT_TRUE(e.contains(q({{1, 0, -1}}).to_rows()[0]));
  EXPECT_EQ(e.rank(), 2u);
}

TEST(QuotientSpace, CoordinatesAndLift) {
  // Span of e0 - e1 inside k^3; prefer later columns as pivots.
  const auto span = q({{1, -1, 0}}).to_rows();
  QuotientSpace<Rational> qs(3, span, {2, 1, 0}, kQ);
  EXPECT_EQ(qs.dim(), 2u);
  const auto c = qs.coordinates(q({{0, 1, 0}}).to_rows()[0]);
  const auto d = qs.coordinates(q({{1, 0, 0}}).to_rows()[0]);
  EXPECT_EQ(c, d);
}

// Properties over fixed-seed random corpora.

TEST(Property, RrefIdempotent) {
  std::mt19937 rng(101);
  for (int t = 0; t < 60; ++t) {
    const auto m = tacalc::testing::random_matrix<Rational>(rng, 1 + rng() % 6, 1 + rng() % 7, kQ);
    const auto once = rref(m).reduced;
    EXPECT_EQ(rref(once).reduced, once);
  }
}

TEST(Property, RankNullity) {
  std::mt19937 rng(202);
  for (int t = 0; t < 60; ++t) {
    const auto m = tacalc::testing::random_matrix<Rational>(rng, 1 + rng() % 6, 1 + rng() % 7, kQ);
    const auto ns = nullspace_basis(m);
    EXPECT_EQ(rank(m) + ns.size(), m.cols());
    for (const auto& v : ns) EXPECT_TRUE(is_zero_vector<Rational>(m * v));
  }
}

TEST(Property, RankMatchesBareissOracle) {
  std::mt19937 rng(303);
  for (int t = 0; t < 60; ++t) {
    const auto m = tacalc::testing::random_matrix<Rational>(rng, 1 + rng() % 7, 1 + rng() % 7, kQ, -9, 9, 0.5);
    EXPECT_EQ(rank(m), tacalc::testing::bareiss_rank(tacalc::testing::integer_rows(m)));
  }
}

TEST(Property, RationalAndModularRanksAgree) {
  std::mt19937 rng(404);
  for (int t = 0; t < 60; ++t) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    const auto m = tacalc::testing::random_matrix<Rational>(rng, r, c, kQ, -5, 5, 0.4);
    Matrix<Zp> mp(r, c, kP);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) mp(i, j) = Zp::from_rational(m(i, j).value(), kP);
    EXPECT_EQ(rank(m), rank(mp));
  }
}

TEST(Property, DeterminantMultiplicative) {
  std::mt19937 rng(505);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng() % 4;
    const auto a = tacalc::testing::random_matrix<Rational>(rng, n, n, kQ);
    const auto b = tacalc::testing::random_matrix<Rational>(rng, n, n, kQ);
    EXPECT_EQ(determinant(a * b), determinant(a) * determinant(b));
  }
}
