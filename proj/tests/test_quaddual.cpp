#include <gtest/gtest.h>

#include "tacalc/quadratic_dual.hpp"
#include "test_support.hpp"

using namespace tacalc;
using tacalc::testing::kQ;

namespace {

const std::vector<std::string> kSVars{"X1", "X2", "X3", "X4", "X5"};
const std::vector<std::string> kSRels{"2*X1*X3 + X2*X3", "X1*X4 + X2*X4", "X3^2 + 2*X1*X5 - X2*X5",
                                      "X4^2 + X1*X5 - X2*X5", "X1^2", "X2^2", "X3*X4", "X3*X5",
                                      "X4*X5", "X5^2"};
const std::vector<std::string> kQVars{"Y1", "Y2", "Y3", "Y4"};
const std::vector<std::string> kQRels{"Y1^2", "Y1*Y2 - Y3^2", "Y1*Y3 - Y2*Y4", "Y1*Y4",
                                      "Y2^2 + Y3*Y4", "Y2*Y3", "Y4^2"};

AlgebraSpec<Rational> spec(std::vector<std::string> v, const std::vector<std::string>& r) {
  return make_spec<Rational>(std::move(v), r, kQ);
}

// Word vector over n^2 words from (coefficient, i, j) triples, 1-based letters.
Vec<Rational> words(std::size_t n, const std::vector<std::tuple<long long, std::size_t, std::size_t>>& terms) {
  Vec<Rational> v = zeros<Rational>(n * n, kQ);
  for (auto [c, i, j] : terms) v[(i - 1) * n + (j - 1)] += Rational::from_int(c, kQ);
  return v;
}

// c*(T_i T_j + T_j T_i) as triples.
std::vector<std::tuple<long long, std::size_t, std::size_t>> sym(long long c, std::size_t i, std::size_t j) {
  if (i == j) return {{c, i, i}};
  return {{c, i, j}, {c, j, i}};
}

std::vector<std::tuple<long long, std::size_t, std::size_t>> join(
    std::initializer_list<std::vector<std::tuple<long long, std::size_t, std::size_t>>> parts) {
  std::vector<std::tuple<long long, std::size_t, std::size_t>> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

TEST(CoefficientMatrix, SmallCases) {
  EXPECT_EQ(coefficient_matrix(spec({"x"}, {"x^2"})), Matrix<Rational>::from_ints({{1}}, kQ));
  EXPECT_EQ(coefficient_matrix(spec({"x", "y"}, {"x^2", "y^2"})),
            Matrix<Rational>::from_ints({{1, 0, 0}, {0, 0, 1}}, kQ));
}

TEST(CoefficientMatrix, ExampleRingRank) {
  const auto a = coefficient_matrix(spec(kSVars, kSRels));
  EXPECT_EQ(a.rows(), 10u);
  EXPECT_EQ(a.cols(), 15u);
  EXPECT_EQ(rank(a), 10u);
  EXPECT_EQ(tacalc::testing::bareiss_rank(tacalc::testing::integer_rows(a)), 10u);
  EXPECT_EQ(nullspace_basis(a).size(), 5u);
}

TEST(CoefficientMatrix, Rejections) {
  EXPECT_THROW(coefficient_matrix(spec({"x"}, {"x^3"})), Error);
  EXPECT_THROW(coefficient_matrix(make_spec<Zp>({"x"}, {"x^2"}, Field::prime(2))), Error);
  EXPECT_NO_THROW(coefficient_matrix(make_spec<Zp>({"x"}, {"x^2"}, Field::prime(3))));
}

TEST(QuadraticDual, SmallCases) {
  const auto h = quadratic_dual(spec({"x"}, {"x^2"}));
  EXPECT_EQ(h.num_relations(), 0u);
  for (int d = 0; d <= 4; ++d) EXPECT_EQ(NcComponent<Rational>(h.algebra, d).dim(), 1u);

  const auto ci = quadratic_dual(spec({"x", "y"}, {"x^2", "y^2"}));
  ASSERT_EQ(ci.num_relations(), 1u);
  EXPECT_EQ(ci.relation_to_string(0), "T1*T2 + T2*T1");
}

TEST(NcComponent, CommutativePolynomialRingInTwoLetters) {
  NcQuadraticAlgebra<Rational> a{kQ, {"T1", "T2"}, {words(2, {{1, 1, 2}, {-1, 2, 1}})}};
  for (int d = 0; d <= 4; ++d) EXPECT_EQ(NcComponent<Rational>(a, d).dim(), static_cast<std::size_t>(d + 1));
  // Normal words are T1^a T2^b, the lexicographically smallest representatives.
  const NcComponent<Rational> u2(a, 2);
  EXPECT_EQ(u2.basis_words(), (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_THROW(NcComponent<Rational>(a, 5), Error);
}

TEST(QuadraticDual, ExampleRingRelationSpan) {
  const auto d = quadratic_dual(spec(kSVars, kSRels));
  ASSERT_EQ(d.num_relations(), 5u);
  const std::size_t n = 5;
  const std::vector<Vec<Rational>> listed{
      words(n, sym(1, 1, 2)),
      words(n, join({sym(1, 1, 3), sym(-2, 2, 3)})),
      words(n, join({sym(1, 1, 4), sym(-1, 2, 4)})),
      words(n, join({sym(1, 3, 3), sym(1, 4, 4), sym(1, 2, 5)})),
      // Fifth generator with the signs implied by the accompanying Lie relations.
      words(n, join({sym(1, 3, 3), sym(-1, 1, 5), sym(-1, 2, 5)})),
  };
  EchelonBasis<Rational> computed(n * n, kQ);
  for (const auto& r : d.algebra.relations) computed.insert(r);
  for (const auto& v : listed) EXPECT_TRUE(computed.contains(v));
  EchelonBasis<Rational> given(n * n, kQ);
  for (const auto& v : listed) given.insert(v);
  EXPECT_EQ(given.rank(), 5u);
  for (const auto& r : d.algebra.relations) EXPECT_TRUE(given.contains(r));

  // The fifth generator with all plus signs is not a relation: contracting it
  // against the third S-relation gives 1 + 2 - 1 = 2.
  const auto literal = words(n, join({sym(1, 3, 3), sym(1, 1, 5), sym(1, 2, 5)}));
  EXPECT_FALSE(computed.contains(literal));
}

TEST(QuadraticDual, DimensionInvariants) {
  for (const auto& [vars, rels] : {std::pair{kSVars, kSRels}, std::pair{kQVars, kQRels}}) {
    const auto s = spec(vars, rels);
    const auto d = quadratic_dual(s);
    const std::size_t n = s.num_vars();
    EXPECT_EQ(d.num_relations(), n * (n + 1) / 2 - rank(d.coefficients));
    EXPECT_EQ(NcComponent<Rational>(d.algebra, 2).dim(), n * n - d.num_relations());
    for (const auto& c : d.nullspace) EXPECT_TRUE(is_zero_vector<Rational>(d.coefficients * c));
  }
}

TEST(QuadraticDual, ExampleRingComponents) {
  const auto d = quadratic_dual(spec(kSVars, kSRels));
  EXPECT_EQ(NcComponent<Rational>(d.algebra, 2).dim(), 20u);
  EXPECT_EQ(NcComponent<Rational>(d.algebra, 3).dim(), 76u);
}

TEST(QuadraticDual, TensorRelationCount) {
  const auto s = spec(kSVars, kSRels), q = spec(kQVars, kQRels);
  const auto ds = quadratic_dual(s), dq = quadratic_dual(q);
  const auto dr = quadratic_dual(tensor(s, q));
  const std::size_t n = 5, m = 4, r = 10, sq = 7;
  EXPECT_EQ(dr.num_relations(), (n + m) * (n + m + 1) / 2 - (r + sq));
  EXPECT_EQ(dr.num_relations(), ds.num_relations() + dq.num_relations() + n * m);
  // Every cross anticommutator T_j U_l + U_l T_j is a relation of the dual.
  EchelonBasis<Rational> span(81, kQ);
  for (const auto& v : dr.algebra.relations) span.insert(v);
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t l = n + 1; l <= n + m; ++l) EXPECT_TRUE(span.contains(words(9, sym(1, j, l))));
}

// The dual of the dual presents the original commutative algebra, so its
// components have the original Hilbert function.
TEST(QuadraticDual, DoubleDualOfMonomialAlgebras) {
  std::mt19937 rng(66);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng() % 2;
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i + 1));
    std::vector<std::string> rels;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (i == j || rng() % 2) rels.push_back(vars[i] + "*" + vars[j]);
    const auto s = spec(vars, rels);
    const auto h = GradedAlgebra<Rational>::build(s)->hilbert();
    const auto dd = nc_dual(quadratic_dual(s).algebra, vars);
    for (int d = 0; d <= 3; ++d) {
      const std::size_t expected = static_cast<std::size_t>(d) < h.size() ? h[static_cast<std::size_t>(d)] : 0;
      EXPECT_EQ(NcComponent<Rational>(dd, d).dim(), expected);
      EXPECT_EQ(NcComponent<Rational>(as_noncommutative(s), d).dim(), expected);
    }
  }
}

TEST(KoszulSmoke, ConsistentCases) {
  const auto ci = spec({"x", "y"}, {"x^2", "y^2"});
  const auto ks = koszul_smoke<Rational>({1, 2, 3, 4}, quadratic_dual(ci));
  EXPECT_TRUE(ks.consistent);
  EXPECT_EQ(ks.rows.size(), 4u);
}

// b_3 = 33 from a minimal resolution, while the dual has 32 words in degree 3.
TEST(KoszulSmoke, DetectsNonKoszulAlgebra) {
  const auto s = spec({"a", "b", "c", "d"}, {"a^2 - a*c", "a^2 - d^2", "a*d", "b^2", "c^2", "b*d"});
  const auto betti =
      minimal_resolution(GradedModule<Rational>::residue_field(GradedAlgebra<Rational>::build(s)), {3, 10}).betti();
  EXPECT_EQ(betti, (std::vector<std::size_t>{1, 4, 12, 33}));
  const auto ks = koszul_smoke(betti, quadratic_dual(s));
  EXPECT_FALSE(ks.consistent);
  ASSERT_EQ(ks.rows.size(), 4u);
  EXPECT_EQ(ks.rows[3], (std::pair<std::size_t, std::size_t>{33, 32}));
  EXPECT_EQ(ks.rows[2].first, ks.rows[2].second);
}
