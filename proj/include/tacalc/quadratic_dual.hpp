#pragma once

// Quadratic duals of commutative quadratic algebras and graded pieces of
// noncommutative quadratic algebras k<T_1..T_n>/(relations).

#include "tacalc/algebra.hpp"

namespace tacalc {

/// Noncommutative words of length d in n letters, stored as base-n indices:
/// the word T_{a_1}...T_{a_d} has index sum a_k n^{d-k}. Index order is the
/// lexicographic order with T_1 < ... < T_n.
inline std::size_t word_count(std::size_t n, int d) {
  std::size_t c = 1;
  for (int i = 0; i < d; ++i) c *= n;
  return c;
}

inline std::vector<std::size_t> word_letters(std::size_t n, int d, std::size_t index) {
  std::vector<std::size_t> w(static_cast<std::size_t>(d));
  for (int k = d - 1; k >= 0; --k) {
    w[static_cast<std::size_t>(k)] = index % n;
    index /= n;
  }
  return w;
}

inline std::string word_to_string(const std::vector<std::string>& letters, std::size_t n, int d,
                                  std::size_t index) {
  if (d == 0) return "1";
  std::string s;
  for (auto a : word_letters(n, d, index)) {
    if (!s.empty()) s += "*";
    s += letters[a];
  }
  return s;
}

template <FieldElement K>
std::string nc_to_string(const std::vector<std::string>& letters, int d, std::span<const K> coords) {
  const std::size_t n = letters.size();
  std::string out;
  for (std::size_t w = 0; w < coords.size(); ++w) {
    const K& c = coords[w];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs.erase(0, 1);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (cs != "1") out += cs + "*";
    out += word_to_string(letters, n, d, w);
  }
  return out.empty() ? "0" : out;
}

/// k<T_1..T_n>/(R) with R a space of quadratic relations, each a vector over
/// the n^2 words of length 2.
template <FieldElement K>
struct NcQuadraticAlgebra {
  Field field;
  std::vector<std::string> letters;
  std::vector<Vec<K>> relations;

  std::size_t num_letters() const { return letters.size(); }
};

/// Degree-d piece U_d of a noncommutative quadratic algebra: the word space
/// modulo the span of {w * r * w'}. Later words are preferred as pivots, so
/// the basis consists of the lexicographically smallest surviving words.
template <FieldElement K>
class NcComponent {
 public:
  static constexpr int kMaxDegree = 4;

  NcComponent(const NcQuadraticAlgebra<K>& a, int d) : degree_(d), n_(a.num_letters()) {
    require(d >= 0, ErrorKind::precondition, "component degree must be non-negative");
    require(d <= kMaxDegree, ErrorKind::cap_exceeded,
            "noncommutative component degree " + std::to_string(d) + " is above the cap " +
                std::to_string(kMaxDegree));
    const std::size_t ambient = word_count(n_, d);
    std::vector<Vec<K>> span;
    if (d >= 2) {
      for (int left = 0; left + 2 <= d; ++left) {
        const int right = d - 2 - left;
        const std::size_t nl = word_count(n_, left), nr = word_count(n_, right);
        const std::size_t n2 = n_ * n_;
        for (const auto& r : a.relations)
          for (std::size_t wl = 0; wl < nl; ++wl)
            for (std::size_t wr = 0; wr < nr; ++wr) {
              Vec<K> v = zeros<K>(ambient, a.field);
              for (std::size_t m = 0; m < n2; ++m)
                if (!r[m].is_zero()) v[(wl * n2 + m) * nr + wr] = r[m];
              span.push_back(std::move(v));
            }
      }
    }
    std::vector<std::size_t> order(ambient);
    for (std::size_t i = 0; i < ambient; ++i) order[i] = ambient - 1 - i;
    quotient_ = QuotientSpace<K>(ambient, span, std::move(order), a.field);
    basis_ = quotient_.basis_columns();
    std::sort(basis_.begin(), basis_.end());
    for (std::size_t t = 0; t < basis_.size(); ++t) position_[basis_[t]] = t;
  }

  int degree() const { return degree_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient() const { return quotient_.ambient(); }
  /// Basis words (as indices), ascending.
  const std::vector<std::size_t>& basis_words() const { return basis_; }

  /// Coordinates, in basis_words() order, of the class of a word-space vector.
  Vec<K> coordinates(std::span<const K> words) const {
    const Vec<K> raw = quotient_.coordinates(words);
    // QuotientSpace lists basis columns in pivot-preference order; reorder.
    Vec<K> out(raw.size());
    const auto& cols = quotient_.basis_columns();
    for (std::size_t t = 0; t < cols.size(); ++t) out[position_.at(cols[t])] = raw[t];
    return out;
  }

  /// Word-space representative of a class, supported on basis words.
  Vec<K> lift(std::span<const K> coords, const Field& f) const {
    Vec<K> v = zeros<K>(ambient(), f);
    for (std::size_t t = 0; t < basis_.size(); ++t) v[basis_[t]] = coords[t];
    return v;
  }

 private:
  int degree_;
  std::size_t n_;
  QuotientSpace<K> quotient_;
  std::vector<std::size_t> basis_;
  std::map<std::size_t, std::size_t> position_;
};

/// Word-space product of homogeneous elements of degrees p and q.
template <FieldElement K>
Vec<K> nc_multiply(std::size_t n, std::span<const K> u, int p, std::span<const K> v, int q, const Field& f) {
  const std::size_t nq = word_count(n, q);
  Vec<K> out = zeros<K>(word_count(n, p) * nq, f);
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (u[a].is_zero()) continue;
    for (std::size_t b = 0; b < v.size(); ++b)
      if (!v[b].is_zero()) out[a * nq + b] += u[a] * v[b];
  }
  return out;
}

/// The relation space orthogonal to R under the pairing of words with dual
/// words: the quadratic dual of a noncommutative quadratic algebra.
template <FieldElement K>
NcQuadraticAlgebra<K> nc_dual(const NcQuadraticAlgebra<K>& a, std::vector<std::string> letters) {
  const std::size_t n2 = a.num_letters() * a.num_letters();
  const Matrix<K> m = Matrix<K>::from_rows(a.relations, n2, a.field);
  return {a.field, std::move(letters), nullspace_basis(m)};
}

/// Coefficient matrix of the relations of a quadratic commutative algebra:
/// one row per relation, one column per monomial x_j x_l (j <= l) in
/// lexicographic order.
template <FieldElement K>
Matrix<K> coefficient_matrix(const AlgebraSpec<K>& spec) {
  require(spec.field().characteristic() != 2, ErrorKind::precondition,
          "characteristic 2 is not supported for quadratic duals");
  const std::size_t n = spec.num_vars();
  Matrix<K> m(spec.relations.size(), n * (n + 1) / 2, spec.field());
  for (std::size_t r = 0; r < spec.relations.size(); ++r) {
    const auto& f = spec.relations[r];
    require(f.is_homogeneous() && f.degree() == 2, ErrorKind::precondition,
            "non-quadratic relation: " + f.to_string());
    std::size_t col = 0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = j; l < n; ++l, ++col) {
        Monomial mono(n, 0);
        mono[j] += 1;
        mono[l] += 1;
        m(r, col) = f.coefficient(mono);
      }
  }
  return m;
}

template <FieldElement K>
struct QuadraticDual {
  Matrix<K> coefficients;           // relations x monomials x_j x_l, j <= l
  std::vector<Vec<K>> nullspace;    // basis c_i of the nullspace of `coefficients`
  NcQuadraticAlgebra<K> algebra;    // k<T>/(phi_i)

  std::size_t num_generators() const { return algebra.num_letters(); }
  std::size_t num_relations() const { return algebra.relations.size(); }
  const Field& field() const { return algebra.field; }

  std::string relation_to_string(std::size_t i) const {
    return nc_to_string<K>(algebra.letters, 2, algebra.relations[i]);
  }
};

/// Word vector of sum_{j<l} c_jl (T_j T_l + T_l T_j) + sum_j c_jj T_j T_j.
template <FieldElement K>
Vec<K> symmetric_word_vector(std::size_t n, const Vec<K>& c, const Field& f) {
  Vec<K> v = zeros<K>(n * n, f);
  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = j; l < n; ++l, ++col) {
      v[j * n + l] += c[col];
      if (l != j) v[l * n + j] += c[col];
    }
  return v;
}

inline std::vector<std::string> dual_letters(std::size_t n) {
  std::vector<std::string> t;
  for (std::size_t i = 1; i <= n; ++i) t.push_back("T" + std::to_string(i));
  return t;
}

template <FieldElement K>
QuadraticDual<K> quadratic_dual(const AlgebraSpec<K>& spec) {
  const std::size_t n = spec.num_vars();
  Matrix<K> a = coefficient_matrix(spec);
  std::vector<Vec<K>> c = nullspace_basis(a);
  NcQuadraticAlgebra<K> alg{spec.field(), dual_letters(n), {}};
  for (const auto& v : c) alg.relations.push_back(symmetric_word_vector(n, v, spec.field()));
  return {std::move(a), std::move(c), std::move(alg)};
}

/// The commutative algebra itself as a noncommutative quadratic algebra:
/// commutators plus the (symmetrized) relations.
template <FieldElement K>
NcQuadraticAlgebra<K> as_noncommutative(const AlgebraSpec<K>& spec) {
  const std::size_t n = spec.num_vars();
  const Field& f = spec.field();
  const Matrix<K> a = coefficient_matrix(spec);
  NcQuadraticAlgebra<K> out{f, spec.var_names(), {}};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = j + 1; l < n; ++l) {
      Vec<K> v = zeros<K>(n * n, f);
      v[j * n + l] = K::one(f);
      v[l * n + j] = -K::one(f);
      out.relations.push_back(std::move(v));
    }
  const K half = K::from_int(2, f).inverse();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Vec<K> v = zeros<K>(n * n, f);
    std::size_t col = 0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = j; l < n; ++l, ++col) {
        if (l == j) {
          v[j * n + j] = a(r, col);
        } else {
          v[j * n + l] = a(r, col) * half;
          v[l * n + j] = a(r, col) * half;
        }
      }
    out.relations.push_back(std::move(v));
  }
  return out;
}

struct KoszulSmoke {
  std::vector<std::pair<std::size_t, std::size_t>> rows;  // (b_i, dim U_i)
  bool consistent = true;
};

/// Compares Betti numbers of k with the dimensions of the dual's components.
template <FieldElement K>
KoszulSmoke koszul_smoke(const std::vector<std::size_t>& betti, const QuadraticDual<K>& dual, int i_max = 3) {
  require(i_max >= 0 && i_max <= 3, ErrorKind::precondition, "koszul smoke test runs through degree 3");
  KoszulSmoke out;
  for (int i = 0; i <= i_max && static_cast<std::size_t>(i) < betti.size(); ++i) {
    const std::size_t u = NcComponent<K>(dual.algebra, i).dim();
    out.rows.emplace_back(betti[static_cast<std::size_t>(i)], u);
    if (u != betti[static_cast<std::size_t>(i)]) out.consistent = false;
  }
  return out;
}

}  // namespace tacalc
