#pragma once

// Exact scalars (rationals and prime fields) and dense linear algebra over
// them. Everything above this layer is templated on the element type K, which
// is either Rational or Zp.

#include <gmpxx.h>

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tacalc/error.hpp"

namespace tacalc {

/// Runtime field descriptor: either Q or F_p.
struct Field {
  enum class Kind { rational, prime };

  Kind kind = Kind::rational;
  std::uint32_t modulus = 0;

  static Field rationals() { return Field{}; }

  static Field prime(std::uint64_t p) {
    require(p >= 2 && p < (1ULL << 31), ErrorKind::precondition,
            "prime modulus out of range: " + std::to_string(p));
    for (std::uint64_t q = 2; q * q <= p; ++q)
      require(p % q != 0, ErrorKind::precondition, std::to_string(p) + " is not prime");
    return Field{Kind::prime, static_cast<std::uint32_t>(p)};
  }

  bool is_rational() const { return kind == Kind::rational; }
  std::uint32_t characteristic() const { return is_rational() ? 0 : modulus; }
  std::string to_string() const { return is_rational() ? "Q" : "F " + std::to_string(modulus); }

  friend bool operator==(const Field&, const Field&) = default;
};

/// Element of Q, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  explicit Rational(long long v) : v_(static_cast<long>(v)) {}
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  static Rational from_int(long long v, const Field& f) {
    require(f.is_rational(), ErrorKind::field_mismatch, "field mismatch");
    return Rational(v);
  }
  static Rational from_rational(const mpq_class& q, const Field& f) {
    require(f.is_rational(), ErrorKind::field_mismatch, "field mismatch");
    return Rational(q);
  }
  static Rational zero(const Field& f) { return from_int(0, f); }
  static Rational one(const Field& f) { return from_int(1, f); }

  Field field() const { return Field::rationals(); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  const mpq_class& value() const { return v_; }
  mpq_class lift() const { return v_; }

  Rational inverse() const {
    require(!is_zero(), ErrorKind::precondition, "division by zero");
    return Rational(mpq_class(1) / v_);
  }

  std::string to_string() const { return v_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { return *this *= o.inverse(); }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a *= b.inverse(); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }

 private:
  mpq_class v_;
};

/// Element of F_p stored as its canonical representative in [0, p).
/// A default-constructed element has modulus 0 and adopts the modulus of the
/// other operand in binary operations.
class Zp {
 public:
  Zp() = default;
  Zp(long long v, std::uint32_t p) : p_(p) {
    long long r = v % static_cast<long long>(p);
    v_ = static_cast<std::uint32_t>(r < 0 ? r + p : r);
  }

  static Zp from_int(long long v, const Field& f) {
    require(!f.is_rational(), ErrorKind::field_mismatch, "field mismatch");
    return Zp(v, f.modulus);
  }
  static Zp from_rational(const mpq_class& q, const Field& f) {
    require(!f.is_rational(), ErrorKind::field_mismatch, "field mismatch");
    mpz_class m(f.modulus);
    mpz_class num = q.get_num() % m;
    mpz_class den = q.get_den() % m;
    require(den != 0, ErrorKind::precondition,
            "denominator " + q.get_den().get_str() + " is not invertible in " + f.to_string());
    Zp n(num.get_si(), f.modulus);
    Zp d(den.get_si(), f.modulus);
    return n * d.inverse();
  }
  static Zp zero(const Field& f) { return from_int(0, f); }
  static Zp one(const Field& f) { return from_int(1, f); }

  Field field() const { return Field{Field::Kind::prime, p_}; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  mpq_class lift() const { return mpq_class(static_cast<unsigned long>(v_)); }

  Zp inverse() const {
    require(v_ != 0, ErrorKind::precondition, "division by zero");
    long long t = 0, new_t = 1, r = p_, new_r = v_;
    while (new_r != 0) {
      long long q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    return Zp(t, p_);
  }

  std::string to_string() const { return std::to_string(v_); }

  /// Wraps an already-reduced residue without another modular reduction.
  static Zp canonical(std::uint32_t v, std::uint32_t p) { return make(v, p); }

  Zp operator-() const { return make(v_ == 0 ? 0 : p_ - v_, p_); }
  Zp& operator+=(const Zp& o) {
    std::uint32_t p = p_ ? p_ : o.p_;
    std::uint64_t s = std::uint64_t{v_} + o.v_;
    return *this = make(static_cast<std::uint32_t>(s >= p ? s - p : s), p);
  }
  Zp& operator-=(const Zp& o) {
    std::uint32_t p = p_ ? p_ : o.p_;
    return *this = make(v_ >= o.v_ ? v_ - o.v_ : v_ + p - o.v_, p);
  }
  Zp& operator*=(const Zp& o) {
    std::uint32_t p = p_ ? p_ : o.p_;
    return *this = make(static_cast<std::uint32_t>(std::uint64_t{v_} * o.v_ % p), p);
  }

  friend Zp operator+(Zp a, const Zp& b) { return a += b; }
  friend Zp operator-(Zp a, const Zp& b) { return a -= b; }
  friend Zp operator*(Zp a, const Zp& b) { return a *= b; }
  friend Zp operator/(Zp a, const Zp& b) { return a *= b.inverse(); }
  friend bool operator==(const Zp& a, const Zp& b) { return a.v_ == b.v_; }

 private:
  static Zp make(std::uint32_t v, std::uint32_t p) {
    Zp z;
    z.v_ = v;
    z.p_ = p;
    return z;
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

template <class K>
concept FieldElement = requires(const K a, const K b, const Field f, long long n) {
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a.inverse() } -> std::same_as<K>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.field() } -> std::same_as<Field>;
  { a.to_string() } -> std::same_as<std::string>;
  { K::from_int(n, f) } -> std::same_as<K>;
  { K::zero(f) } -> std::same_as<K>;
  { K::one(f) } -> std::same_as<K>;
};

template <FieldElement K>
using Vec = std::vector<K>;

template <FieldElement K>
Vec<K> zeros(std::size_t n, const Field& f) {
  return Vec<K>(n, K::zero(f));
}

template <FieldElement K>
bool is_zero_vector(std::span<const K> v) {
  return std::all_of(v.begin(), v.end(), [](const K& x) { return x.is_zero(); });
}

template <FieldElement K>
bool is_zero_vector(const Vec<K>& v) {
  return is_zero_vector<K>(std::span<const K>(v));
}

/// y[j] += a * x[j] for j >= from.
template <FieldElement K>
void axpy(std::span<K> y, const K& a, std::span<const K> x, std::size_t from = 0) {
  if (a.is_zero()) return;
  if constexpr (std::is_same_v<K, Zp>) {
    const std::uint64_t p = a.modulus() ? a.modulus() : 1;
    const std::uint64_t av = a.value();
    for (std::size_t j = from; j < x.size(); ++j) {
      const std::uint32_t xv = x[j].value();
      if (xv == 0) continue;
      const std::uint64_t s = (std::uint64_t{y[j].value()} + av * xv) % p;
      y[j] = Zp::canonical(static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(p));
    }
  } else {
    for (std::size_t j = from; j < x.size(); ++j)
      if (!x[j].is_zero()) y[j] += a * x[j];
  }
}

template <FieldElement K>
void axpy(Vec<K>& y, const K& a, const Vec<K>& x, std::size_t from = 0) {
  axpy<K>(std::span<K>(y), a, std::span<const K>(x), from);
}

/// Dense row-major matrix; every entry belongs to the matrix's field.
template <FieldElement K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Field& f)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, K::zero(f)) {}

  static Matrix from_rows(const std::vector<Vec<K>>& rows, std::size_t cols, const Field& f) {
    Matrix m(rows.size(), cols, f);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == cols, ErrorKind::dimension_mismatch, "ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
    }
    return m;
  }

  static Matrix from_ints(const std::vector<std::vector<long long>>& rows, const Field& f) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols, f);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == cols, ErrorKind::dimension_mismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = K::from_int(rows[i][j], f);
    }
    return m;
  }

  static Matrix identity(std::size_t n, const Field& f) {
    Matrix m(n, n, f);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K::one(f);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const K> row(std::size_t i) const {
    return std::span<const K>(data_.data() + i * cols_, cols_);
  }

  std::vector<Vec<K>> to_rows() const {
    std::vector<Vec<K>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
    return out;
  }

  Vec<K> column(std::size_t j) const {
    Vec<K> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const { return is_zero_vector<K>(std::span<const K>(data_)); }

  /// Throws "field mismatch" unless every entry lives in field().
  void check_field() const {
    for (const K& x : data_) {
      bool ok;
      if constexpr (std::is_same_v<K, Zp>)
        ok = !field_.is_rational() && (x.modulus() == field_.modulus || x.modulus() == 0);
      else
        ok = field_.is_rational();
      require(ok, ErrorKind::field_mismatch, "field mismatch");
    }
  }

  Vec<K> operator*(const Vec<K>& v) const {
    require(v.size() == cols_, ErrorKind::dimension_mismatch, "matrix-vector dimension mismatch");
    Vec<K> out = zeros<K>(rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Matrix operator*(const Matrix& o) const {
    require(cols_ == o.rows_, ErrorKind::dimension_mismatch, "matrix product dimension mismatch");
    require(field_ == o.field_, ErrorKind::field_mismatch, "field mismatch");
    Matrix out(rows_, o.cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const K& a = (*this)(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec<K> data_;
};

template <FieldElement K>
struct RrefResult {
  Matrix<K> reduced;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return pivots.size(); }
};

namespace detail {

// In-place Gauss-Jordan on a list of rows. Pivot: leftmost column with a
// nonzero entry, first such row. Returns the pivot columns; rows[0..rank) are
// the reduced nonzero rows afterwards.
template <FieldElement K>
std::vector<std::size_t> gauss_jordan(std::vector<Vec<K>>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t col = 0; col < cols && prow < rows.size(); ++col) {
    std::size_t sel = prow;
    while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[prow]);
    Vec<K>& pr = rows[prow];
    if (!pr[col].is_one()) {
      const K inv = pr[col].inverse();
      for (std::size_t j = col; j < cols; ++j)
        if (!pr[j].is_zero()) pr[j] *= inv;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == prow || rows[i][col].is_zero()) continue;
      axpy<K>(rows[i], -rows[i][col], pr, col);
    }
    pivots.push_back(col);
    ++prow;
  }
  return pivots;
}

}  // namespace detail

/// Reduced row-echelon form with its pivot columns.
template <FieldElement K>
RrefResult<K> rref(const Matrix<K>& m) {
  m.check_field();
  std::vector<Vec<K>> rows = m.to_rows();
  auto pivots = detail::gauss_jordan<K>(rows, m.cols());
  return {Matrix<K>::from_rows(rows, m.cols(), m.field()), std::move(pivots)};
}

template <FieldElement K>
std::size_t rank(const Matrix<K>& m) {
  m.check_field();
  std::vector<Vec<K>> rows = m.to_rows();
  return detail::gauss_jordan<K>(rows, m.cols()).size();
}

/// Canonical nullspace basis: one vector per free column, carrying a 1 in
/// that column and zeros in the other free columns.
template <FieldElement K>
std::vector<Vec<K>> nullspace_basis(const Matrix<K>& m) {
  const auto r = rref(m);
  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vec<K>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<K> v = zeros<K>(m.cols(), f);
    v[free] = K::one(f);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some x with A x = b (free variables zero), or nullopt when inconsistent.
template <FieldElement K>
std::optional<Vec<K>> solve_linear(const Matrix<K>& a, const Vec<K>& b) {
  require(b.size() == a.rows(), ErrorKind::dimension_mismatch, "dimension mismatch");
  const Field& f = a.field();
  Matrix<K> aug(a.rows(), a.cols() + 1, f);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == a.cols()) return std::nullopt;
  Vec<K> x = zeros<K>(a.cols(), f);
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.reduced(i, a.cols());
  return x;
}

template <FieldElement K>
K determinant(const Matrix<K>& m) {
  require(m.rows() == m.cols(), ErrorKind::dimension_mismatch, "determinant of non-square matrix");
  m.check_field();
  std::vector<Vec<K>> rows = m.to_rows();
  const std::size_t n = m.rows();
  K det = K::one(m.field());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && rows[sel][col].is_zero()) ++sel;
    if (sel == n) return K::zero(m.field());
    if (sel != col) {
      std::swap(rows[sel], rows[col]);
      det = -det;
    }
    det *= rows[col][col];
    const K inv = rows[col][col].inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (rows[i][col].is_zero()) continue;
      axpy<K>(rows[i], -(rows[i][col] * inv), rows[col], col);
    }
  }
  return det;
}

/// Incrementally built row space in semi-echelon form. Each stored row is
/// normalized to 1 at its pivot and vanishes at the pivots of earlier rows.
template <FieldElement K>
class EchelonBasis {
 public:
  EchelonBasis(std::size_t width, const Field& f) : width_(width), field_(f) {}

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Vec<K>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residual of v after elimination against the stored rows.
  Vec<K> reduce(Vec<K> v) const {
    require(v.size() == width_, ErrorKind::dimension_mismatch, "vector width mismatch");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const K c = v[pivots_[k]];
      if (!c.is_zero()) axpy<K>(v, -c, rows_[k], pivots_[k]);
    }
    return v;
  }

  bool contains(const Vec<K>& v) const { return is_zero_vector<K>(reduce(v)); }

  /// Adds v to the span; returns false when v was already in it.
  bool insert(Vec<K> v) {
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < width_ && v[p].is_zero()) ++p;
    if (p == width_) return false;
    if (!v[p].is_one()) {
      const K inv = v[p].inverse();
      for (std::size_t j = p; j < width_; ++j)
        if (!v[j].is_zero()) v[j] *= inv;
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

 private:
  std::size_t width_;
  Field field_;
  std::vector<Vec<K>> rows_;
  std::vector<std::size_t> pivots_;
};

/// The quotient V / W of a coordinate space V = K^ambient by the span W of
/// some vectors. Columns earlier in `column_order` are preferred as pivots,
/// so the surviving (basis) columns are the latest ones in that order.
template <FieldElement K>
class QuotientSpace {
 public:
  QuotientSpace() = default;

  QuotientSpace(std::size_t ambient, const std::vector<Vec<K>>& spanning,
                std::vector<std::size_t> column_order, const Field& f)
      : ambient_(ambient), field_(f) {
    require(column_order.size() == ambient, ErrorKind::dimension_mismatch, "column order size");
    std::vector<Vec<K>> rows;
    rows.reserve(spanning.size());
    for (const auto& v : spanning) {
      require(v.size() == ambient, ErrorKind::dimension_mismatch, "spanning vector width");
      if (is_zero_vector<K>(v)) continue;
      Vec<K> permuted(ambient);
      for (std::size_t j = 0; j < ambient; ++j) permuted[j] = v[column_order[j]];
      rows.push_back(std::move(permuted));
    }
    auto pivots = detail::gauss_jordan<K>(rows, ambient);
    std::vector<bool> is_pivot(ambient, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_positions;
    for (std::size_t j = 0; j < ambient; ++j) {
      if (is_pivot[j]) continue;
      free_positions.push_back(j);
      basis_.push_back(column_order[j]);
    }
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      pivots_.push_back(column_order[pivots[r]]);
      Vec<K> red;
      red.reserve(free_positions.size());
      for (auto j : free_positions) red.push_back(rows[r][j]);
      reduced_.push_back(std::move(red));
    }
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t rank() const { return pivots_.size(); }
  const std::vector<std::size_t>& basis_columns() const { return basis_; }

  /// Coordinates of the class of v with respect to the basis columns.
  Vec<K> coordinates(std::span<const K> v) const {
    require(v.size() == ambient_, ErrorKind::dimension_mismatch, "vector width mismatch");
    Vec<K> c;
    c.reserve(basis_.size());
    for (auto j : basis_) c.push_back(v[j]);
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      const K& x = v[pivots_[r]];
      if (!x.is_zero()) axpy<K>(c, -x, reduced_[r]);
    }
    return c;
  }

  Vec<K> coordinates(const Vec<K>& v) const { return coordinates(std::span<const K>(v)); }

  /// A representative of the class with coordinates c (lives on basis columns).
  Vec<K> lift(const Vec<K>& c) const {
    Vec<K> v = zeros<K>(ambient_, field_);
    for (std::size_t t = 0; t < basis_.size(); ++t) v[basis_[t]] = c[t];
    return v;
  }

 private:
  std::size_t ambient_ = 0;
  Field field_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> pivots_;
  std::vector<Vec<K>> reduced_;
};

}  // namespace tacalc
