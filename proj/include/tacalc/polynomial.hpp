#pragma once

// Sparse multivariate polynomials over an exact field, a small parser and
// canonical printer for them, and Pfaffians of skew-symmetric matrices.

#include <cctype>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "tacalc/scalars.hpp"

namespace tacalc {

/// Dense exponent vector, one entry per context variable.
using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

inline Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

/// Graded lexicographic order, greatest first: higher total degree wins, then
/// the larger exponent of the earliest variable.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

/// Ordered variable names plus the coefficient field.
struct PolyContext {
  std::vector<std::string> names;
  Field field;

  std::size_t size() const { return names.size(); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    return std::nullopt;
  }

  friend bool operator==(const PolyContext&, const PolyContext&) = default;
};

using ContextPtr = std::shared_ptr<const PolyContext>;

inline ContextPtr make_context(std::vector<std::string> names, const Field& f) {
  return std::make_shared<const PolyContext>(PolyContext{std::move(names), f});
}

template <FieldElement K>
class Polynomial {
 public:
  using Terms = std::map<Monomial, K, GrlexGreater>;

  Polynomial() = default;
  explicit Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static Polynomial constant(ContextPtr ctx, const K& c) {
    Polynomial p(ctx);
    p.add_term(Monomial(ctx->size(), 0), c);
    return p;
  }

  static Polynomial variable(ContextPtr ctx, std::size_t i) {
    Monomial m(ctx->size(), 0);
    m.at(i) = 1;
    Polynomial p(ctx);
    p.add_term(m, K::one(ctx->field));
    return p;
  }

  static Polynomial monomial(ContextPtr ctx, Monomial m, const K& c) {
    Polynomial p(ctx);
    p.add_term(std::move(m), c);
    return p;
  }

  const ContextPtr& context() const { return ctx_; }
  const Field& field() const { return ctx_->field; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Maximum total degree of a term; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const int d = degree();
    for (const auto& [m, c] : terms_)
      if (total_degree(m) != d) return false;
    return true;
  }

  K coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? K::zero(field()) : it->second;
  }

  void add_term(Monomial m, const K& c) {
    require(m.size() == ctx_->size(), ErrorKind::dimension_mismatch, "exponent vector length");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_context(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_context(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial operator-() const { return scaled(-K::one(field())); }

  Polynomial scaled(const K& s) const {
    Polynomial out(ctx_);
    if (s.is_zero()) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * s);
    return out;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_context(b);
    Polynomial out(a.ctx_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(monomial_product(ma, mb), ca * cb);
    return out;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_ && (a.ctx_ == b.ctx_ || *a.ctx_ == *b.ctx_);
  }

  /// Value at a point of K^n.
  K evaluate(const Vec<K>& point) const {
    require(point.size() == ctx_->size(), ErrorKind::dimension_mismatch, "evaluation point");
    K sum = K::zero(field());
    for (const auto& [m, c] : terms_) {
      K t = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (int e = 0; e < m[i]; ++e) t *= point[i];
      sum += t;
    }
    return sum;
  }

  /// Ring map sending variable i to images[i] (all in one target context).
  Polynomial substitute(const std::vector<Polynomial>& images, ContextPtr target) const {
    require(images.size() == ctx_->size(), ErrorKind::dimension_mismatch, "substitution arity");
    Polynomial out(target);
    for (const auto& [m, c] : terms_) {
      Polynomial t = constant(target, c);
      for (std::size_t i = 0; i < m.size(); ++i)
        for (int e = 0; e < m[i]; ++e) t = t * images[i];
      out += t;
    }
    return out;
  }

  /// The same polynomial written in a context whose variable names contain
  /// ours; variables are matched by name.
  Polynomial rename_into(ContextPtr target) const {
    std::vector<std::size_t> where(ctx_->size());
    for (std::size_t i = 0; i < ctx_->size(); ++i) {
      auto j = target->index_of(ctx_->names[i]);
      require(j.has_value(), ErrorKind::precondition,
              "variable " + ctx_->names[i] + " missing from target ring");
      where[i] = *j;
    }
    Polynomial out(target);
    for (const auto& [m, c] : terms_) {
      Monomial n(target->size(), 0);
      for (std::size_t i = 0; i < m.size(); ++i) n[where[i]] += m[i];
      out.add_term(std::move(n), c);
    }
    return out;
  }

  /// Canonical text: terms in descending grlex order, e.g. "2*X1*X3 + X2*X3".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string coef = c.to_string();
      bool negative = false;
      if constexpr (std::is_same_v<K, Rational>) {
        negative = sgn(c.value()) < 0;
        if (negative) coef = (-c).to_string();
      }
      if (first)
        s += negative ? "-" : "";
      else
        s += negative ? " - " : " + ";
      first = false;
      const bool constant_term = total_degree(m) == 0;
      const bool unit = coef == "1";
      std::string mono;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!mono.empty()) mono += '*';
        mono += ctx_->names[i];
        if (m[i] > 1) mono += '^' + std::to_string(m[i]);
      }
      if (constant_term)
        s += coef;
      else if (unit)
        s += mono;
      else
        s += coef + '*' + mono;
    }
    return s;
  }

 private:
  void check_context(const Polynomial& o) const {
    require(ctx_ == o.ctx_ || *ctx_ == *o.ctx_, ErrorKind::precondition, "context mismatch");
  }

  ContextPtr ctx_;
  Terms terms_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, const PolyContext& ctx) : s_(text), ctx_(ctx) {}

  // Returns coefficient/monomial pairs; the caller converts coefficients.
  std::vector<std::pair<mpq_class, Monomial>> parse() {
    std::vector<std::pair<mpq_class, Monomial>> terms;
    skip_ws();
    require(pos_ < s_.size(), ErrorKind::parse, "empty polynomial");
    bool negative = false;
    if (peek('+') || peek('-')) negative = s_[pos_++] == '-';
    terms.push_back(term(negative));
    skip_ws();
    while (pos_ < s_.size()) {
      if (!(peek('+') || peek('-'))) error("expected '+' or '-'");
      negative = s_[pos_++] == '-';
      terms.push_back(term(negative));
      skip_ws();
    }
    return terms;
  }

 private:
  std::pair<mpq_class, Monomial> term(bool negative) {
    mpq_class coef(negative ? -1 : 1);
    Monomial mono(ctx_.size(), 0);
    factor(coef, mono);
    skip_ws();
    while (peek('*')) {
      ++pos_;
      factor(coef, mono);
      skip_ws();
    }
    return {coef, mono};
  }

  void factor(mpq_class& coef, Monomial& mono) {
    skip_ws();
    if (pos_ >= s_.size()) error("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class q(integer(), 1);
      skip_ws();
      if (peek('/')) {
        ++pos_;
        skip_ws();
        mpz_class den = integer();
        if (den == 0) error("zero denominator");
        q /= mpq_class(den);
      }
      coef *= q;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      auto idx = ctx_.index_of(name);
      if (!idx) error("unknown variable '" + name + "'");
      int exponent = 1;
      skip_ws();
      if (peek('^')) {
        ++pos_;
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          error("non-integer exponent");
        mpz_class e = integer();
        if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == '/')) error("non-integer exponent");
        if (e > 1000) error("exponent too large");
        exponent = static_cast<int>(e.get_si());
      }
      mono[*idx] += exponent;
      return;
    }
    error(std::string("malformed token '") + c + "'");
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::parse, what + " at column " + std::to_string(pos_ + 1));
  }

  std::string_view s_;
  const PolyContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses signed sums of `coef*mon` terms, where coef is an integer or a/b and
/// mon is a '*'-joined product of var or var^k.
template <FieldElement K>
Polynomial<K> parse_poly(std::string_view text, const ContextPtr& ctx) {
  detail::PolyParser parser(text, *ctx);
  Polynomial<K> p(ctx);
  for (auto& [q, m] : parser.parse()) p.add_term(std::move(m), K::from_rational(q, ctx->field));
  return p;
}

/// Skew-symmetric matrix stored by its strict upper triangle.
template <FieldElement K>
class SkewMatrix {
 public:
  SkewMatrix(std::size_t d, ContextPtr ctx) : d_(d), ctx_(ctx), upper_(d * (d - (d ? 1 : 0)) / 2, Polynomial<K>(ctx)) {}

  std::size_t size() const { return d_; }
  const ContextPtr& context() const { return ctx_; }

  void set(std::size_t i, std::size_t j, Polynomial<K> p) {
    require(i < j && j < d_, ErrorKind::precondition, "skew entries are set above the diagonal");
    upper_[index(i, j)] = std::move(p);
  }

  Polynomial<K> entry(std::size_t i, std::size_t j) const {
    if (i == j) return Polynomial<K>(ctx_);
    if (i < j) return upper_[index(i, j)];
    return -upper_[index(j, i)];
  }

  /// Drops the listed rows/columns (sorted, distinct).
  SkewMatrix without(const std::vector<std::size_t>& drop) const {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < d_; ++i)
      if (!std::binary_search(drop.begin(), drop.end(), i)) keep.push_back(i);
    SkewMatrix out(keep.size(), ctx_);
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = a + 1; b < keep.size(); ++b) out.set(a, b, entry(keep[a], keep[b]));
    return out;
  }

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    // rows 0..i-1 contribute (d-1) + (d-2) + ... entries
    return i * d_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t d_;
  ContextPtr ctx_;
  std::vector<Polynomial<K>> upper_;
};

namespace detail {

template <FieldElement K>
Polynomial<K> pfaffian_rec(const SkewMatrix<K>& a, std::vector<std::size_t>& idx) {
  const ContextPtr& ctx = a.context();
  if (idx.empty()) return Polynomial<K>::constant(ctx, K::one(ctx->field));
  if (idx.size() % 2 == 1) return Polynomial<K>(ctx);
  Polynomial<K> sum(ctx);
  const std::size_t first = idx[0];
  for (std::size_t k = 1; k < idx.size(); ++k) {
    Polynomial<K> e = a.entry(first, idx[k]);
    if (e.is_zero()) continue;
    std::vector<std::size_t> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t t = 1; t < idx.size(); ++t)
      if (t != k) rest.push_back(idx[t]);
    Polynomial<K> term = e * pfaffian_rec(a, rest);
    if (k % 2 == 1)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

}  // namespace detail

/// Pfaffian by expansion along the first row; zero for odd size.
template <FieldElement K>
Polynomial<K> pfaffian(const SkewMatrix<K>& a) {
  std::vector<std::size_t> idx(a.size());
  std::iota(idx.begin(), idx.end(), 0);
  return detail::pfaffian_rec(a, idx);
}

/// s_j = (-1)^j Pf(A with row and column j deleted), j counted from 0, i.e.
/// the sign (-1)^(j+1) in 1-based numbering. With this sign A * s = 0.
template <FieldElement K>
std::vector<Polynomial<K>> submax_pfaffians(const SkewMatrix<K>& a) {
  const std::size_t d = a.size();
  require(d % 2 == 1 && d >= 3, ErrorKind::precondition,
          "submaximal Pfaffians need an odd size d >= 3, got " + std::to_string(d));
  std::vector<Polynomial<K>> s;
  for (std::size_t j = 0; j < d; ++j) {
    Polynomial<K> p = pfaffian(a.without({j}));
    s.push_back(j % 2 == 0 ? p : -p);
  }
  return s;
}

}  // namespace tacalc
