#pragma once

// Finite-dimensional standard-graded quotients k[x_1..x_n]/I with I generated
// by homogeneous forms of degree >= 2.

#include <map>
#include <memory>
#include <set>

#include "tacalc/polynomial.hpp"

namespace tacalc {

template <FieldElement K>
struct AlgebraSpec {
  ContextPtr ctx;
  std::vector<Polynomial<K>> relations;

  const Field& field() const { return ctx->field; }
  std::size_t num_vars() const { return ctx->size(); }
  const std::vector<std::string>& var_names() const { return ctx->names; }

  /// Every relation must be a nonzero homogeneous form of degree >= 2.
  void validate() const {
    for (std::size_t i = 0; i < relations.size(); ++i) {
      const auto& r = relations[i];
      require(r.context() == ctx || *r.context() == *ctx, ErrorKind::precondition,
              "relation " + std::to_string(i + 1) + " lives in a different ring");
      require(!r.is_zero(), ErrorKind::precondition, "relation " + std::to_string(i + 1) + " is zero");
      require(r.is_homogeneous(), ErrorKind::precondition,
              "inhomogeneous relation: " + r.to_string());
      require(r.degree() >= 2, ErrorKind::precondition,
              "relation of degree < 2: " + r.to_string());
    }
  }
};

template <FieldElement K>
AlgebraSpec<K> make_spec(std::vector<std::string> vars, const std::vector<std::string>& relations,
                         const Field& f) {
  AlgebraSpec<K> spec{make_context(std::move(vars), f), {}};
  for (const auto& r : relations) spec.relations.push_back(parse_poly<K>(r, spec.ctx));
  spec.validate();
  return spec;
}

/// Disjoint-variable tensor product: concatenated variables and relations.
template <FieldElement K>
AlgebraSpec<K> tensor(const AlgebraSpec<K>& a, const AlgebraSpec<K>& b) {
  require(a.field() == b.field(), ErrorKind::field_mismatch, "field mismatch");
  std::vector<std::string> names = a.var_names();
  for (const auto& n : b.var_names()) {
    require(!a.ctx->index_of(n).has_value(), ErrorKind::precondition,
            "variable name collision: " + n);
    names.push_back(n);
  }
  AlgebraSpec<K> out{make_context(std::move(names), a.field()), {}};
  for (const auto& r : a.relations) out.relations.push_back(r.rename_into(out.ctx));
  for (const auto& r : b.relations) out.relations.push_back(r.rename_into(out.ctx));
  return out;
}

/// All monomials of total degree d in n variables, in descending grlex order.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, int d) {
  std::vector<Monomial> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial m(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      m[i] = left;
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[i] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, d);
  return out;
}

template <FieldElement K>
class GradedAlgebra;

template <FieldElement K>
using AlgebraPtr = std::shared_ptr<const GradedAlgebra<K>>;

/// Per-degree monomial bases, normal forms of every monomial up to the top
/// degree, and the multiplication table of basis elements. Immutable.
template <FieldElement K>
class GradedAlgebra {
 public:
  static constexpr int kDefaultDegreeCap = 12;

  /// Builds A_d for d = 0, 1, ... as the quotient of V (x) A_{d-1} by the
  /// commutation relations and the degree-d relations; stops at the first
  /// vanishing degree. Throws if A_{degree_cap} is still nonzero.
  static AlgebraPtr<K> build(AlgebraSpec<K> spec, int degree_cap = kDefaultDegreeCap) {
    spec.validate();
    require(degree_cap >= 2, ErrorKind::precondition, "degree cap must be at least 2");
    auto alg = std::shared_ptr<GradedAlgebra>(new GradedAlgebra(std::move(spec)));
    alg->construct(degree_cap);
    return alg;
  }

  const AlgebraSpec<K>& spec() const { return spec_; }
  const Field& field() const { return spec_.field(); }
  std::size_t num_vars() const { return spec_.num_vars(); }
  int top_degree() const { return static_cast<int>(basis_.size()) - 1; }

  std::size_t dim(int d) const {
    return d < 0 || d > top_degree() ? 0 : basis_[static_cast<std::size_t>(d)].size();
  }
  std::size_t total_dim() const { return offsets_.back(); }
  std::size_t offset(int d) const { return offsets_[static_cast<std::size_t>(d)]; }
  const std::vector<Monomial>& basis(int d) const { return basis_.at(static_cast<std::size_t>(d)); }

  std::vector<std::size_t> hilbert() const {
    std::vector<std::size_t> h;
    for (const auto& b : basis_) h.push_back(b.size());
    return h;
  }

  /// Rank of the relation span in each degree (number of monomials minus dim).
  const std::vector<std::size_t>& relation_ranks() const { return relation_ranks_; }

  /// Coordinates of a monomial in the basis of its own degree.
  Vec<K> monomial_coordinates(const Monomial& m) const {
    const int d = total_degree(m);
    if (d > top_degree()) return {};
    return nf_[static_cast<std::size_t>(d)].at(m);
  }

  /// Coordinates in A_d of a homogeneous polynomial of degree d (or zero).
  Vec<K> homogeneous_nf(const Polynomial<K>& p, int d) const {
    Vec<K> out = zeros<K>(dim(d), field());
    for (const auto& [m, c] : p.terms()) {
      require(total_degree(m) == d, ErrorKind::precondition,
              "expected a form of degree " + std::to_string(d) + ": " + p.to_string());
      if (d > top_degree()) continue;
      axpy<K>(out, c, nf_[static_cast<std::size_t>(d)].at(m));
    }
    return out;
  }

  /// Graded coordinate vector (length total_dim()) of the class of p.
  Vec<K> normal_form(const Polynomial<K>& p) const {
    Vec<K> out = zeros<K>(total_dim(), field());
    for (const auto& [m, c] : p.terms()) {
      const int d = total_degree(m);
      if (d > top_degree()) continue;
      const auto& v = nf_[static_cast<std::size_t>(d)].at(m);
      std::span<K> slot(out.data() + offset(d), v.size());
      axpy<K>(slot, c, std::span<const K>(v));
    }
    return out;
  }

  /// B_p[i] * B_q[j] in the coordinates of A_{p+q}; requires p + q <= top.
  const Vec<K>& product(int p, std::size_t i, int q, std::size_t j) const {
    const auto& table = products_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
    return table[i * dim(q) + j];
  }

  /// out += a * b for a in A_p and b in A_q; out has length dim(p + q).
  void multiply_add(int p, std::span<const K> a, int q, std::span<const K> b, std::span<K> out) const {
    if (p < 0 || q < 0 || p + q > top_degree()) return;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j].is_zero()) continue;
        axpy<K>(out, a[i] * b[j], std::span<const K>(product(p, i, q, j)));
      }
    }
  }

  /// Product of two graded coordinate vectors.
  Vec<K> multiply(const Vec<K>& u, const Vec<K>& v) const {
    require(u.size() == total_dim() && v.size() == total_dim(), ErrorKind::dimension_mismatch,
            "graded vector length");
    Vec<K> out = zeros<K>(total_dim(), field());
    for (int p = 0; p <= top_degree(); ++p)
      for (int q = 0; p + q <= top_degree(); ++q)
        multiply_add(p, slice(u, p), q, slice(v, q),
                     std::span<K>(out.data() + offset(p + q), dim(p + q)));
    return out;
  }

  std::span<const K> slice(const Vec<K>& graded, int d) const {
    return std::span<const K>(graded.data() + offset(d), dim(d));
  }

  /// The basis expansion of a homogeneous element as a polynomial.
  Polynomial<K> to_polynomial(int d, std::span<const K> coords) const {
    Polynomial<K> p(spec_.ctx);
    if (d < 0 || d > top_degree()) return p;
    for (std::size_t t = 0; t < coords.size(); ++t) p.add_term(basis(d)[t], coords[t]);
    return p;
  }

  std::string element_to_string(int d, std::span<const K> coords) const {
    return to_polynomial(d, coords).to_string();
  }

 private:
  explicit GradedAlgebra(AlgebraSpec<K> spec) : spec_(std::move(spec)) {}

  void construct(int degree_cap) {
    const std::size_t n = num_vars();
    const Field& f = field();
    basis_.push_back({Monomial(n, 0)});
    nf_.emplace_back();
    nf_[0][Monomial(n, 0)] = Vec<K>{K::one(f)};
    relation_ranks_.push_back(0);

    for (int d = 1; d <= degree_cap; ++d) {
      const auto& prev = basis_.back();
      const std::size_t hp = prev.size();
      const std::size_t ambient = n * hp;
      auto column_monomial = [&](std::size_t c) {
        Monomial m = prev[c % hp];
        m[c / hp] += 1;
        return m;
      };

      std::vector<Vec<K>> rows;
      if (d >= 2) {
        const auto& prev2 = basis_[static_cast<std::size_t>(d - 2)];
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            for (const auto& m : prev2) {
              Monomial xj_m = m, xi_m = m;
              xj_m[j] += 1;
              xi_m[i] += 1;
              Vec<K> v = zeros<K>(ambient, f);
              place(v, i, hp, K::one(f), nf_.back().at(xj_m));
              place(v, j, hp, -K::one(f), nf_.back().at(xi_m));
              rows.push_back(std::move(v));
            }
      }
      for (const auto& rel : spec_.relations) {
        if (rel.degree() != d) continue;
        Vec<K> v = zeros<K>(ambient, f);
        for (const auto& [m, c] : rel.terms()) {
          const std::size_t k = first_variable(m);
          Monomial rest = m;
          rest[k] -= 1;
          place(v, k, hp, c, nf_.back().at(rest));
        }
        rows.push_back(std::move(v));
      }

      std::vector<std::size_t> order(ambient);
      std::iota(order.begin(), order.end(), 0);
      std::vector<Monomial> keys(ambient);
      for (std::size_t c = 0; c < ambient; ++c) keys[c] = column_monomial(c);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return GrlexGreater{}(keys[a], keys[b]);
      });

      QuotientSpace<K> quotient(ambient, rows, std::move(order), f);
      const auto all = monomials_of_degree(n, d);
      relation_ranks_.push_back(all.size() - quotient.dim());
      if (quotient.dim() == 0) break;
      require(d < degree_cap, ErrorKind::cap_exceeded,
              "not finite-dimensional within cap: degree " + std::to_string(d) +
                  " still has dimension " + std::to_string(quotient.dim()));

      std::vector<Monomial> basis;
      for (auto c : quotient.basis_columns()) basis.push_back(keys[c]);
      std::map<Monomial, Vec<K>> nf;
      for (const auto& m : all) {
        const std::size_t k = first_variable(m);
        Monomial rest = m;
        rest[k] -= 1;
        Vec<K> v = zeros<K>(ambient, f);
        place(v, k, hp, K::one(f), nf_.back().at(rest));
        nf.emplace(m, quotient.coordinates(v));
      }
      basis_.push_back(std::move(basis));
      nf_.push_back(std::move(nf));
    }

    offsets_.assign(1, 0);
    for (const auto& b : basis_) offsets_.push_back(offsets_.back() + b.size());

    const int top = top_degree();
    products_.resize(static_cast<std::size_t>(top) + 1);
    for (int p = 0; p <= top; ++p) {
      products_[static_cast<std::size_t>(p)].resize(static_cast<std::size_t>(top - p) + 1);
      for (int q = 0; p + q <= top; ++q) {
        auto& table = products_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
        for (const auto& a : basis(p))
          for (const auto& b : basis(q)) table.push_back(nf_[static_cast<std::size_t>(p + q)].at(monomial_product(a, b)));
      }
    }
  }

  static std::size_t first_variable(const Monomial& m) {
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k] > 0) return k;
    fail(ErrorKind::precondition, "constant monomial has no variable");
  }

  // v[block * width + t] += c * w[t]
  static void place(Vec<K>& v, std::size_t block, std::size_t width, const K& c, const Vec<K>& w) {
    std::span<K> slot(v.data() + block * width, width);
    axpy<K>(slot, c, std::span<const K>(w));
  }

  AlgebraSpec<K> spec_;
  std::vector<std::vector<Monomial>> basis_;
  std::vector<std::map<Monomial, Vec<K>>> nf_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> relation_ranks_;
  std::vector<std::vector<std::vector<Vec<K>>>> products_;
};

template <FieldElement K>
std::vector<std::size_t> hilbert(const GradedAlgebra<K>& a) {
  return a.hilbert();
}

template <FieldElement K>
struct Socle {
  std::vector<Vec<K>> basis;  // graded coordinate vectors
  std::vector<int> degrees;
  std::size_t dim = 0;
  bool gorenstein = false;
};

/// ann(m) computed degree by degree as the common kernel of multiplication by
/// each variable. Gorenstein (Artinian) iff the socle is one-dimensional.
template <FieldElement K>
Socle<K> socle(const GradedAlgebra<K>& a) {
  Socle<K> out;
  const std::size_t n = a.num_vars();
  for (int d = 0; d <= a.top_degree(); ++d) {
    const std::size_t h = a.dim(d), h1 = a.dim(d + 1);
    Matrix<K> m(n * h1, h, a.field());
    if (h1 > 0)
      for (std::size_t b = 0; b < h; ++b)
        for (std::size_t i = 0; i < n; ++i) {
          const auto& prod = a.product(1, i, d, b);
          for (std::size_t t = 0; t < h1; ++t) m(i * h1 + t, b) = prod[t];
        }
    for (auto& v : nullspace_basis(m)) {
      Vec<K> g = zeros<K>(a.total_dim(), a.field());
      std::copy(v.begin(), v.end(), g.begin() + static_cast<std::ptrdiff_t>(a.offset(d)));
      out.basis.push_back(std::move(g));
      out.degrees.push_back(d);
    }
  }
  out.dim = out.basis.size();
  out.gorenstein = out.dim == 1;
  return out;
}

}  // namespace tacalc
