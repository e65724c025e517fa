#pragma once

// The generic grade-3 Pfaffian complex 0 -> P -> P^d -> P^d -> P -> 0 over
// P = k[t_ij], d odd, and its specializations.

#include "tacalc/complexes.hpp"

namespace tacalc {

template <FieldElement K>
using PolyMatrix = std::vector<std::vector<Polynomial<K>>>;

template <FieldElement K>
PolyMatrix<K> multiply(const PolyMatrix<K>& a, const PolyMatrix<K>& b, const ContextPtr& ctx) {
  const std::size_t inner = b.size();
  const std::size_t cols = inner ? b[0].size() : 0;
  PolyMatrix<K> out(a.size(), std::vector<Polynomial<K>>(cols, Polynomial<K>(ctx)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    require(a[i].size() == inner, ErrorKind::dimension_mismatch, "matrix product shapes differ");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

template <FieldElement K>
bool is_zero_matrix(const PolyMatrix<K>& m) {
  for (const auto& row : m)
    for (const auto& p : row)
      if (!p.is_zero()) return false;
  return true;
}

template <FieldElement K>
PolyMatrix<K> substitute(const PolyMatrix<K>& m, const std::vector<Polynomial<K>>& images, const ContextPtr& target) {
  PolyMatrix<K> out;
  for (const auto& row : m) {
    std::vector<Polynomial<K>> r;
    for (const auto& p : row) r.push_back(p.substitute(images, target));
    out.push_back(std::move(r));
  }
  return out;
}

inline constexpr std::size_t kMaxPfaffianSize = 9;

inline std::string pfaffian_variable(std::size_t i, std::size_t j) {
  return "t" + std::to_string(i + 1) + std::to_string(j + 1);
}

/// sigma (d x 1), tau (d x d, skew) and sigma transposed (1 x d), read as the
/// maps P -> P^d -> P^d -> P.
template <FieldElement K>
struct PfaffianComplex {
  std::size_t d = 0;
  ContextPtr ctx;
  PolyMatrix<K> sigma;
  PolyMatrix<K> tau;
  PolyMatrix<K> sigma_t;
};

template <FieldElement K>
PfaffianComplex<K> pfaffian_from_skew(const SkewMatrix<K>& a) {
  const std::size_t d = a.size();
  PfaffianComplex<K> c{d, a.context(), {}, {}, {}};
  const auto s = submax_pfaffians(a);
  c.sigma_t.emplace_back();
  for (std::size_t j = 0; j < d; ++j) {
    c.sigma.push_back({s[j]});
    c.sigma_t[0].push_back(s[j]);
    std::vector<Polynomial<K>> row;
    for (std::size_t k = 0; k < d; ++k) row.push_back(a.entry(j, k));
    c.tau.push_back(std::move(row));
  }
  return c;
}

/// Generic complex in the variables t_ij, i < j (named t12, t13, ...).
template <FieldElement K>
PfaffianComplex<K> generic_pfaffian_complex(std::size_t d, const Field& f) {
  require(d % 2 == 1, ErrorKind::precondition, "the Pfaffian complex needs an odd size, got " + std::to_string(d));
  require(d >= 3, ErrorKind::precondition, "the Pfaffian complex needs size at least 3");
  require(d <= kMaxPfaffianSize, ErrorKind::cap_exceeded,
          "size " + std::to_string(d) + " is above the cap " + std::to_string(kMaxPfaffianSize));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) names.push_back(pfaffian_variable(i, j));
  const ContextPtr ctx = make_context(names, f);
  SkewMatrix<K> a(d, ctx);
  std::size_t v = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) a.set(i, j, Polynomial<K>::variable(ctx, v++));
  PfaffianComplex<K> c = pfaffian_from_skew(a);
  require(is_zero_matrix(multiply(c.tau, c.sigma, ctx)) && is_zero_matrix(multiply(c.sigma_t, c.tau, ctx)),
          ErrorKind::cross_check, "Pfaffian complex composites do not vanish");
  return c;
}

struct PfaffianReport {
  bool tau_sigma_zero = false;
  bool sigma_t_tau_zero = false;
  bool sigma_nonzero = false;
  std::array<std::size_t, 4> ranks{};

  bool passes() const { return tau_sigma_zero && sigma_t_tau_zero && sigma_nonzero; }
};

template <FieldElement K>
PfaffianReport verify_pfaffian_complex(const PfaffianComplex<K>& c) {
  PfaffianReport r;
  r.tau_sigma_zero = is_zero_matrix(multiply(c.tau, c.sigma, c.ctx));
  r.sigma_t_tau_zero = is_zero_matrix(multiply(c.sigma_t, c.tau, c.ctx));
  r.sigma_nonzero = !is_zero_matrix(c.sigma);
  r.ranks = {c.sigma_t.size(), c.tau.size(), c.sigma.size(), c.sigma.empty() ? 0 : c.sigma[0].size()};
  return r;
}

/// Images of the variables t_ij, looked up by name; every variable needs one.
template <FieldElement K>
std::vector<Polynomial<K>> assignment_images(const PfaffianComplex<K>& c,
                                             const std::map<std::string, Polynomial<K>>& assignment,
                                             const ContextPtr& target) {
  std::vector<Polynomial<K>> images;
  for (const auto& name : c.ctx->names) {
    auto it = assignment.find(name);
    require(it != assignment.end(), ErrorKind::precondition, "no image given for " + name);
    images.push_back(it->second.rename_into(target));
  }
  for (const auto& [name, p] : assignment)
    require(c.ctx->index_of(name).has_value(), ErrorKind::precondition, "unknown variable " + name);
  return images;
}

/// The complex after t_ij -> images, over a polynomial ring. Composites are
/// checked again; a failure means the assignment was inconsistent.
template <FieldElement K>
PfaffianComplex<K> specialize(const PfaffianComplex<K>& c, const std::map<std::string, Polynomial<K>>& assignment,
                              const ContextPtr& target) {
  const auto images = assignment_images(c, assignment, target);
  PfaffianComplex<K> out{c.d, target, substitute(c.sigma, images, target), substitute(c.tau, images, target),
                         substitute(c.sigma_t, images, target)};
  const auto r = verify_pfaffian_complex(out);
  require(r.tau_sigma_zero && r.sigma_t_tau_zero, ErrorKind::cross_check,
          "composite failure after specialization");
  return out;
}

/// Common degree of the nonzero images; all must be homogeneous.
template <FieldElement K>
int uniform_degree(const std::vector<Polynomial<K>>& images) {
  int delta = -1;
  for (const auto& p : images) {
    if (p.is_zero()) continue;
    require(p.is_homogeneous(), ErrorKind::precondition, "inhomogeneous image " + p.to_string());
    require(delta < 0 || p.degree() == delta, ErrorKind::precondition,
            "images must share one degree; found " + std::to_string(delta) + " and " + std::to_string(p.degree()));
    delta = p.degree();
  }
  require(delta > 0, ErrorKind::precondition, "images need positive degree and at least one nonzero image");
  return delta;
}

/// The specialized complex over a graded algebra as a window
/// C_0 <- C_1 <- C_2 <- C_3 with C_0 in degree 0. With images of degree delta
/// and m = (d - 1) / 2, the generators sit in degrees 0, m delta,
/// (m + 1) delta and (2m + 1) delta.
template <FieldElement K>
FreeComplex<K> specialize(const PfaffianComplex<K>& c, const std::map<std::string, Polynomial<K>>& assignment,
                          const AlgebraPtr<K>& target) {
  const ContextPtr& tctx = target->spec().ctx;
  const auto images = assignment_images(c, assignment, tctx);
  const int delta = uniform_degree(images);
  const PfaffianComplex<K> poly = specialize(c, assignment, tctx);
  const int m = static_cast<int>(c.d - 1) / 2;
  const std::size_t d = c.d;
  auto degrees = [](std::size_t n, int e) { return std::vector<int>(n, e); };
  FreeModule<K> c0(target, degrees(1, 0)), c1(target, degrees(d, m * delta)),
      c2(target, degrees(d, (m + 1) * delta)), c3(target, degrees(1, (2 * m + 1) * delta));
  FreeComplex<K> out{target, 0, {}, std::nullopt, 0};
  out.maps.push_back(map_from_forms<K>(c1, c0, poly.sigma_t));
  out.maps.push_back(map_from_forms<K>(c2, c1, poly.tau));
  out.maps.push_back(map_from_forms<K>(c3, c2, poly.sigma));
  require(check_complex(out).is_complex, ErrorKind::cross_check, "composite failure after specialization");
  return out;
}

template <FieldElement K>
std::string matrix_to_string(const PolyMatrix<K>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? ", " : "") + m[i][j].to_string();
    s += "]";
  }
  return s + "]";
}

}  // namespace tacalc
