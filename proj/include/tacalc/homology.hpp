#pragma once

// Graded free modules and maps over a GradedAlgebra, minimal free
// resolutions computed one internal degree at a time, deviations, duals and
// Ext into the ring.

#include <functional>
#include <map>

#include "tacalc/algebra.hpp"

namespace tacalc {

/// Finite free module ⊕ A(-a_g). Its degree-e piece is ⊕ A_{e - a_g}, laid
/// out generator by generator.
template <FieldElement K>
class FreeModule {
 public:
  FreeModule() = default;
  FreeModule(AlgebraPtr<K> algebra, std::vector<int> degrees)
      : algebra_(std::move(algebra)), degrees_(std::move(degrees)) {}

  const AlgebraPtr<K>& algebra() const { return algebra_; }
  const GradedAlgebra<K>& ring() const { return *algebra_; }
  std::size_t rank() const { return degrees_.size(); }
  const std::vector<int>& degrees() const { return degrees_; }
  int degree(std::size_t g) const { return degrees_[g]; }

  /// Offsets of each generator's block inside the degree-e piece; the last
  /// entry is the piece dimension.
  std::vector<std::size_t> layout(int e) const {
    std::vector<std::size_t> off(rank() + 1, 0);
    for (std::size_t g = 0; g < rank(); ++g) off[g + 1] = off[g] + ring().dim(e - degrees_[g]);
    return off;
  }

  std::size_t piece_dim(int e) const { return layout(e).back(); }

  /// Internal degrees where the module can be nonzero (empty range if rank 0).
  std::pair<int, int> degree_range() const {
    if (degrees_.empty()) return {0, -1};
    auto [lo, hi] = std::minmax_element(degrees_.begin(), degrees_.end());
    return {*lo, *hi + ring().top_degree()};
  }

  FreeModule shifted(int s) const {
    std::vector<int> d = degrees_;
    for (auto& x : d) x += s;
    return FreeModule(algebra_, std::move(d));
  }

  /// Hom(F, A) with dual generators in the negated degrees.
  FreeModule dual() const { return shifted_negated(); }

  /// a * x for a in A_p and x in the degree-q piece; result in piece p + q.
  Vec<K> scale(int p, std::span<const K> a, int q, std::span<const K> x) const {
    const auto in = layout(q), out = layout(p + q);
    Vec<K> r = zeros<K>(out.back(), ring().field());
    for (std::size_t g = 0; g < rank(); ++g) {
      const int qg = q - degrees_[g];
      std::span<const K> xb(x.data() + in[g], in[g + 1] - in[g]);
      std::span<K> rb(r.data() + out[g], out[g + 1] - out[g]);
      ring().multiply_add(p, a, qg, xb, rb);
    }
    return r;
  }

  /// Basis element t of A_p times x in piece q.
  Vec<K> scale_basis(int p, std::size_t t, int q, std::span<const K> x) const {
    Vec<K> a = zeros<K>(ring().dim(p), ring().field());
    a[t] = K::one(ring().field());
    return scale(p, a, q, x);
  }

  friend bool operator==(const FreeModule& a, const FreeModule& b) {
    return a.algebra_ == b.algebra_ && a.degrees_ == b.degrees_;
  }

 private:
  FreeModule shifted_negated() const {
    std::vector<int> d = degrees_;
    for (auto& x : d) x = -x;
    return FreeModule(algebra_, std::move(d));
  }

  AlgebraPtr<K> algebra_;
  std::vector<int> degrees_;
};

/// Degree-preserving map of free modules, stored by the images of the source
/// generators: column j lives in the target piece of degree deg(source gen j).
/// Equivalently a matrix whose (i, j) entry is a form of degree
/// deg(source j) - deg(target i).
template <FieldElement K>
class ModuleMap {
 public:
  ModuleMap() = default;
  ModuleMap(FreeModule<K> source, FreeModule<K> target, std::vector<Vec<K>> columns)
      : source_(std::move(source)), target_(std::move(target)), columns_(std::move(columns)) {
    require(columns_.size() == source_.rank(), ErrorKind::dimension_mismatch,
            "map needs one column per source generator");
    for (std::size_t j = 0; j < columns_.size(); ++j)
      require(columns_[j].size() == target_.piece_dim(source_.degree(j)),
              ErrorKind::dimension_mismatch, "map column has the wrong length");
  }

  /// Builds a map from entry forms entries[i][j] in A_{deg src j - deg tgt i}.
  static ModuleMap from_entries(FreeModule<K> source, FreeModule<K> target,
                                const std::vector<std::vector<Vec<K>>>& entries) {
    require(entries.size() == target.rank(), ErrorKind::dimension_mismatch, "entry rows");
    std::vector<Vec<K>> cols;
    for (std::size_t j = 0; j < source.rank(); ++j) {
      const int dj = source.degree(j);
      const auto lay = target.layout(dj);
      Vec<K> c = zeros<K>(lay.back(), source.ring().field());
      for (std::size_t i = 0; i < target.rank(); ++i) {
        require(entries[i].size() == source.rank(), ErrorKind::dimension_mismatch, "entry cols");
        const auto& e = entries[i][j];
        const std::size_t w = lay[i + 1] - lay[i];
        if (w == 0) {
          require(is_zero_vector<K>(e), ErrorKind::precondition,
                  "nonzero entry in an impossible degree");
          continue;
        }
        require(e.size() == w, ErrorKind::dimension_mismatch, "entry has the wrong degree");
        std::copy(e.begin(), e.end(), c.begin() + static_cast<std::ptrdiff_t>(lay[i]));
      }
      cols.push_back(std::move(c));
    }
    return ModuleMap(std::move(source), std::move(target), std::move(cols));
  }

  static ModuleMap zero(FreeModule<K> source, FreeModule<K> target) {
    std::vector<Vec<K>> cols;
    for (std::size_t j = 0; j < source.rank(); ++j)
      cols.push_back(zeros<K>(target.piece_dim(source.degree(j)), source.ring().field()));
    return ModuleMap(std::move(source), std::move(target), std::move(cols));
  }

  const FreeModule<K>& source() const { return source_; }
  const FreeModule<K>& target() const { return target_; }
  const Vec<K>& column(std::size_t j) const { return columns_[j]; }
  const std::vector<Vec<K>>& columns() const { return columns_; }
  const GradedAlgebra<K>& ring() const { return source_.ring(); }

  int entry_degree(std::size_t i, std::size_t j) const {
    return source_.degree(j) - target_.degree(i);
  }

  /// Entry (i, j) as coordinates in A_{entry_degree(i, j)}.
  Vec<K> entry(std::size_t i, std::size_t j) const {
    const auto lay = target_.layout(source_.degree(j));
    return Vec<K>(columns_[j].begin() + static_cast<std::ptrdiff_t>(lay[i]),
                  columns_[j].begin() + static_cast<std::ptrdiff_t>(lay[i + 1]));
  }

  /// The k-linear map between the degree-e pieces.
  Matrix<K> matrix_at(int e) const {
    const auto src = source_.layout(e);
    Matrix<K> m(target_.piece_dim(e), src.back(), ring().field());
    for (std::size_t j = 0; j < source_.rank(); ++j) {
      const int p = e - source_.degree(j);
      for (std::size_t t = 0; t < ring().dim(p); ++t) {
        const Vec<K> col = target_.scale_basis(p, t, source_.degree(j), columns_[j]);
        for (std::size_t r = 0; r < col.size(); ++r) m(r, src[j] + t) = col[r];
      }
    }
    return m;
  }

  /// Image of a degree-e element of the source.
  Vec<K> apply(int e, std::span<const K> v) const {
    const auto src = source_.layout(e);
    require(v.size() == src.back(), ErrorKind::dimension_mismatch, "element length");
    Vec<K> out = zeros<K>(target_.piece_dim(e), ring().field());
    for (std::size_t j = 0; j < source_.rank(); ++j) {
      std::span<const K> a(v.data() + src[j], src[j + 1] - src[j]);
      if (is_zero_vector<K>(a)) continue;
      const Vec<K> img = target_.scale(e - source_.degree(j), a, source_.degree(j), columns_[j]);
      axpy<K>(out, K::one(ring().field()), img);
    }
    return out;
  }

  /// Every entry lies in the maximal ideal (no unit entries).
  bool is_minimal() const {
    for (std::size_t j = 0; j < source_.rank(); ++j)
      for (std::size_t i = 0; i < target_.rank(); ++i)
        if (entry_degree(i, j) == 0 && !is_zero_vector<K>(entry(i, j))) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& c : columns_)
      if (!is_zero_vector<K>(c)) return false;
    return true;
  }

  /// Hom(-, A) applied to the map: the transposed map target* -> source*.
  ModuleMap dual() const {
    FreeModule<K> s = target_.dual(), t = source_.dual();
    std::vector<std::vector<Vec<K>>> entries(t.rank(), std::vector<Vec<K>>(s.rank()));
    for (std::size_t i = 0; i < source_.rank(); ++i)
      for (std::size_t j = 0; j < target_.rank(); ++j) entries[i][j] = entry(j, i);
    return from_entries(std::move(s), std::move(t), entries);
  }

  /// Same matrix of forms with every generator degree moved by s.
  ModuleMap shifted(int s) const { return ModuleMap(source_.shifted(s), target_.shifted(s), columns_); }

 private:
  FreeModule<K> source_;
  FreeModule<K> target_;
  std::vector<Vec<K>> columns_;
};

/// f ∘ g.
template <FieldElement K>
ModuleMap<K> compose(const ModuleMap<K>& f, const ModuleMap<K>& g) {
  require(f.source().degrees() == g.target().degrees(), ErrorKind::dimension_mismatch,
          "rank mismatch in composition");
  std::vector<Vec<K>> cols;
  for (std::size_t j = 0; j < g.source().rank(); ++j)
    cols.push_back(f.apply(g.source().degree(j), g.column(j)));
  return ModuleMap<K>(g.source(), f.target(), std::move(cols));
}

/// Finitely generated graded module coker(relations: F1 -> F0).
template <FieldElement K>
struct GradedModule {
  FreeModule<K> generators;
  ModuleMap<K> relations;

  const AlgebraPtr<K>& algebra() const { return generators.algebra(); }

  static GradedModule free(FreeModule<K> f) {
    FreeModule<K> none(f.algebra(), {});
    return GradedModule{f, ModuleMap<K>::zero(none, f)};
  }

  /// k = A / m, generated in the given degree.
  static GradedModule residue_field(const AlgebraPtr<K>& a, int degree = 0) {
    FreeModule<K> f0(a, {degree});
    FreeModule<K> f1(a, std::vector<int>(a->num_vars(), degree + 1));
    std::vector<Vec<K>> cols;
    for (std::size_t i = 0; i < a->num_vars(); ++i) {
      Vec<K> c = zeros<K>(a->dim(1), a->field());
      c[i] = K::one(a->field());
      cols.push_back(std::move(c));
    }
    return GradedModule{f0, ModuleMap<K>(f1, f0, std::move(cols))};
  }

  std::size_t piece_dim(int e) const {
    return generators.piece_dim(e) - rank(relations.matrix_at(e));
  }

  std::pair<int, int> degree_range() const { return generators.degree_range(); }
};

/// Homogeneous generators found for a graded submodule, with their vectors in
/// the ambient free module.
template <FieldElement K>
struct GeneratorSet {
  std::vector<int> degrees;
  std::vector<Vec<K>> vectors;
};

/// Minimal generators of the graded submodule N ⊆ F whose degree-e piece is
/// spanned by piece(e), for e in [lo, hi]. New generators in degree e form a
/// complement to the part of N_e generated in lower degrees; candidates are
/// taken in the order piece(e) returns them.
template <FieldElement K>
GeneratorSet<K> minimal_generators(const FreeModule<K>& f, int lo, int hi,
                                   const std::function<std::vector<Vec<K>>(int)>& piece,
                                   int int_cap) {
  GeneratorSet<K> gens;
  const auto& ring = f.ring();
  for (int e = lo; e <= hi; ++e) {
    const auto candidates = piece(e);
    if (candidates.empty()) continue;
    EchelonBasis<K> span(f.piece_dim(e), ring.field());
    for (std::size_t g = 0; g < gens.degrees.size() && span.rank() < candidates.size(); ++g) {
      const int p = e - gens.degrees[g];
      for (std::size_t t = 0; t < ring.dim(p) && span.rank() < candidates.size(); ++t)
        span.insert(f.scale_basis(p, t, gens.degrees[g], gens.vectors[g]));
    }
    if (span.rank() >= candidates.size()) continue;
    for (const auto& v : candidates) {
      if (!span.insert(v)) continue;
      require(e <= int_cap, ErrorKind::cap_exceeded,
              "internal degree cap exceeded: a generator is needed in degree " + std::to_string(e));
      gens.degrees.push_back(e);
      gens.vectors.push_back(v);
    }
  }
  return gens;
}

/// Kernel of a map, degree by degree.
template <FieldElement K>
std::vector<Vec<K>> kernel_piece(const ModuleMap<K>& m, int e) {
  if (m.source().piece_dim(e) == 0) return {};
  return nullspace_basis(m.matrix_at(e));
}

/// Minimal graded free resolution F_0 <- F_1 <- ... of a module.
template <FieldElement K>
struct Resolution {
  AlgebraPtr<K> algebra;
  std::vector<FreeModule<K>> modules;  // F_0 .. F_m
  std::vector<ModuleMap<K>> maps;      // maps[i] = d_{i+1} : F_{i+1} -> F_i
  ModuleMap<K> cover;                  // F_0 -> generators of the presentation
  bool complete = false;               // true when some kernel vanished

  std::vector<std::size_t> betti() const {
    std::vector<std::size_t> b;
    for (const auto& f : modules) b.push_back(f.rank());
    return b;
  }

  /// b_{i,j}: generators of F_i in internal degree j.
  std::vector<std::map<int, std::size_t>> graded_betti() const {
    std::vector<std::map<int, std::size_t>> out;
    for (const auto& f : modules) {
      std::map<int, std::size_t> row;
      for (int d : f.degrees()) ++row[d];
      out.push_back(std::move(row));
    }
    return out;
  }

  /// b_{i,j} = 0 unless j = i + (degree of F_0's generators).
  bool is_linear() const {
    if (modules.empty() || modules[0].rank() == 0) return true;
    const int base = modules[0].degree(0);
    for (std::size_t i = 0; i < modules.size(); ++i)
      for (int d : modules[i].degrees())
        if (d != base + static_cast<int>(i)) return false;
    return true;
  }
};

struct ResolutionCaps {
  int hom_cap = 4;
  int int_cap = 10;
};

/// Resolves M = coker(relations) through homological degree caps.hom_cap.
template <FieldElement K>
Resolution<K> minimal_resolution(const GradedModule<K>& m, ResolutionCaps caps = {}) {
  require(caps.hom_cap >= 1 && caps.int_cap >= 1, ErrorKind::precondition, "caps must be >= 1");
  const AlgebraPtr<K>& a = m.algebra();
  const auto& ring = *a;
  const Field& f = ring.field();
  const FreeModule<K>& p = m.generators;

  // Minimal generators of M among the presentation's generators.
  std::vector<std::size_t> keep;
  std::vector<int> degs = p.degrees();
  std::vector<std::size_t> order(p.rank());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return degs[x] < degs[y]; });
  for (std::size_t pos = 0; pos < order.size();) {
    const int e = degs[order[pos]];
    std::vector<std::size_t> at;
    while (pos < order.size() && degs[order[pos]] == e) at.push_back(order[pos++]);
    const auto lay = p.layout(e);
    const Matrix<K> rel = m.relations.matrix_at(e);
    EchelonBasis<K> span(at.size(), f);
    for (std::size_t c = 0; c < rel.cols(); ++c) {
      Vec<K> proj;
      for (auto g : at) proj.push_back(rel(lay[g], c));
      span.insert(std::move(proj));
    }
    for (std::size_t k = 0; k < at.size(); ++k) {
      Vec<K> unit = zeros<K>(at.size(), f);
      unit[k] = K::one(f);
      if (span.insert(unit)) keep.push_back(at[k]);
    }
  }
  std::vector<int> f0deg;
  std::vector<Vec<K>> cover_cols;
  for (auto g : keep) {
    f0deg.push_back(degs[g]);
    const auto lay = p.layout(degs[g]);
    Vec<K> c = zeros<K>(lay.back(), f);
    c[lay[g]] = K::one(f);
    cover_cols.push_back(std::move(c));
  }

  Resolution<K> res;
  res.algebra = a;
  res.modules.emplace_back(a, f0deg);
  res.cover = ModuleMap<K>(res.modules[0], p, std::move(cover_cols));

  // Kernel of F_0 -> M is the preimage of the relation module.
  auto first_kernel = [&](int e) -> std::vector<Vec<K>> {
    const std::size_t n0 = res.modules[0].piece_dim(e);
    if (n0 == 0) return {};
    const Matrix<K> c = res.cover.matrix_at(e);
    const Matrix<K> r = m.relations.matrix_at(e);
    // Relation columns first, so free variables (unit entries) fall on F_0.
    Matrix<K> joint(c.rows(), r.cols() + n0, f);
    for (std::size_t i = 0; i < c.rows(); ++i) {
      for (std::size_t j = 0; j < r.cols(); ++j) joint(i, j) = r(i, j);
      for (std::size_t j = 0; j < n0; ++j) joint(i, r.cols() + j) = -c(i, j);
    }
    EchelonBasis<K> span(n0, f);
    std::vector<Vec<K>> out;
    for (auto& v : nullspace_basis(joint)) {
      Vec<K> tail(v.begin() + static_cast<std::ptrdiff_t>(r.cols()), v.end());
      if (span.insert(tail)) out.push_back(std::move(tail));
    }
    return out;
  };

  for (int i = 0; i < caps.hom_cap; ++i) {
    const FreeModule<K>& fi = res.modules[static_cast<std::size_t>(i)];
    auto [lo, hi] = fi.degree_range();
    std::function<std::vector<Vec<K>>(int)> piece;
    if (i == 0)
      piece = first_kernel;
    else
      piece = [&res, i](int e) { return kernel_piece(res.maps[static_cast<std::size_t>(i - 1)], e); };
    GeneratorSet<K> gens = minimal_generators<K>(fi, lo, hi, piece, caps.int_cap);
    if (gens.degrees.empty()) {
      res.complete = true;
      break;
    }
    FreeModule<K> next(a, gens.degrees);
    res.maps.emplace_back(next, fi, std::move(gens.vectors));
    res.modules.push_back(std::move(next));
  }
  return res;
}

/// Truncated Poincaré series b_0 + b_1 t + ... as its coefficient list.
template <FieldElement K>
std::vector<std::size_t> poincare(const Resolution<K>& res) {
  return res.betti();
}

struct Deviations {
  long long eps1 = 0, eps2 = 0, eps3 = 0;
  friend bool operator==(const Deviations&, const Deviations&) = default;
};

inline long long binomial(long long n, int k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// First three deviations from the Betti numbers of k:
/// e1 = b1, e2 = b2 - C(e1,2), e3 = b3 - e2 e1 - C(e1,3).
inline Deviations deviations(const std::vector<std::size_t>& b) {
  require(b.size() >= 4, ErrorKind::precondition, "deviations need Betti numbers b_0..b_3");
  Deviations d;
  d.eps1 = static_cast<long long>(b[1]);
  d.eps2 = static_cast<long long>(b[2]) - binomial(d.eps1, 2);
  d.eps3 = static_cast<long long>(b[3]) - d.eps2 * d.eps1 - binomial(d.eps1, 3);
  return d;
}

/// The graded module given by a submodule of F: minimal generators and
/// their first syzygies.
template <FieldElement K>
struct Presentation {
  GradedModule<K> module;
  ModuleMap<K> inclusion;  // generators -> F
};

template <FieldElement K>
Presentation<K> present_submodule(const FreeModule<K>& f,
                                  const std::function<std::vector<Vec<K>>(int)>& piece,
                                  int int_cap) {
  auto [lo, hi] = f.degree_range();
  GeneratorSet<K> gens = minimal_generators<K>(f, lo, hi, piece, int_cap);
  FreeModule<K> g0(f.algebra(), gens.degrees);
  ModuleMap<K> incl(g0, f, std::move(gens.vectors));
  auto [glo, ghi] = g0.degree_range();
  GeneratorSet<K> rels = minimal_generators<K>(
      g0, glo, ghi, [&incl](int e) { return kernel_piece(incl, e); }, int_cap);
  FreeModule<K> g1(f.algebra(), rels.degrees);
  ModuleMap<K> rmap(g1, g0, std::move(rels.vectors));
  return {GradedModule<K>{g0, std::move(rmap)}, std::move(incl)};
}

template <FieldElement K>
struct HomDual {
  GradedModule<K> dual;      // M* = Hom(M, A), presented
  ModuleMap<K> inclusion;    // generators of M* -> F_0*
  ModuleMap<K> biduality;    // F_0 -> (generators of M*)*, inducing M -> M**
  bool is_iso = false;
  std::map<int, std::array<std::size_t, 3>> dims;  // e -> (dim M_e, dim M**_e, rank of M_e -> M**_e)
};

/// Hom_A(M, A) from a minimal presentation of M, with the canonical map to
/// the bidual and a verdict on whether it is an isomorphism.
template <FieldElement K>
HomDual<K> hom_dual(const GradedModule<K>& m, int int_cap = 10) {
  const Resolution<K> pres = minimal_resolution(m, {1, int_cap});
  const FreeModule<K>& f0 = pres.modules[0];
  const ModuleMap<K> d1 = pres.maps.empty() ? ModuleMap<K>::zero(FreeModule<K>(f0.algebra(), {}), f0)
                                            : pres.maps[0];
  const ModuleMap<K> d1_dual = d1.dual();
  Presentation<K> star = present_submodule<K>(
      f0.dual(), [&d1_dual](int e) { return kernel_piece(d1_dual, e); }, int_cap);

  HomDual<K> out{star.module, star.inclusion, {}, false, {}};
  ModuleMap<K> theta = star.inclusion.dual();
  out.biduality = ModuleMap<K>(f0, theta.target(), theta.columns());
  const ModuleMap<K> rel_dual = star.module.relations.dual();

  auto [lo, hi] = f0.degree_range();
  auto [blo, bhi] = theta.target().degree_range();
  lo = std::min(lo, blo);
  hi = std::max(hi, bhi);
  bool iso = true;
  for (int e = lo; e <= hi; ++e) {
    const std::size_t dm = f0.piece_dim(e) - (d1.source().rank() ? rank(d1.matrix_at(e)) : 0);
    const std::size_t g = rel_dual.source().piece_dim(e);
    const std::size_t dmm = g - (g && rel_dual.target().rank() ? rank(rel_dual.matrix_at(e)) : 0);
    const std::size_t r = (f0.piece_dim(e) && g) ? rank(out.biduality.matrix_at(e)) : 0;
    if (dm || dmm) out.dims[e] = {dm, dmm, r};
    if (r != dm || r != dmm) iso = false;
  }
  out.is_iso = iso;
  return out;
}

template <FieldElement K>
struct ExtResult {
  std::vector<std::size_t> dims;                  // dim Ext^i(M, A), i = 0..i_max
  std::vector<std::map<int, std::size_t>> graded;  // per internal degree
};

/// dim_k Ext^i_A(M, A) for i = 0..i_max: homology of Hom(F, A).
template <FieldElement K>
ExtResult<K> ext(const GradedModule<K>& m, int i_max, int int_cap = 10) {
  require(i_max >= 0, ErrorKind::precondition, "i_max must be non-negative");
  const Resolution<K> res = minimal_resolution(m, {i_max + 1, int_cap});
  ExtResult<K> out;
  for (int i = 0; i <= i_max; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    std::map<int, std::size_t> graded;
    std::size_t total = 0;
    if (ui < res.modules.size()) {
      const FreeModule<K> fi_dual = res.modules[ui].dual();
      const bool has_out = ui < res.maps.size();
      const bool has_in = i >= 1;
      ModuleMap<K> out_map, in_map;
      if (has_out) out_map = res.maps[ui].dual();        // F_i* -> F_{i+1}*
      if (has_in) in_map = res.maps[ui - 1].dual();      // F_{i-1}* -> F_i*
      auto [lo, hi] = fi_dual.degree_range();
      for (int e = lo; e <= hi; ++e) {
        const std::size_t n = fi_dual.piece_dim(e);
        if (n == 0) continue;
        std::size_t ker = n;
        if (has_out && out_map.target().piece_dim(e) > 0) ker -= rank(out_map.matrix_at(e));
        std::size_t im = 0;
        if (has_in && in_map.source().piece_dim(e) > 0) im = rank(in_map.matrix_at(e));
        if (ker > im) {
          graded[e] = ker - im;
          total += ker - im;
        }
      }
    }
    out.dims.push_back(total);
    out.graded.push_back(std::move(graded));
  }
  return out;
}

}  // namespace tacalc
