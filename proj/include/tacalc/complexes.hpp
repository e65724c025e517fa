#pragma once

// Complexes of finite free modules (finite windows or periodic), checks for
// the complex property, minimality, acyclicity and total acyclicity,
// syzygies, base change, and total reflexivity of modules.

#include <optional>

#include "tacalc/homology.hpp"

namespace tacalc {

/// Map between free modules from a matrix of forms; entry (i, j) must be zero
/// or homogeneous of degree deg(source j) - deg(target i).
template <FieldElement K>
ModuleMap<K> map_from_forms(const FreeModule<K>& source, const FreeModule<K>& target,
                            const std::vector<std::vector<Polynomial<K>>>& forms) {
  const GradedAlgebra<K>& a = source.ring();
  require(forms.size() == target.rank(), ErrorKind::dimension_mismatch,
          "map has " + std::to_string(forms.size()) + " rows but the target has rank " +
              std::to_string(target.rank()));
  std::vector<std::vector<Vec<K>>> entries(target.rank(), std::vector<Vec<K>>(source.rank()));
  for (std::size_t i = 0; i < target.rank(); ++i) {
    require(forms[i].size() == source.rank(), ErrorKind::dimension_mismatch,
            "row " + std::to_string(i + 1) + " has " + std::to_string(forms[i].size()) +
                " entries but the source has rank " + std::to_string(source.rank()));
    for (std::size_t j = 0; j < source.rank(); ++j) {
      const int d = source.degree(j) - target.degree(i);
      const Polynomial<K> p = forms[i][j].rename_into(a.spec().ctx);
      if (d < 0) {
        require(p.is_zero(), ErrorKind::precondition,
                "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") must be zero");
        entries[i][j] = {};
        continue;
      }
      entries[i][j] = a.homogeneous_nf(p, d);
    }
  }
  return ModuleMap<K>::from_entries(source, target, entries);
}

/// C_lo <- C_{lo+1} <- ... <- C_{lo+m} with maps[k] = d_{lo+k+1}. When a
/// period p is set the window has exactly p maps, C_{lo+p} = C_lo shifted by
/// seam_shift, and the data repeats in both directions.
template <FieldElement K>
struct FreeComplex {
  AlgebraPtr<K> algebra;
  int lo = 0;
  std::vector<ModuleMap<K>> maps;
  std::optional<int> period;
  int seam_shift = 0;

  std::size_t length() const { return maps.size(); }
  bool periodic() const { return period.has_value(); }

  /// Builds a periodic complex, inferring the seam shift from C_p vs C_lo.
  static FreeComplex periodic_from(AlgebraPtr<K> a, std::vector<ModuleMap<K>> maps, int lo = 0) {
    require(!maps.empty(), ErrorKind::precondition, "a periodic complex needs at least one map");
    FreeComplex c{std::move(a), lo, std::move(maps), std::nullopt, 0};
    c.check_shapes();
    const auto& first = c.maps.front().target();
    const auto& last = c.maps.back().source();
    require(first.rank() == last.rank(), ErrorKind::dimension_mismatch,
            "rank mismatch across the periodic seam");
    int s = 0;
    for (std::size_t g = 0; g < first.rank(); ++g) {
      const int diff = last.degree(g) - first.degree(g);
      require(g == 0 || diff == s, ErrorKind::dimension_mismatch,
              "periodic seam needs a uniform degree shift");
      s = diff;
    }
    c.period = static_cast<int>(c.maps.size());
    c.seam_shift = s;
    return c;
  }

  /// Consecutive maps must share modules.
  void check_shapes() const {
    for (std::size_t k = 0; k + 1 < maps.size(); ++k)
      require(maps[k].source().degrees() == maps[k + 1].target().degrees(), ErrorKind::dimension_mismatch,
              "rank mismatch between d_" + std::to_string(lo + static_cast<int>(k) + 1) + " and d_" +
                  std::to_string(lo + static_cast<int>(k) + 2));
  }

  bool has_differential(int i) const {
    return periodic() || (i >= lo + 1 && i <= lo + static_cast<int>(maps.size()));
  }

  /// d_i : C_i -> C_{i-1}, following the period when there is one.
  ModuleMap<K> differential(int i) const {
    require(has_differential(i), ErrorKind::precondition,
            "position " + std::to_string(i) + " is outside the complex");
    if (!periodic()) return maps[static_cast<std::size_t>(i - lo - 1)];
    const int p = *period;
    const int r = i - lo - 1;
    const int q = r >= 0 ? r / p : -((-r + p - 1) / p);
    const int k = r - q * p;
    return q == 0 ? maps[static_cast<std::size_t>(k)] : maps[static_cast<std::size_t>(k)].shifted(q * seam_shift);
  }

  FreeModule<K> module_at(int i) const {
    if (periodic() || i < lo + static_cast<int>(maps.size())) return differential(i + 1).target();
    return differential(i).source();
  }

  bool is_minimal() const {
    return std::all_of(maps.begin(), maps.end(), [](const auto& m) { return m.is_minimal(); });
  }

  bool nonzero() const {
    if (maps.empty()) return false;
    if (maps.front().target().rank() > 0) return true;
    return std::any_of(maps.begin(), maps.end(), [](const auto& m) { return m.source().rank() > 0; });
  }
};

template <FieldElement K>
FreeComplex<K> dual_complex(const FreeComplex<K>& c) {
  FreeComplex<K> d{c.algebra, -(c.lo + static_cast<int>(c.maps.size())), {}, c.period, c.seam_shift};
  for (auto it = c.maps.rbegin(); it != c.maps.rend(); ++it) d.maps.push_back(it->dual());
  return d;
}

struct ComplexCheck {
  bool is_complex = true;
  bool is_minimal = true;
  std::vector<int> failing_positions;  // i with d_i d_{i+1} != 0
};

/// Composites d_i d_{i+1} vanish (across the seam too) and minimality.
template <FieldElement K>
ComplexCheck check_complex(const FreeComplex<K>& c) {
  c.check_shapes();
  ComplexCheck out;
  out.is_minimal = c.is_minimal();
  const int m = static_cast<int>(c.maps.size());
  const int last = c.periodic() ? c.lo + m : c.lo + m - 1;
  for (int i = c.lo + 1; i <= last; ++i) {
    if (!compose(c.differential(i), c.differential(i + 1)).is_zero()) {
      out.is_complex = false;
      out.failing_positions.push_back(i);
    }
  }
  return out;
}

struct PositionHomology {
  int position = 0;
  std::map<int, std::size_t> by_degree;  // internal degree -> dim of homology, nonzero only
  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& [e, d] : by_degree) t += d;
    return t;
  }
};

struct Acyclicity {
  bool exact = true;
  bool window_only = false;  // verdict covers interior positions of a finite window only
  std::vector<PositionHomology> positions;
};

/// dim H at position i in each internal degree: ker d_i / im d_{i+1}.
template <FieldElement K>
PositionHomology homology_at(const FreeComplex<K>& c, int i) {
  PositionHomology h;
  h.position = i;
  const ModuleMap<K> out = c.differential(i);
  const ModuleMap<K> in = c.differential(i + 1);
  const FreeModule<K>& ci = out.source();
  auto [lo, hi] = ci.degree_range();
  for (int e = lo; e <= hi; ++e) {
    const std::size_t n = ci.piece_dim(e);
    if (n == 0) continue;
    const std::size_t ker = n - (out.target().piece_dim(e) ? rank(out.matrix_at(e)) : 0);
    const std::size_t im = in.source().piece_dim(e) ? rank(in.matrix_at(e)) : 0;
    if (ker > im) h.by_degree[e] = ker - im;
  }
  return h;
}

template <FieldElement K>
Acyclicity acyclicity(const FreeComplex<K>& c) {
  const auto check = check_complex(c);
  require(check.is_complex, ErrorKind::precondition, "not a complex: some composite is nonzero");
  Acyclicity a;
  const int m = static_cast<int>(c.maps.size());
  int first = c.lo + 1, last = c.lo + m - 1;
  if (c.periodic()) {
    last = c.lo + m;
  } else {
    a.window_only = true;
  }
  for (int i = first; i <= last; ++i) {
    PositionHomology h = homology_at(c, i);
    if (!h.by_degree.empty()) a.exact = false;
    a.positions.push_back(std::move(h));
  }
  return a;
}

enum class TotalVerdict { totally_acyclic, fails_complex, fails_dual };

inline const char* to_string(TotalVerdict v) {
  switch (v) {
    case TotalVerdict::totally_acyclic: return "totally acyclic";
    case TotalVerdict::fails_complex: return "fails C";
    case TotalVerdict::fails_dual: return "fails C*";
  }
  return "";
}

struct TotalAcyclicity {
  TotalVerdict verdict = TotalVerdict::totally_acyclic;
  bool minimal = false;
  bool nontrivial = false;
  bool window_only = false;
  Acyclicity complex;
  Acyclicity dual;
};

template <FieldElement K>
TotalAcyclicity total_acyclicity(const FreeComplex<K>& c) {
  TotalAcyclicity t;
  t.minimal = c.is_minimal();
  t.nontrivial = t.minimal && c.nonzero();
  t.complex = acyclicity(c);
  t.dual = acyclicity(dual_complex(c));
  t.window_only = t.complex.window_only;
  if (!t.complex.exact)
    t.verdict = TotalVerdict::fails_complex;
  else if (!t.dual.exact)
    t.verdict = TotalVerdict::fails_dual;
  return t;
}

/// Omega^i C = ker d_i, presented by minimal generators and relations.
template <FieldElement K>
Presentation<K> syzygy(const FreeComplex<K>& c, int i, int int_cap = 10) {
  require(c.has_differential(i), ErrorKind::precondition,
          "position " + std::to_string(i) + " is outside the complex");
  require(check_complex(c).is_complex, ErrorKind::precondition, "not a complex: some composite is nonzero");
  if (c.has_differential(i + 1))
    require(homology_at(c, i).by_degree.empty(), ErrorKind::precondition,
            "complex is not acyclic at position " + std::to_string(i));
  const ModuleMap<K> d = c.differential(i);
  return present_submodule<K>(d.source(), [&d](int e) { return kernel_piece(d, e); }, int_cap);
}

/// Image of a homogeneous element of `from` (degree d) in `to`, matching
/// variables by name.
template <FieldElement K>
Vec<K> transport(const GradedAlgebra<K>& from, const GradedAlgebra<K>& to, int d, std::span<const K> coords) {
  const Polynomial<K> p = from.to_polynomial(d, coords).rename_into(to.spec().ctx);
  return to.homogeneous_nf(p, d);
}

struct BaseChangeInfo {
  bool flat_certified = false;  // target is source tensor an algebra in new variables
};

/// Whether every relation of `target` is a relation of `source` or lives
/// entirely in variables `source` does not have.
template <FieldElement K>
bool is_tensor_extension(const AlgebraSpec<K>& source, const AlgebraSpec<K>& target) {
  std::vector<Polynomial<K>> src;
  for (const auto& r : source.relations) src.push_back(r.rename_into(target.ctx));
  std::vector<bool> is_new(target.num_vars(), true);
  for (const auto& n : source.var_names()) is_new[*target.ctx->index_of(n)] = false;
  std::size_t matched = 0;
  for (const auto& r : target.relations) {
    if (std::find(src.begin(), src.end(), r) != src.end()) {
      ++matched;
      continue;
    }
    for (const auto& [m, c] : r.terms())
      for (std::size_t v = 0; v < m.size(); ++v)
        if (m[v] > 0 && !is_new[v]) return false;
  }
  return matched >= src.size();
}

/// C tensor_Q R along the map Q -> R that sends each variable to the variable
/// of the same name. Q's relations must vanish in R.
template <FieldElement K>
FreeComplex<K> base_change(const FreeComplex<K>& c, const AlgebraPtr<K>& target, BaseChangeInfo* info = nullptr) {
  const GradedAlgebra<K>& q = *c.algebra;
  const GradedAlgebra<K>& r = *target;
  require(q.field() == r.field(), ErrorKind::field_mismatch, "field mismatch");
  for (const auto& name : q.spec().var_names())
    require(r.spec().ctx->index_of(name).has_value(), ErrorKind::precondition,
            "spec mismatch: variable " + name + " is missing from the target");
  for (const auto& rel : q.spec().relations)
    require(is_zero_vector<K>(r.normal_form(rel.rename_into(r.spec().ctx))), ErrorKind::precondition,
            "spec mismatch: relation " + rel.to_string() + " does not vanish in the target");
  if (info) info->flat_certified = is_tensor_extension(q.spec(), r.spec());

  auto move_map = [&](const ModuleMap<K>& m) {
    FreeModule<K> s(target, m.source().degrees()), t(target, m.target().degrees());
    std::vector<std::vector<Vec<K>>> entries(t.rank(), std::vector<Vec<K>>(s.rank()));
    for (std::size_t i = 0; i < t.rank(); ++i)
      for (std::size_t j = 0; j < s.rank(); ++j) {
        const int d = m.entry_degree(i, j);
        entries[i][j] = (d < 0 || d > q.top_degree()) ? zeros<K>(r.dim(d), r.field())
                                                      : transport<K>(q, r, d, m.entry(i, j));
      }
    return ModuleMap<K>::from_entries(std::move(s), std::move(t), entries);
  };
  FreeComplex<K> out{target, c.lo, {}, c.period, c.seam_shift};
  for (const auto& m : c.maps) out.maps.push_back(move_map(m));
  return out;
}

struct ReflexivityReport {
  bool biduality = false;                // condition (1)
  std::vector<std::size_t> ext_module;   // dim Ext^i(M, A), i = 1..N
  std::vector<std::size_t> ext_dual;     // dim Ext^i(M*, A), i = 1..N
  std::optional<int> first_failure_module;  // least i with Ext^i(M, A) != 0
  std::optional<int> first_failure_dual;
  int depth = 0;
  bool exact = false;  // certified by a periodic totally acyclic complex

  bool condition2() const { return !first_failure_module.has_value(); }
  bool condition3() const { return !first_failure_dual.has_value(); }
  bool passes() const { return biduality && condition2() && condition3(); }
  std::string scope() const { return exact ? "exact" : "verified to depth " + std::to_string(depth); }
};

template <FieldElement K>
ReflexivityReport totally_reflexive_check(const GradedModule<K>& m, int depth, int int_cap = 10) {
  require(depth >= 1, ErrorKind::precondition, "depth must be at least 1");
  ReflexivityReport r;
  r.depth = depth;
  const HomDual<K> hd = hom_dual(m, int_cap);
  r.biduality = hd.is_iso;
  const auto e = ext(m, depth, int_cap);
  const auto es = ext(hd.dual, depth, int_cap);
  for (int i = 1; i <= depth; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    r.ext_module.push_back(e.dims[ui]);
    r.ext_dual.push_back(es.dims[ui]);
    if (e.dims[ui] && !r.first_failure_module) r.first_failure_module = i;
    if (es.dims[ui] && !r.first_failure_dual) r.first_failure_dual = i;
  }
  return r;
}

/// Runs the check on Omega^i C; when C is periodic and totally acyclic the
/// verdict holds for all i, not only to the given depth.
template <FieldElement K>
ReflexivityReport totally_reflexive_certificate(const FreeComplex<K>& c, int i, int depth, int int_cap = 10,
                                                GradedModule<K>* module_out = nullptr) {
  const Presentation<K> omega = syzygy(c, i, int_cap);
  if (module_out) *module_out = omega.module;
  ReflexivityReport r = totally_reflexive_check(omega.module, depth, int_cap);
  const TotalAcyclicity t = total_acyclicity(c);
  r.exact = c.periodic() && t.verdict == TotalVerdict::totally_acyclic;
  return r;
}

}  // namespace tacalc
