#pragma once

// Degree 2 and 3 components of the homotopy Lie algebra of a Koszul algebra,
// read off inside the quadratic dual, and the degree-two center.

#include "tacalc/homology.hpp"
#include "tacalc/quadratic_dual.hpp"

namespace tacalc {

template <FieldElement K>
struct PiComponent {
  int degree = 0;
  std::vector<Vec<K>> basis;       // coordinates in U_degree
  std::vector<std::string> labels;  // the spanning element each basis vector came from

  std::size_t dim() const { return basis.size(); }
};

/// Low-degree envelope data U_0..U_3 of a quadratic dual, with the Lie
/// components pi^2, pi^3 and brackets against the degree-one generators.
/// Divided squares t_i^(2) are represented by the classes of T_i T_i.
template <FieldElement K>
class HomotopyLie {
 public:
  explicit HomotopyLie(QuadraticDual<K> dual) : dual_(std::move(dual)) {
    require(dual_.field().characteristic() != 2, ErrorKind::precondition,
            "characteristic 2 is not supported for homotopy Lie computations");
    for (int d = 0; d <= 3; ++d) components_.emplace_back(dual_.algebra, d);
    build_pi2();
    build_pi3();
  }

  const QuadraticDual<K>& dual() const { return dual_; }
  const NcComponent<K>& component(int d) const { return components_.at(static_cast<std::size_t>(d)); }
  std::size_t num_generators() const { return dual_.num_generators(); }
  const Field& field() const { return dual_.field(); }

  const PiComponent<K>& pi2() const { return pi2_; }
  const PiComponent<K>& pi3() const { return pi3_; }

  /// U_2 coordinates of an element given on the n^2 words.
  Vec<K> class_of(std::span<const K> words) const { return component(2).coordinates(words); }

  /// [u, T_j] = u T_j - T_j u in U_3 coordinates, for u in U_2 coordinates.
  Vec<K> bracket_with_generator(std::span<const K> u, std::size_t j) const {
    require(j < num_generators(), ErrorKind::precondition, "generator index out of range");
    const std::size_t n = num_generators();
    const Vec<K> w = component(2).lift(u, field());
    Vec<K> t = zeros<K>(n, field());
    t[j] = K::one(field());
    Vec<K> r = nc_multiply<K>(n, w, 2, t, 1, field());
    const Vec<K> l = nc_multiply<K>(n, t, 1, w, 2, field());
    axpy<K>(r, -K::one(field()), l);
    return component(3).coordinates(r);
  }

  /// The stacked map pi^2 -> U_3^n, u -> ([u,T_1], ..., [u,T_n]), as a matrix
  /// whose columns correspond to the pi^2 basis.
  Matrix<K> centrality_matrix(const std::vector<Vec<K>>& elements) const {
    const std::size_t n = num_generators(), u3 = component(3).dim();
    Matrix<K> m(n * u3, elements.size(), field());
    for (std::size_t c = 0; c < elements.size(); ++c)
      for (std::size_t j = 0; j < n; ++j) {
        const Vec<K> b = bracket_with_generator(elements[c], j);
        for (std::size_t r = 0; r < u3; ++r) m(j * u3 + r, c) = b[r];
      }
    return m;
  }

  /// Basis (U_2 coordinates) of the degree-two center {u : [u, T_j] = 0 for all j}.
  std::vector<Vec<K>> central_pi2() const {
    std::vector<Vec<K>> out;
    for (const auto& alpha : nullspace_basis(centrality_matrix(pi2_.basis))) {
      Vec<K> u = zeros<K>(component(2).dim(), field());
      for (std::size_t i = 0; i < alpha.size(); ++i)
        if (!alpha[i].is_zero()) axpy<K>(u, alpha[i], pi2_.basis[i]);
      out.push_back(std::move(u));
    }
    return out;
  }

  /// dim U_3 = C(e1,3) + e1 e2 + e3 with e_i the Lie component dimensions.
  bool pbw_degree3_holds() const {
    const long long e1 = static_cast<long long>(num_generators());
    const long long e2 = static_cast<long long>(pi2_.dim()), e3 = static_cast<long long>(pi3_.dim());
    return static_cast<long long>(component(3).dim()) == binomial(e1, 3) + e1 * e2 + e3;
  }

  /// Hard error unless the Lie dimensions equal deviations computed from a resolution.
  void check_against(const Deviations& eps) const {
    require(static_cast<long long>(num_generators()) == eps.eps1, ErrorKind::cross_check,
            "PBW count failure: generator count differs from eps1");
    require(static_cast<long long>(pi2_.dim()) == eps.eps2, ErrorKind::cross_check,
            "PBW count failure: dim pi2 = " + std::to_string(pi2_.dim()) + " but eps2 = " +
                std::to_string(eps.eps2));
    require(static_cast<long long>(pi3_.dim()) == eps.eps3, ErrorKind::cross_check,
            "PBW count failure: dim pi3 = " + std::to_string(pi3_.dim()) + " but eps3 = " +
                std::to_string(eps.eps3));
  }

  std::string element_to_string(int d, std::span<const K> coords) const {
    return nc_to_string<K>(dual_.algebra.letters, d, std::span<const K>(component(d).lift(coords, field())));
  }

 private:
  void build_pi2() {
    const std::size_t n = num_generators();
    const auto& t = dual_.algebra.letters;
    pi2_.degree = 2;
    EchelonBasis<K> span(component(2).dim(), field());
    auto consider = [&](std::size_t i, std::size_t j, std::string label) {
      Vec<K> w = zeros<K>(n * n, field());
      w[i * n + j] += K::one(field());
      if (i != j) w[j * n + i] += K::one(field());
      Vec<K> c = component(2).coordinates(w);
      if (span.insert(c)) {
        pi2_.basis.push_back(std::move(c));
        pi2_.labels.push_back(std::move(label));
      }
    };
    for (std::size_t i = 0; i < n; ++i) consider(i, i, t[i] + "*" + t[i]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        consider(i, j, "[" + t[i] + "," + t[j] + "]");
  }

  void build_pi3() {
    const auto& t = dual_.algebra.letters;
    pi3_.degree = 3;
    EchelonBasis<K> span(component(3).dim(), field());
    for (std::size_t u = 0; u < pi2_.basis.size(); ++u)
      for (std::size_t j = 0; j < num_generators(); ++j) {
        Vec<K> b = bracket_with_generator(pi2_.basis[u], j);
        if (span.insert(b)) {
          pi3_.basis.push_back(std::move(b));
          pi3_.labels.push_back("[" + pi2_.labels[u] + "," + t[j] + "]");
        }
      }
  }

  QuadraticDual<K> dual_;
  std::vector<NcComponent<K>> components_;
  PiComponent<K> pi2_;
  PiComponent<K> pi3_;
};

inline constexpr const char* kObstructed = "obstructed: no embedded deformation";
inline constexpr const char* kUnobstructed = "unobstructed at this test";

struct ObstructionReport {
  std::vector<std::size_t> center_dims;  // one per factor
  std::size_t center_dim = 0;
  bool obstructed = false;
  std::string verdict;
};

/// Degree-two center of each factor; the product's center is their sum,
/// and the obstruction holds exactly when that sum is zero.
template <FieldElement K>
ObstructionReport obstruction_from_centers(std::vector<std::size_t> dims) {
  ObstructionReport r;
  r.center_dims = std::move(dims);
  for (auto d : r.center_dims) r.center_dim += d;
  r.obstructed = r.center_dim == 0;
  r.verdict = r.obstructed ? kObstructed : kUnobstructed;
  return r;
}

template <FieldElement K>
ObstructionReport embedded_deformation_obstruction(const std::vector<AlgebraSpec<K>>& factors) {
  std::vector<std::size_t> dims;
  for (const auto& s : factors) dims.push_back(HomotopyLie<K>(quadratic_dual(s)).central_pi2().size());
  return obstruction_from_centers<K>(std::move(dims));
}

}  // namespace tacalc
