#pragma once

// Simplicial cochain complexes (reduced, unreduced, relative), cohomology
// groups with representative cocycles, cup products and pullbacks.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "macring/complex.hpp"
#include "macring/linalg.hpp"

namespace mac {

/// A cochain of one degree, indexed by the faces of that dimension of the
/// underlying complex (lexicographic face order).
struct Cochain {
  int degree = 0;
  std::vector<Integer> values;

  bool is_zero() const;
  friend bool operator==(const Cochain&, const Cochain&) = default;
};

/// Cochains of a complex, optionally augmented (reduced cohomology) and
/// optionally relative to a set of excluded faces, which must form a
/// subcomplex.
class CochainComplex {
 public:
  /// Augmented cochains: H^* is the reduced cohomology, H^{-1}({∅}) = R.
  static CochainComplex reduced(std::shared_ptr<const SimplicialComplex> k, const Coefficients& ring);
  static CochainComplex unreduced(std::shared_ptr<const SimplicialComplex> k, const Coefficients& ring);
  /// Cochains vanishing on the faces flagged in `excluded[d + 1]` (d ≥ -1,
  /// a missing row means nothing of that dimension is excluded).
  static CochainComplex relative(std::shared_ptr<const SimplicialComplex> k, const Coefficients& ring,
                                 std::vector<std::vector<char>> excluded, bool augmented);

  const SimplicialComplex& complex() const { return *complex_; }
  std::shared_ptr<const SimplicialComplex> complex_ptr() const { return complex_; }
  const Coefficients& ring() const { return ring_; }
  bool augmented() const { return augmented_; }
  int min_degree() const { return augmented_ ? -1 : 0; }
  int max_degree() const { return complex_->dimension(); }

  /// Number of basis cochains in degree q.
  std::size_t rank(int q) const;
  /// Face indices (in dimension q) of the basis cochains.
  const std::vector<std::uint32_t>& basis(int q) const;
  /// Position of a face in the basis of degree q, or -1 when excluded.
  std::int32_t local(int q, std::size_t face) const;
  bool excluded(int q, std::size_t face) const { return local(q, face) < 0; }

  /// δ_q as a list of columns over the local bases: column j lists
  /// (row, ±1) in increasing row order.
  std::vector<std::vector<std::pair<std::uint32_t, int>>> coboundary_columns(int q) const;
  IntMatrix coboundary_matrix(int q) const;

  Cochain zero(int q) const;
  Cochain coboundary(const Cochain& c) const;
  bool is_cocycle(const Cochain& c) const;
  /// True when c vanishes on every excluded face.
  bool is_relative(const Cochain& c) const;

 private:
  CochainComplex() = default;
  void index();
  void check_square_zero() const;

  std::shared_ptr<const SimplicialComplex> complex_;
  Coefficients ring_ = Coefficients::integers();
  bool augmented_ = true;
  std::vector<std::vector<char>> excluded_;           // [d + 1][face]
  std::vector<std::vector<std::uint32_t>> basis_;      // [d + 1]
  std::vector<std::vector<std::int32_t>> local_;       // [d + 1][face]
};

namespace detail {
struct BasisImpl;
struct GroupsImpl;
struct CoordinatesImpl;
}  // namespace detail

/// H^q of a cochain complex with explicit representative cocycles.
///
/// Free generators come first, then torsion generators in increasing order
/// of their invariant factors. Coordinates of torsion generators are reported
/// modulo their order; over Z/p all coordinates lie in [0, p).
class CohomologyBasis {
 public:
  int degree() const;
  const Coefficients& ring() const;
  std::size_t free_rank() const;
  const std::vector<Integer>& torsion() const;
  std::size_t size() const;
  const std::vector<Cochain>& generators() const;
  /// 0 for free generators, the invariant factor for torsion generators.
  const std::vector<Integer>& orders() const;

  /// Coordinates of a cocycle. Throws InputError if c is not a cocycle.
  std::vector<Integer> express(const Cochain& c) const;
  bool is_coboundary(const Cochain& c) const;

 private:
  friend CohomologyBasis cohomology_basis(const CochainComplex&, int);
  std::shared_ptr<const detail::BasisImpl> impl_;
};

CohomologyBasis cohomology_basis(const CochainComplex& complex, int q);
CohomologyBasis reduced_cohomology(const SimplicialComplex& k, const Coefficients& ring, int q);

/// Cochains of K vanishing on the subcomplex A. When A has at least one vertex
/// the complex is unaugmented, so its cohomology is the reduced cohomology of
/// K/A; relative to the empty complex it is the reduced cohomology of K.
CochainComplex quotient_cohomology(std::shared_ptr<const SimplicialComplex> k, const SimplicialComplex& a,
                                   const Coefficients& ring);

/// Coordinates with respect to a family of cocycles that was verified to be a
/// basis of H^q (see CohomologyGroups::coordinates).
class ClassCoordinates {
 public:
  bool valid() const;
  /// Why the family is not a basis (empty when valid).
  const std::string& failure() const;
  /// Coordinates of a cocycle; torsion coordinates modulo their order.
  std::vector<Integer> operator()(const Cochain& c) const;

 private:
  friend class CohomologyGroups;
  std::shared_ptr<const detail::CoordinatesImpl> impl_;
};

/// All cohomology groups of a (possibly large) cochain complex, without
/// explicit generators. Computed once by column reduction with clearing.
class CohomologyGroups {
 public:
  explicit CohomologyGroups(const CochainComplex& complex);

  const CochainComplex& complex() const;
  std::size_t betti(int q) const;
  const std::vector<Integer>& torsion(int q) const;
  bool is_coboundary(const Cochain& c) const;

  /// Checks that the cocycles `gens`, the g-th of additive order orders[g]
  /// (0 = infinite), form a basis of H^q, and returns the coordinate map.
  ClassCoordinates coordinates(int q, const std::vector<Cochain>& gens, const std::vector<Integer>& orders) const;

 private:
  std::shared_ptr<const detail::GroupsImpl> impl_;
};

/// Alexander–Whitney product on ordered faces: (u⌣v)(v₀…v_{p+q}) =
/// u(v₀…v_p)·v(v_p…v_{p+q}). Zero cochain when p+q exceeds dim K.
Cochain cup_product(const SimplicialComplex& k, const Cochain& u, const Cochain& v, const Coefficients& ring);

/// (f*c)(σ) = sign·c(f(σ)) for the sorted image; 0 on degenerate images.
Cochain pullback(const SimplicialMap& f, const Cochain& c, const Coefficients& ring);

/// Pullback expressed in the given basis of the source.
std::vector<Integer> induced_map(const SimplicialMap& f, const Cochain& c, const CohomologyBasis& source_basis);

}  // namespace mac
