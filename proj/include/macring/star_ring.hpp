#pragma once

// The *-product on the decomposed module and its multiplication table.

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "macring/decomposition.hpp"

namespace mac {

/// Coefficients over the generators of a DecompositionModule.
using RingElement = std::vector<Integer>;

/// How a product in the table was obtained.
enum class ProductRule {
  Disjoint,   // J ∩ L = ∅: join formula on K_{J∪L}
  Vanishing,  // overlapping indices with suspension pairs
  Cone,       // overlapping indices, fiber ring product
  Geometric,  // cup product on a triangulated model
};
std::string to_string(ProductRule rule);

/// A finite multiplication table on the generators of a decomposition.
class StarRing {
 public:
  StarRing(DecompositionModule module, std::vector<std::vector<RingElement>> table,
           std::vector<std::vector<ProductRule>> rules);

  const DecompositionModule& module() const { return *module_; }
  std::size_t size() const { return module_->generators().size(); }
  const RingElement& product(std::size_t i, std::size_t j) const { return table_[i][j]; }
  ProductRule rule(std::size_t i, std::size_t j) const { return rules_[i][j]; }

  RingElement zero() const { return RingElement(size()); }
  RingElement unit() const { return generator(0); }
  RingElement generator(std::size_t i) const;
  /// Reduces each coordinate modulo the generator order (or p over Z/p).
  RingElement normalize(RingElement x) const;

 private:
  std::shared_ptr<const DecompositionModule> module_;
  std::vector<std::vector<RingElement>> table_;
  std::vector<std::vector<ProductRule>> rules_;
};

/// (a ⋆ b)(σ) = ε · a(σ ∩ J) · b(σ ∩ L) on K_{J∪L} for disjoint J and L,
/// where ε is the sign of the shuffle of σ ∩ J and σ ∩ L. The cochain a lives
/// on K_J, b on K_L; the result has degree |a| + |b| + 1.
Cochain star_disjoint(const SimplicialComplex& k, const IndexSet& j, const IndexSet& l, const Cochain& a,
                      const Cochain& b, const Coefficients& ring);

/// Product of fiber tensors x = ⊗_{i∈J} x_i and y = ⊗_{i∈L} y_i in
/// ⊗_{i∈J∪L} H̃*(A_i): a list of (generator choice, coefficient) including
/// the Koszul sign of moving the y factors past the x factors.
std::vector<std::pair<std::vector<int>, Integer>> cone_pair_product(const PairFamily& pairs, const IndexSet& j,
                                                                    const std::vector<int>& x, const IndexSet& l,
                                                                    const std::vector<int>& y);

/// Bilinear extension of the table.
RingElement star_product(const StarRing& ring, const RingElement& u, const RingElement& v);

/// The table for every ordered pair of generators. Disk-sphere and cone
/// families use the join formula and the fiber rings, with overlapping
/// (D¹, S⁰)-type products taken from a model of Z(K_I; (D¹, S⁰)).
/// Simplicial pairs are multiplied on the model of Z(K_{J∪L}).
StarRing multiplication_table(const DecompositionModule& module, std::size_t budget = default_simplex_budget);
StarRing multiplication_table(const SimplicialComplex& k, const PairFamily& pairs, const Coefficients& ring,
                              std::size_t budget = default_simplex_budget);

/// Structural checks of a table.
struct TableReport {
  bool ok = true;
  std::vector<std::string> failures;
};
/// Unit, degree additivity, graded commutativity and associativity.
TableReport check_table(const StarRing& ring);

struct IsoReport {
  bool isomorphic = true;
  std::string counterexample;
};

/// Compares the tables for the families suspended by t and by t' under the
/// identity correspondence of generators. Requires t ≡ t' mod 2.
IsoReport ungraded_iso_check(const SimplicialComplex& k, const PairFamily& pairs, const std::vector<int>& t,
                             const std::vector<int>& t_prime, const Coefficients& ring,
                             std::size_t budget = default_simplex_budget);
IsoReport compare_tables(const StarRing& a, const StarRing& b);

}  // namespace mac
