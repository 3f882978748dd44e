#pragma once

// The additive splitting H*(Z(K; (X, A))) ≅ ⊕_I H̃*(Ẑ(K_I)) summand by summand.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "macring/cohomology.hpp"
#include "macring/model.hpp"
#include "macring/pairs.hpp"

namespace mac {

/// One summand of the splitting.
///
/// For disk-sphere and cone families this is H̃^q(K_I) ⊗ (x_i)_{i∈I} where
/// x_i is a generator of the fiber ring of vertex i, in total degree
/// q + 1 + Σ |x_i|. For simplicial pairs it is H^n(Ẑ(K_I)) computed on the
/// smash model, with q = n.
struct Summand {
  IndexSet index;
  int internal_degree = 0;
  std::vector<int> fiber;  // one fiber-ring generator per member of index
  int fiber_degree = 0;
  int total_degree = 0;
  CohomologyBasis basis;
};

struct ModuleGenerator {
  std::size_t summand = 0;
  std::size_t index = 0;  // position in the summand basis
  int degree = 0;
  Integer order = 0;  // 0 = free
};

/// The decomposed cohomology module with generators ordered by
/// (|I|, I lexicographically, q, fiber, basis position). Generator 0 is the
/// unit (I = ∅ in degree 0).
class DecompositionModule {
 public:
  const SimplicialComplex& complex() const { return *complex_; }
  const PairFamily& pairs() const { return pairs_; }
  const Coefficients& ring() const { return ring_; }
  const std::vector<Summand>& summands() const { return summands_; }
  const std::vector<ModuleGenerator>& generators() const { return generators_; }
  std::size_t first_generator(std::size_t summand) const { return first_[summand]; }

  std::optional<std::size_t> find_summand(const IndexSet& subset, int q, const std::vector<int>& fiber) const;
  std::vector<std::size_t> generators_in_degree(int n) const;
  int max_degree() const;

  /// K_I, shared between summands.
  std::shared_ptr<const SimplicialComplex> restriction(const IndexSet& subset) const;
  /// Smash model of K_I (simplicial pairs only).
  std::shared_ptr<const TriangulatedModel> smash_model(const IndexSet& subset) const;
  /// True after regrade of a simplicial family: the stored smash generators
  /// belong to the unsuspended pairs.
  bool geometry_stale() const { return stale_; }

  std::string generator_label(std::size_t g) const;

 private:
  friend DecompositionModule decompose(const SimplicialComplex&, const PairFamily&, const Coefficients&,
                                       std::size_t);
  friend DecompositionModule regrade(const DecompositionModule&, const std::vector<int>&);
  void index_generators();

  std::shared_ptr<const SimplicialComplex> complex_;
  PairFamily pairs_;
  Coefficients ring_ = Coefficients::integers();
  std::vector<Summand> summands_;
  std::vector<ModuleGenerator> generators_;
  std::vector<std::size_t> first_;
  std::map<std::uint64_t, std::shared_ptr<const SimplicialComplex>> restrictions_;
  std::map<std::uint64_t, std::shared_ptr<const TriangulatedModel>> smash_models_;
  bool stale_ = false;
};

/// Computes every summand. Disk-sphere and cone families only need the full
/// subcomplexes; simplicial pairs build one smash model per I, each limited
/// by `budget`.
DecompositionModule decompose(const SimplicialComplex& k, const PairFamily& pairs, const Coefficients& ring,
                              std::size_t budget = default_simplex_budget);

/// Per-degree counts: free rank and torsion orders (over a field every
/// generator counts as free).
struct DegreeGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  friend bool operator==(const DegreeGroup&, const DegreeGroup&) = default;
};
std::map<int, DegreeGroup> degree_groups(const DecompositionModule& module);

/// Coefficients of the Poincaré polynomial Σ rank H^n t^n (free ranks).
std::map<int, std::size_t> poincare_series(const DecompositionModule& module);

/// Moves each summand at I up by Σ_{i∈I} t_i and suspends the pair family
/// by t. Composes additively.
DecompositionModule regrade(const DecompositionModule& module, const std::vector<int>& t);

}  // namespace mac
