#pragma once

// Geometric checks of the splitting and of the *-product: images of the
// decomposition generators in the cohomology of a triangulated Z(K_I),
// computed with cup products and projections.

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "macring/decomposition.hpp"
#include "macring/model.hpp"
#include "macring/star_ring.hpp"

namespace mac {

/// The total model of Z(K_I; (X, A)_I) together with the images η(g) of
/// every decomposition generator g living over a subset of I.
///
/// For disk-sphere pairs η(g) is disk_sphere_image of the K_J cocycle; for
/// simplicial pairs it is the projection pullback of the smash cocycle.
class EtaRealization {
 public:
  EtaRealization(const DecompositionModule& module, const IndexSet& subset,
                 std::size_t budget = default_simplex_budget);

  const DecompositionModule& module() const { return *module_; }
  const IndexSet& subset() const { return subset_; }
  const TriangulatedModel& model() const { return *model_; }
  const CochainComplex& cochains() const { return *cochains_; }
  const CohomologyGroups& groups() const { return *groups_; }
  /// Module generators over subsets of I, in module order.
  const std::vector<std::size_t>& generators() const { return generators_; }

  const Cochain& image(std::size_t generator) const;
  /// Coordinates against the images of the degree-n generators; valid iff
  /// they form a basis of H^n of the model.
  const ClassCoordinates& coordinates(int n) const;
  /// Coordinates of a cocycle as a vector over all module generators.
  std::vector<Integer> express(const Cochain& x) const;

 private:
  const DecompositionModule* module_;
  IndexSet subset_;
  std::shared_ptr<TriangulatedModel> model_;
  std::shared_ptr<CochainComplex> cochains_;
  std::shared_ptr<CohomologyGroups> groups_;
  std::vector<std::size_t> generators_;
  mutable std::map<std::size_t, Cochain> images_;
  mutable std::map<int, ClassCoordinates> coordinates_;
};

struct SplittingReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::map<int, DegreeGroup> decomposition;  // from the summands
  std::map<int, DegreeGroup> total;          // from the model of Z(K)
  std::map<int, DegreeGroup> smash_sum;      // Σ_I of the smash models
};

/// Compares the decomposition with the cohomology of the total model and
/// with the smash models, and checks that η is an isomorphism in every
/// degree.
SplittingReport verify_splitting(const SimplicialComplex& k, const PairFamily& pairs, const Coefficients& ring,
                                 std::size_t budget = default_simplex_budget);

struct RingReport {
  bool ok = true;
  std::size_t pairs_checked = 0;
  std::vector<std::string> failures;
};

/// For every unordered pair of generators g_i, g_j checks that
/// η(g_i) ⌣ η(g_j) − Σ_k c_k η(g_k) is a coboundary on the total model,
/// where Σ c_k g_k is the tabulated product g_i * g_j.
RingReport verify_eta_ring(const SimplicialComplex& k, const PairFamily& pairs, const Coefficients& ring,
                           std::size_t budget = default_simplex_budget);
RingReport verify_eta_ring(const StarRing& table, std::size_t budget = default_simplex_budget);

/// The multiplication table read off the total model alone: every product
/// η(g_i) ⌣ η(g_j) expressed in the η basis.
StarRing direct_ring(const SimplicialComplex& k, const PairFamily& pairs, const Coefficients& ring,
                     std::size_t budget = default_simplex_budget);

}  // namespace mac
