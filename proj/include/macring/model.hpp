#pragma once

// Simplicial models of polyhedral products: the staircase triangulation of
// the product of the factors X_i, restricted to Z(K; (X, A)).

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "macring/cohomology.hpp"
#include "macring/pairs.hpp"

namespace mac {

inline constexpr std::size_t default_simplex_budget = 4'000'000;

/// A triangulation of Z(K; (X, A)) for simplicial pairs.
///
/// Vertices are tuples (w_1, ..., w_k) with w_c a vertex of X_c, numbered
/// 1 + Σ (w_c - 1)·stride_c with the first coordinate most significant, so
/// vertex order is the lexicographic order of tuples. Simplices are strict
/// chains in the product order whose coordinate projections are faces of the
/// X_c and which lie in some D(σ), σ ∈ K.
class TriangulatedModel {
 public:
  const SimplicialComplex& complex() const { return *complex_; }
  std::shared_ptr<const SimplicialComplex> complex_ptr() const { return complex_; }
  int coordinates() const { return static_cast<int>(factors_.size()); }
  const std::vector<SimplicialPair>& factors() const { return factors_; }

  /// Coordinate c (0-based) of the model vertex v, a vertex of X_c.
  Vertex coordinate(Vertex v, int c) const {
    auto k = static_cast<std::size_t>(c);
    return static_cast<Vertex>((static_cast<std::size_t>(v - 1) / stride_[k]) % radix_[k]) + 1;
  }
  Vertex vertex_of(std::span<const Vertex> tuple) const;

  /// fat_wedge()[d + 1][i]: some coordinate projection of face (d, i) is
  /// the basepoint alone.
  const std::vector<std::vector<char>>& fat_wedge() const { return fat_wedge_; }
  std::size_t simplex_count() const { return complex_->face_count() - 1; }

  /// Unreduced cochains of the model.
  CochainComplex total_cochains(const Coefficients& ring) const;
  /// Cochains vanishing on the fat wedge: the reduced cohomology of the
  /// smash product Ẑ. With no coordinates the model is a point and this is
  /// its unreduced cohomology.
  CochainComplex smash_cochains(const Coefficients& ring) const;

 private:
  friend TriangulatedModel build_model(const SimplicialComplex&, const std::vector<SimplicialPair>&, std::size_t);

  std::shared_ptr<const SimplicialComplex> complex_;
  std::vector<SimplicialPair> factors_;
  std::vector<std::size_t> radix_, stride_;
  std::vector<std::vector<char>> fat_wedge_;
};

/// Model of Z(K; (X, A)) for one simplicial pair per vertex of K. Throws
/// BudgetExceeded once more than `budget` simplices would be generated.
TriangulatedModel build_model(const SimplicialComplex& k, const std::vector<SimplicialPair>& factors,
                              std::size_t budget = default_simplex_budget);
TriangulatedModel build_model(const SimplicialComplex& k, const PairFamily& pairs,
                              std::size_t budget = default_simplex_budget);
/// Model of Z(K_I; (X, A)_I), whose smash cochains compute H̃*(Ẑ(K_I)).
TriangulatedModel build_smash_model(const SimplicialComplex& k, const PairFamily& pairs, const IndexSet& subset,
                                    std::size_t budget = default_simplex_budget);

/// Pulls a cochain on `target` back along the projection of `source` onto the
/// coordinates `positions` (positions[c] is the source coordinate feeding
/// target coordinate c). Simplices with a degenerate image get 0.
Cochain projection_pullback(const TriangulatedModel& source, const TriangulatedModel& target,
                            const std::vector<int>& positions, const Cochain& u);

/// Image of a class c ∈ H̃^q(K_J) in the cohomology of a disk-sphere model.
///
/// `positions` are the model coordinates of J in increasing order and
/// `disks[a]` the disk dimension n_a at position a. On a simplex whose
/// projection to J visits the tuples p_0 < ... < p_N, the value is
/// ε_σ · c(σ) when the walk splits into consecutive segments, one per a,
/// where segment a runs through 1, ..., n_a + 1 (then a ∈ σ) or through
/// 2, ..., n_a + 1 (then a ∉ σ) in coordinate a, and 0 otherwise. The sign
/// is ε_σ = (-1)^{Σ_{j∈σ} Σ_{l<j} (n_l - 1)}. The result has degree
/// q + 1 + Σ (n_a - 1) and vanishes on the fat wedge of J.
Cochain disk_sphere_image(const TriangulatedModel& model, const std::vector<int>& positions,
                          const std::vector<int>& disks, const SimplicialComplex& k_j, const Cochain& c,
                          const Coefficients& ring);

}  // namespace mac
