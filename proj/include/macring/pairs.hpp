#pragma once

// Per-vertex pair descriptors (X_i, A_i) and the finite graded rings used for
// cone pairs.

#include <string>
#include <string_view>
#include <vector>

#include "macring/complex.hpp"
#include "macring/linalg.hpp"

namespace mac {

/// A finite graded-commutative ring presenting the reduced cohomology of a
/// space X by free generators and integral structure constants.
class GradedRing {
 public:
  struct Generator {
    std::string name;
    int degree = 0;
    friend bool operator==(const Generator&, const Generator&) = default;
  };

  GradedRing() = default;

  /// Text format, one statement per line, '#' starts a comment:
  ///   gen <name> <degree>
  ///   <a>*<b> = 0
  ///   <a>*<b> = <c> <name> + <c> <name> ...
  /// Products not listed are zero unless their mirror image is listed, in
  /// which case graded commutativity fills them in.
  static GradedRing parse(std::string_view text);
  /// Reduced cohomology of S^d: one generator s, with s² = s for d = 0 and
  /// s² = 0 otherwise.
  static GradedRing sphere(int d);

  std::size_t size() const { return gens_.size(); }
  const Generator& generator(std::size_t i) const { return gens_[i]; }
  int degree(std::size_t i) const { return gens_[i].degree; }
  /// Coefficients of g_i·g_j over the generators.
  const std::vector<Integer>& product(std::size_t i, std::size_t j) const { return table_[i][j]; }

  /// Degrees raised by t; for t ≥ 1 all products vanish (reduced cohomology
  /// of a suspension).
  GradedRing shifted(int t) const;

  /// Throws InputError unless the table is homogeneous, graded commutative
  /// and associative.
  void validate() const;

  std::string to_string() const;
  friend bool operator==(const GradedRing&, const GradedRing&) = default;

 private:
  std::vector<Generator> gens_;
  std::vector<std::vector<std::vector<Integer>>> table_;
};

/// A simplicial pair (X, A) with a basepoint vertex in A.
struct SimplicialPair {
  SimplicialComplex x;
  SimplicialComplex a;
  Vertex basepoint = 1;
  /// True when A was empty and a disjoint basepoint was added to X and A.
  bool basepoint_added = false;

  /// Validates A ⊆ X and picks the smallest vertex of A as basepoint (adding
  /// a disjoint basepoint first when A has no vertices).
  static SimplicialPair make(SimplicialComplex x, SimplicialComplex a);
  /// (Δ^n, ∂Δ^n) on vertices 1..n+1, basepoint 1.
  static SimplicialPair disk(int n);
  /// Unreduced simplicial suspension: join with two poles numbered 1 and 2,
  /// basepoint at pole 1.
  SimplicialPair suspension() const;
};

/// The family (X_i, A_i), i ∈ [m], with an optional suspension vector T.
class PairFamily {
 public:
  enum class Kind { DiskSphere, Cone, Simplicial };

  static PairFamily disk_sphere(std::vector<int> n);
  static PairFamily disk_sphere(int m, int n) { return disk_sphere(std::vector<int>(static_cast<std::size_t>(m), n)); }
  static PairFamily cone(std::vector<GradedRing> rings);
  static PairFamily simplicial(std::vector<SimplicialPair> pairs);

  /// Adds T to the current suspension vector.
  PairFamily suspended(const std::vector<int>& t) const;

  Kind kind() const { return kind_; }
  int size() const { return static_cast<int>(t_.size()); }
  const std::vector<int>& suspension() const { return t_; }
  /// The same family with the suspension vector cleared.
  PairFamily unsuspended() const;

  /// Effective disk dimension n_i + t_i (DiskSphere only).
  int disk_dimension(int i) const;
  /// Reduced cohomology ring of A_i after suspension (DiskSphere and Cone).
  GradedRing fiber_ring(int i) const;
  /// Simplicial model of the suspended pair (DiskSphere and Simplicial).
  SimplicialPair simplicial_pair(int i) const;

  bool has_geometric_model() const { return kind_ != Kind::Cone; }
  bool has_fiber_rings() const { return kind_ != Kind::Simplicial; }
  /// Overlapping *-products vanish: every effective disk has dimension ≥ 2,
  /// or every coordinate is suspended at least once.
  bool is_suspension_pair() const;
  bool any_basepoint_added() const;

  /// The family restricted to the coordinates in I (in increasing order).
  PairFamily restricted(const IndexSet& subset) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::DiskSphere;
  std::vector<int> n_;
  std::vector<GradedRing> rings_;
  std::vector<SimplicialPair> pairs_;
  std::vector<int> t_;
};

/// `disk-sphere:n`, `disk-sphere:[n1,...]`, `pair-file:<path>`,
/// `cone:<ring-file>` or `cone:[f1,...]` (a file name may be `sphere:<d>`),
/// optionally followed by `;suspend:[t1,...]` or ` suspend:[...]`.
PairFamily parse_pair_family(std::string_view text, int m);

/// JSON pair file: {"X": <complex>, "A": <complex>} for every vertex, or
/// {"pairs": [{"X": ..., "A": ...}, ...]} with one entry per vertex. A complex
/// is either the text format or a {"m", "facets"} object.
std::vector<SimplicialPair> parse_pair_file(std::string_view json_text, int m);

std::string read_text_file(const std::string& path);

}  // namespace mac
