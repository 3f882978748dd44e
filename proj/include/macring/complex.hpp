#pragma once

// Abstract simplicial complexes on ordered vertex sets, full subcomplexes,
// joins, and the vertex maps between them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mac {

using Vertex = int;
/// Sorted, duplicate-free list of 1-based vertices. The empty face is `{}`.
using Face = std::vector<Vertex>;

/// A sorted subset of [m] = {1, ..., m}.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::vector<int> members, int ambient);

  static IndexSet full(int ambient);
  static IndexSet from_mask(std::uint64_t mask, int ambient);

  /// Every subset of [m], ordered by size and then lexicographically.
  static std::vector<IndexSet> all_subsets(int ambient);

  const std::vector<int>& members() const { return members_; }
  int ambient() const { return ambient_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(int v) const { return (mask_ >> v) & 1u; }
  std::uint64_t mask() const { return mask_; }

  /// 0-based position of `v` among the members, or -1.
  int position(int v) const;

  bool disjoint(const IndexSet& other) const { return (mask_ & other.mask_) == 0; }
  bool subset_of(const IndexSet& other) const { return (mask_ & ~other.mask_) == 0; }
  IndexSet united(const IndexSet& other) const;
  IndexSet intersected(const IndexSet& other) const;

  std::string to_string() const;  // "{1,3}"

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.ambient_ == b.ambient_ && a.mask_ == b.mask_;
  }
  /// (size, lexicographic) order.
  friend bool operator<(const IndexSet& a, const IndexSet& b);

 private:
  std::vector<int> members_;
  int ambient_ = 0;
  std::uint64_t mask_ = 0;
};

/// A finite abstract simplicial complex on the vertex set {1, ..., n}.
///
/// Faces are stored per dimension as lexicographically sorted flat arrays with
/// a hash index, so the same type serves both the small input complexes and
/// the large triangulated models. Vertices that lie in no face (ghost
/// vertices) are allowed. The empty face is always present. Immutable.
class SimplicialComplex {
 public:
  /// The complex {∅} on zero vertices.
  SimplicialComplex();

  /// Downward closure of `facets`. Throws InputError on out-of-range or
  /// repeated vertices.
  static SimplicialComplex from_facets(int vertex_count, std::vector<Face> facets);

  /// Trusted constructor: `by_dim[d]` holds the concatenated faces of
  /// dimension d (d >= 0), lexicographically sorted, duplicate free and closed
  /// under taking faces.
  static SimplicialComplex from_sorted_faces(int vertex_count,
                                             std::vector<std::vector<Vertex>> by_dim);

  int vertex_count() const { return vertex_count_; }
  /// -1 for {∅}.
  int dimension() const { return static_cast<int>(tables_.size()) - 2; }

  /// Number of faces of dimension `dim` (dim >= -1; 0 outside the range).
  std::size_t count(int dim) const;
  std::size_t face_count() const;

  std::span<const Vertex> face(int dim, std::size_t index) const;
  Face face_vector(int dim, std::size_t index) const;

  std::optional<std::size_t> index_of(std::span<const Vertex> face) const;
  bool contains(std::span<const Vertex> face) const { return index_of(face).has_value(); }

  /// Maximal faces in (dimension, lexicographic) order.
  std::vector<Face> facets() const;
  /// All faces including ∅, ordered by (dimension, lexicographic).
  std::vector<Face> faces() const;

  /// "m=<n>; facets={..},{..}"
  std::string to_string() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b);

 private:
  struct DimTable {
    int width = 0;  // vertices per face
    std::size_t count = 0;
    std::vector<Vertex> flat;
    std::vector<std::uint32_t> slots;  // open addressing, stores index + 1

    void build_index();
    std::optional<std::size_t> find(std::span<const Vertex> face) const;
  };

  int vertex_count_ = 0;
  std::vector<DimTable> tables_;  // tables_[d + 1]
};

/// Vertex map between complexes. Faces of the source are sent to faces of the
/// target (checked at construction).
class SimplicialMap {
 public:
  SimplicialMap(SimplicialComplex source, SimplicialComplex target,
                std::vector<Vertex> vertex_image);

  const SimplicialComplex& source() const { return source_; }
  const SimplicialComplex& target() const { return target_; }
  Vertex operator()(Vertex v) const { return image_[static_cast<std::size_t>(v - 1)]; }
  const std::vector<Vertex>& vertex_image() const { return image_; }

  /// Image of an ordered face as a sorted face together with the sign of the
  /// sorting permutation; sign 0 when two vertices collapse.
  std::pair<Face, int> oriented_image(std::span<const Vertex> face) const;

 private:
  SimplicialComplex source_;
  SimplicialComplex target_;
  std::vector<Vertex> image_;
};

/// Parses `m=<int>; facets={a,b,...},{...}` or the JSON form
/// `{"m": <int>, "facets": [[...], ...]}`.
SimplicialComplex parse_complex(std::string_view text);

/// K_I = {σ ∩ I : σ ∈ K}, re-indexed to 1..|I| in the order inherited from I.
SimplicialComplex full_subcomplex(const SimplicialComplex& k, const IndexSet& subset);

/// Join on the ordered disjoint union of the vertex sets (K1 first).
SimplicialComplex join(const SimplicialComplex& k1, const SimplicialComplex& k2);

/// The vertex map K_{J∪L} -> K_J * K_L sending each vertex to its copy in the
/// factor it belongs to. Throws InputError if J and L overlap.
SimplicialMap canonical_join_inclusion(const SimplicialComplex& k, const IndexSet& j,
                                       const IndexSet& l);

/// Sign of the permutation sorting the concatenation (a, b) of two sorted
/// disjoint sequences.
int shuffle_sign(std::span<const Vertex> a, std::span<const Vertex> b);

// Named complexes used throughout the tests and the CLI.
namespace complexes {
SimplicialComplex points(int n);
SimplicialComplex simplex(int n);        // full simplex on n vertices
SimplicialComplex simplex_boundary(int n);
SimplicialComplex cycle(int n);          // n-gon, n >= 3
SimplicialComplex rp2();                 // 6-vertex minimal RP^2
SimplicialComplex torus();               // 7-vertex Möbius torus
}  // namespace complexes

}  // namespace mac
