#include "macring/model.hpp"

#include <string>
#include <unordered_set>

#include "macring/errors.hpp"

namespace mac {

namespace {

std::uint64_t face_mask(std::span<const Vertex> f) {
  std::uint64_t m = 0;
  for (Vertex v : f) m |= std::uint64_t{1} << (v - 1);
  return m;
}

std::unordered_set<std::uint64_t> face_masks(const SimplicialComplex& k) {
  std::unordered_set<std::uint64_t> out;
  for (int d = -1; d <= k.dimension(); ++d)
    for (std::size_t i = 0; i < k.count(d); ++i) out.insert(face_mask(k.face(d, i)));
  return out;
}

struct Factor {
  int radix = 0;
  std::uint64_t basepoint_bit = 0;
  std::unordered_set<std::uint64_t> x_faces, a_faces;
};

// Depth-first enumeration of strict chains. Preorder with increasing
// successors lists every dimension in lexicographic order.
class ChainBuilder {
 public:
  ChainBuilder(const SimplicialComplex& k, const std::vector<SimplicialPair>& pairs, std::size_t budget)
      : k_faces_(face_masks(k)), budget_(budget) {
    for (const auto& p : pairs) {
      Factor f;
      f.radix = p.x.vertex_count();
      f.basepoint_bit = std::uint64_t{1} << (p.basepoint - 1);
      f.x_faces = face_masks(p.x);
      f.a_faces = face_masks(p.a);
      factors_.push_back(std::move(f));
    }
    stride_.assign(factors_.size(), 1);
    for (std::size_t c = factors_.size(); c-- > 1;)
      stride_[c - 1] = stride_[c] * static_cast<std::size_t>(factors_[c].radix);
  }

  void run() {
    const std::size_t k = factors_.size();
    std::vector<Vertex> tuple(k, 1);
    std::vector<std::uint64_t> masks(k);
    bool done = false;
    for (const auto& f : factors_)
      if (f.radix == 0) done = true;
    while (!done) {
      std::uint64_t outside = 0;
      bool ok = true;
      for (std::size_t c = 0; c < k && ok; ++c) {
        masks[c] = std::uint64_t{1} << (tuple[c] - 1);
        if (!factors_[c].x_faces.count(masks[c])) ok = false;
        else if (!factors_[c].a_faces.count(masks[c])) outside |= std::uint64_t{1} << c;
      }
      if (ok && k_faces_.count(outside)) {
        chain_.assign(1, id_of(tuple));
        record(masks);
        extend(tuple, masks, outside);
      }
      // next tuple, last coordinate fastest
      std::size_t c = k;
      while (c > 0) {
        --c;
        if (tuple[c] < factors_[c].radix) {
          ++tuple[c];
          break;
        }
        tuple[c] = 1;
        if (c == 0) done = true;
      }
      if (k == 0) done = true;
    }
  }

  std::vector<std::vector<Vertex>> by_dim;
  std::vector<std::vector<char>> fat;  // [d]
  std::vector<std::size_t> stride_;

 private:
  Vertex id_of(const std::vector<Vertex>& tuple) const {
    std::size_t id = 0;
    for (std::size_t c = 0; c < tuple.size(); ++c) id += static_cast<std::size_t>(tuple[c] - 1) * stride_[c];
    return static_cast<Vertex>(id + 1);
  }

  void record(const std::vector<std::uint64_t>& masks) {
    const std::size_t d = chain_.size() - 1;
    if (by_dim.size() <= d) {
      by_dim.resize(d + 1);
      fat.resize(d + 1);
    }
    if (++count_ > budget_)
      throw BudgetExceeded("model exceeds the budget of " + std::to_string(budget_) + " simplices");
    by_dim[d].insert(by_dim[d].end(), chain_.begin(), chain_.end());
    bool in_fat = false;
    for (std::size_t c = 0; c < masks.size() && !in_fat; ++c) in_fat = masks[c] == factors_[c].basepoint_bit;
    fat[d].push_back(in_fat ? 1 : 0);
  }

  void extend(const std::vector<Vertex>& tuple, const std::vector<std::uint64_t>& masks, std::uint64_t outside) {
    const std::size_t k = factors_.size();
    // candidate values per coordinate: stay, or move up to a vertex that
    // keeps the projection a face of X_c
    std::vector<std::vector<Vertex>> options(k);
    for (std::size_t c = 0; c < k; ++c) {
      options[c].push_back(tuple[c]);
      for (Vertex v = tuple[c] + 1; v <= factors_[c].radix; ++v)
        if (factors_[c].x_faces.count(masks[c] | (std::uint64_t{1} << (v - 1)))) options[c].push_back(v);
    }
    std::vector<std::size_t> pick(k, 0);
    std::vector<Vertex> next(tuple);
    std::vector<std::uint64_t> next_masks(masks);
    while (true) {
      // advance odometer, last coordinate fastest; the all-stay choice is skipped
      std::size_t c = k;
      bool wrapped = true;
      while (c > 0) {
        --c;
        if (pick[c] + 1 < options[c].size()) {
          ++pick[c];
          wrapped = false;
          break;
        }
        pick[c] = 0;
      }
      if (wrapped) return;
      std::uint64_t out = outside;
      for (std::size_t j = 0; j < k; ++j) {
        next[j] = options[j][pick[j]];
        if (next[j] == tuple[j]) {
          next_masks[j] = masks[j];
          continue;
        }
        next_masks[j] = masks[j] | (std::uint64_t{1} << (next[j] - 1));
        if (!factors_[j].a_faces.count(next_masks[j])) out |= std::uint64_t{1} << j;
      }
      if (!k_faces_.count(out)) continue;
      chain_.push_back(id_of(next));
      record(next_masks);
      extend(next, next_masks, out);
      chain_.pop_back();
    }
  }

  std::unordered_set<std::uint64_t> k_faces_;
  std::vector<Factor> factors_;
  std::size_t budget_;
  std::size_t count_ = 0;
  std::vector<Vertex> chain_;
};

}  // namespace

Vertex TriangulatedModel::vertex_of(std::span<const Vertex> tuple) const {
  if (tuple.size() != radix_.size()) throw InputError("tuple has the wrong number of coordinates");
  std::size_t id = 0;
  for (std::size_t c = 0; c < tuple.size(); ++c) {
    if (tuple[c] < 1 || static_cast<std::size_t>(tuple[c]) > radix_[c]) throw InputError("tuple out of range");
    id += static_cast<std::size_t>(tuple[c] - 1) * stride_[c];
  }
  return static_cast<Vertex>(id + 1);
}

CochainComplex TriangulatedModel::total_cochains(const Coefficients& ring) const {
  return CochainComplex::unreduced(complex_, ring);
}

CochainComplex TriangulatedModel::smash_cochains(const Coefficients& ring) const {
  return CochainComplex::relative(complex_, ring, fat_wedge_, false);
}

TriangulatedModel build_model(const SimplicialComplex& k, const std::vector<SimplicialPair>& factors,
                              std::size_t budget) {
  if (static_cast<int>(factors.size()) != k.vertex_count())
    throw InputError("need one pair per vertex of K (" + std::to_string(k.vertex_count()) + "), got " +
                     std::to_string(factors.size()));
  if (k.vertex_count() > 62) throw InputError("too many vertices for a geometric model");
  double vertices = 1;
  for (const auto& p : factors) vertices *= p.x.vertex_count();
  if (vertices > 2.0e9) throw BudgetExceeded("model has too many vertices");

  ChainBuilder builder(k, factors, budget);
  builder.run();

  TriangulatedModel m;
  m.factors_ = factors;
  for (const auto& p : factors) m.radix_.push_back(static_cast<std::size_t>(p.x.vertex_count()));
  m.stride_ = builder.stride_;
  m.complex_ = std::make_shared<const SimplicialComplex>(
      SimplicialComplex::from_sorted_faces(static_cast<int>(vertices), std::move(builder.by_dim)));
  m.fat_wedge_.push_back({0});
  for (auto& row : builder.fat) m.fat_wedge_.push_back(std::move(row));
  return m;
}

TriangulatedModel build_model(const SimplicialComplex& k, const PairFamily& pairs, std::size_t budget) {
  if (!pairs.has_geometric_model()) throw InputError("cone pairs have no geometric model");
  if (pairs.size() != k.vertex_count()) throw InputError("pair family size does not match K");
  std::vector<SimplicialPair> factors;
  for (int i = 0; i < pairs.size(); ++i) factors.push_back(pairs.simplicial_pair(i));
  return build_model(k, factors, budget);
}

TriangulatedModel build_smash_model(const SimplicialComplex& k, const PairFamily& pairs, const IndexSet& subset,
                                    std::size_t budget) {
  return build_model(full_subcomplex(k, subset), pairs.restricted(subset), budget);
}

Cochain projection_pullback(const TriangulatedModel& source, const TriangulatedModel& target,
                            const std::vector<int>& positions, const Cochain& u) {
  if (static_cast<int>(positions.size()) != target.coordinates())
    throw InputError("projection needs one source coordinate per target coordinate");
  const SimplicialComplex& s = source.complex();
  const SimplicialComplex& t = target.complex();
  const int q = u.degree;
  Cochain out{q, std::vector<Integer>(s.count(q))};
  if (q < 0) return out;
  std::vector<Vertex> tuple(positions.size());
  std::vector<Vertex> image(static_cast<std::size_t>(q + 1));
  for (std::size_t i = 0; i < s.count(q); ++i) {
    auto face = s.face(q, i);
    bool degenerate = false;
    for (std::size_t j = 0; j < face.size() && !degenerate; ++j) {
      for (std::size_t c = 0; c < positions.size(); ++c) tuple[c] = source.coordinate(face[j], positions[c]);
      image[j] = target.vertex_of(tuple);
      degenerate = j > 0 && image[j] == image[j - 1];
    }
    if (degenerate) continue;
    auto idx = t.index_of(image);
    if (!idx) throw InvariantViolation("projected simplex missing from the target model");
    out.values[i] = u.values[*idx];
  }
  return out;
}

Cochain disk_sphere_image(const TriangulatedModel& model, const std::vector<int>& positions,
                          const std::vector<int>& disks, const SimplicialComplex& k_j, const Cochain& c,
                          const Coefficients& ring) {
  const std::size_t width = positions.size();
  if (disks.size() != width || k_j.vertex_count() != static_cast<int>(width))
    throw InputError("disk dimensions and K_J must match the chosen coordinates");
  int shift = 0;
  std::vector<int> sign_before(width, 0);  // Σ_{l<a} (n_l - 1)
  for (std::size_t a = 0; a < width; ++a) {
    sign_before[a] = shift;
    shift += disks[a] - 1;
  }
  const int degree = c.degree + 1 + shift;
  const SimplicialComplex& s = model.complex();
  Cochain out{degree, std::vector<Integer>(s.count(degree))};
  if (degree < 0) return out;

  std::vector<std::vector<Vertex>> walk(static_cast<std::size_t>(degree + 1), std::vector<Vertex>(width));
  Face sigma;
  for (std::size_t i = 0; i < s.count(degree); ++i) {
    auto face = s.face(degree, i);
    bool ok = true;
    for (std::size_t j = 0; j < face.size() && ok; ++j) {
      for (std::size_t a = 0; a < width; ++a) walk[j][a] = model.coordinate(face[j], positions[a]);
      ok = j == 0 || walk[j] != walk[j - 1];
    }
    if (!ok) continue;
    sigma.clear();
    int exponent = 0;
    std::size_t ptr = 0;
    for (std::size_t a = 0; a < width && ok; ++a) {
      Vertex start = walk[ptr][a];
      if (start != 1 && start != 2) {
        ok = false;
        break;
      }
      const int top = disks[a] + 1;
      const std::size_t len = static_cast<std::size_t>(top - start);
      if (ptr + len > static_cast<std::size_t>(degree)) {
        ok = false;
        break;
      }
      for (std::size_t j = 1; j <= len && ok; ++j) ok = walk[ptr + j][a] == start + static_cast<Vertex>(j);
      if (start == 1) {
        sigma.push_back(static_cast<Vertex>(a + 1));
        exponent += sign_before[a];
      }
      ptr += len;
    }
    if (!ok || ptr != static_cast<std::size_t>(degree)) continue;
    if (static_cast<int>(sigma.size()) != c.degree + 1) continue;
    auto idx = k_j.index_of(sigma);
    if (!idx || c.values[*idx] == 0) continue;
    out.values[i] = ring.normalize(exponent % 2 == 0 ? c.values[*idx] : Integer(-c.values[*idx]));
  }
  return out;
}

}  // namespace mac
