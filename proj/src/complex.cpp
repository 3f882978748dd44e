#include "macring/complex.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "macring/errors.hpp"

namespace mac {

// ---------------------------------------------------------------- IndexSet

IndexSet::IndexSet(std::vector<int> members, int ambient) : members_(std::move(members)), ambient_(ambient) {
  if (ambient < 0 || ambient > 62) throw InputError("index set ambient size out of range");
  std::sort(members_.begin(), members_.end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    int v = members_[i];
    if (v < 1 || v > ambient) throw InputError("index " + std::to_string(v) + " outside [1," + std::to_string(ambient) + "]");
    if (i > 0 && members_[i - 1] == v) throw InputError("duplicate index " + std::to_string(v));
    mask_ |= std::uint64_t{1} << v;
  }
}

IndexSet IndexSet::full(int ambient) {
  std::vector<int> m(static_cast<std::size_t>(ambient));
  std::iota(m.begin(), m.end(), 1);
  return IndexSet(std::move(m), ambient);
}

IndexSet IndexSet::from_mask(std::uint64_t mask, int ambient) {
  std::vector<int> m;
  for (int v = 1; v <= ambient; ++v)
    if ((mask >> v) & 1u) m.push_back(v);
  return IndexSet(std::move(m), ambient);
}

std::vector<IndexSet> IndexSet::all_subsets(int ambient) {
  std::vector<IndexSet> out;
  out.reserve(std::size_t{1} << ambient);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << ambient); ++bits)
    out.push_back(from_mask(bits << 1, ambient));
  std::sort(out.begin(), out.end());
  return out;
}

int IndexSet::position(int v) const {
  if (!contains(v)) return -1;
  std::uint64_t below = mask_ & ((std::uint64_t{1} << v) - 1);
  return std::popcount(below);
}

IndexSet IndexSet::united(const IndexSet& other) const { return from_mask(mask_ | other.mask_, ambient_); }

IndexSet IndexSet::intersected(const IndexSet& other) const { return from_mask(mask_ & other.mask_, ambient_); }

std::string IndexSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(members_[i]);
  }
  return s + "}";
}

bool operator<(const IndexSet& a, const IndexSet& b) {
  if (a.members_.size() != b.members_.size()) return a.members_.size() < b.members_.size();
  return a.members_ < b.members_;
}

// ------------------------------------------------------ SimplicialComplex

namespace {

std::uint64_t hash_face(std::span<const Vertex> f) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ f.size();
  for (Vertex v : f) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
  }
  return h ^ (h >> 33);
}

}  // namespace

void SimplicialComplex::DimTable::build_index() {
  std::size_t cap = std::bit_ceil(std::max<std::size_t>(2 * count, 2));
  slots.assign(cap, 0);
  const std::size_t w = static_cast<std::size_t>(width);
  for (std::size_t i = 0; i < count; ++i) {
    std::span<const Vertex> f(flat.data() + i * w, w);
    std::size_t pos = hash_face(f) & (cap - 1);
    while (slots[pos] != 0) pos = (pos + 1) & (cap - 1);
    slots[pos] = static_cast<std::uint32_t>(i + 1);
  }
}

std::optional<std::size_t> SimplicialComplex::DimTable::find(std::span<const Vertex> f) const {
  if (count == 0) return std::nullopt;
  const std::size_t cap = slots.size();
  const std::size_t w = static_cast<std::size_t>(width);
  std::size_t pos = hash_face(f) & (cap - 1);
  while (slots[pos] != 0) {
    std::size_t idx = slots[pos] - 1;
    if (std::equal(f.begin(), f.end(), flat.begin() + static_cast<std::ptrdiff_t>(idx * w))) return idx;
    pos = (pos + 1) & (cap - 1);
  }
  return std::nullopt;
}

SimplicialComplex::SimplicialComplex() {
  tables_.resize(1);
  tables_[0].count = 1;
  tables_[0].build_index();
}

SimplicialComplex SimplicialComplex::from_facets(int vertex_count, std::vector<Face> facets) {
  if (vertex_count < 0) throw InputError("negative vertex count");
  std::vector<std::vector<Face>> by_dim;
  for (Face& f : facets) {
    std::sort(f.begin(), f.end());
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] < 1 || f[i] > vertex_count)
        throw InputError("vertex " + std::to_string(f[i]) + " out of range 1.." + std::to_string(vertex_count));
      if (i > 0 && f[i] == f[i - 1]) throw InputError("duplicate vertex " + std::to_string(f[i]) + " in a facet");
    }
    if (f.size() > 24) throw InputError("facet too large");
    const std::uint32_t n = static_cast<std::uint32_t>(f.size());
    if (by_dim.size() < n) by_dim.resize(n);
    for (std::uint32_t bits = 1; bits < (std::uint32_t{1} << n); ++bits) {
      Face sub;
      for (std::uint32_t k = 0; k < n; ++k)
        if ((bits >> k) & 1u) sub.push_back(f[k]);
      by_dim[sub.size() - 1].push_back(std::move(sub));
    }
  }
  std::vector<std::vector<Vertex>> flat(by_dim.size());
  for (std::size_t d = 0; d < by_dim.size(); ++d) {
    auto& list = by_dim[d];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (const Face& f : list) flat[d].insert(flat[d].end(), f.begin(), f.end());
  }
  return from_sorted_faces(vertex_count, std::move(flat));
}

SimplicialComplex SimplicialComplex::from_sorted_faces(int vertex_count, std::vector<std::vector<Vertex>> by_dim) {
  while (!by_dim.empty() && by_dim.back().empty()) by_dim.pop_back();
  SimplicialComplex k;
  k.vertex_count_ = vertex_count;
  k.tables_.resize(by_dim.size() + 1);
  for (std::size_t d = 0; d < by_dim.size(); ++d) {
    DimTable& t = k.tables_[d + 1];
    t.width = static_cast<int>(d + 1);
    t.count = by_dim[d].size() / (d + 1);
    if (t.count >= 0xffffffffu) throw BudgetExceeded("too many faces in one dimension");
    t.flat = std::move(by_dim[d]);
    t.build_index();
  }
  return k;
}

std::size_t SimplicialComplex::count(int dim) const {
  if (dim < -1 || dim > dimension()) return 0;
  return tables_[static_cast<std::size_t>(dim + 1)].count;
}

std::size_t SimplicialComplex::face_count() const {
  std::size_t n = 0;
  for (const DimTable& t : tables_) n += t.count;
  return n;
}

std::span<const Vertex> SimplicialComplex::face(int dim, std::size_t index) const {
  const DimTable& t = tables_[static_cast<std::size_t>(dim + 1)];
  const std::size_t w = static_cast<std::size_t>(t.width);
  return {t.flat.data() + index * w, w};
}

Face SimplicialComplex::face_vector(int dim, std::size_t index) const {
  auto f = face(dim, index);
  return Face(f.begin(), f.end());
}

std::optional<std::size_t> SimplicialComplex::index_of(std::span<const Vertex> f) const {
  const std::size_t slot = f.size();
  if (slot >= tables_.size()) return std::nullopt;
  if (slot == 0) return 0;
  return tables_[slot].find(f);
}

std::vector<Face> SimplicialComplex::facets() const {
  std::vector<Face> out;
  const int top = dimension();
  for (int d = -1; d <= top; ++d) {
    std::vector<char> covered(count(d), 0);
    if (d < top) {
      Face sub;
      for (std::size_t i = 0; i < count(d + 1); ++i) {
        auto f = face(d + 1, i);
        for (std::size_t skip = 0; skip < f.size(); ++skip) {
          sub.clear();
          for (std::size_t k = 0; k < f.size(); ++k)
            if (k != skip) sub.push_back(f[k]);
          covered[*index_of(sub)] = 1;
        }
      }
    }
    for (std::size_t i = 0; i < count(d); ++i)
      if (!covered[i]) out.push_back(face_vector(d, i));
  }
  return out;
}

std::vector<Face> SimplicialComplex::faces() const {
  std::vector<Face> out;
  out.reserve(face_count());
  for (int d = -1; d <= dimension(); ++d)
    for (std::size_t i = 0; i < count(d); ++i) out.push_back(face_vector(d, i));
  return out;
}

std::string SimplicialComplex::to_string() const {
  std::string s = "m=" + std::to_string(vertex_count_) + "; facets=";
  bool first = true;
  for (const Face& f : facets()) {
    if (!first) s += ',';
    first = false;
    s += '{';
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(f[i]);
    }
    s += '}';
  }
  return s;
}

bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.vertex_count_ != b.vertex_count_ || a.tables_.size() != b.tables_.size()) return false;
  for (std::size_t i = 0; i < a.tables_.size(); ++i)
    if (a.tables_[i].count != b.tables_[i].count || a.tables_[i].flat != b.tables_[i].flat) return false;
  return true;
}

// ---------------------------------------------------------- SimplicialMap

SimplicialMap::SimplicialMap(SimplicialComplex source, SimplicialComplex target, std::vector<Vertex> vertex_image)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(vertex_image)) {
  if (image_.size() != static_cast<std::size_t>(source_.vertex_count()))
    throw InputError("vertex map has wrong length");
  for (Vertex w : image_)
    if (w < 1 || w > target_.vertex_count()) throw InputError("vertex map leaves the target vertex set");
  for (int d = 0; d <= source_.dimension(); ++d)
    for (std::size_t i = 0; i < source_.count(d); ++i) {
      Face img;
      for (Vertex v : source_.face(d, i)) img.push_back((*this)(v));
      std::sort(img.begin(), img.end());
      img.erase(std::unique(img.begin(), img.end()), img.end());
      if (!target_.contains(img)) throw InvariantViolation("vertex map is not simplicial");
    }
}

std::pair<Face, int> SimplicialMap::oriented_image(std::span<const Vertex> f) const {
  Face img;
  img.reserve(f.size());
  for (Vertex v : f) img.push_back((*this)(v));
  int sign = 1;
  for (std::size_t i = 1; i < img.size(); ++i)
    for (std::size_t j = i; j > 0 && img[j - 1] >= img[j]; --j) {
      if (img[j - 1] == img[j]) return {Face{}, 0};
      std::swap(img[j - 1], img[j]);
      sign = -sign;
    }
  return {std::move(img), sign};
}

// ----------------------------------------------------------------- parsing

namespace {

SimplicialComplex parse_json_complex(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("complex JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("m") || !doc["m"].is_number_integer())
    throw InputError("complex JSON needs an integer \"m\"");
  std::vector<Face> facets;
  if (doc.contains("facets")) {
    if (!doc["facets"].is_array()) throw InputError("\"facets\" must be an array");
    for (const auto& f : doc["facets"]) {
      if (!f.is_array()) throw InputError("each facet must be an array");
      Face face;
      for (const auto& v : f) {
        if (!v.is_number_integer()) throw InputError("facet entries must be integers");
        face.push_back(v.get<int>());
      }
      facets.push_back(std::move(face));
    }
  }
  return SimplicialComplex::from_facets(doc["m"].get<int>(), std::move(facets));
}

class TextCursor {
 public:
  explicit TextCursor(std::string_view s) : s_(s) {}

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= s_.size();
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void expect_word(std::string_view w) {
    skip_space();
    if (s_.substr(pos_, w.size()) != w) fail("expected '" + std::string(w) + "'");
    pos_ += w.size();
  }
  int integer() {
    skip_space();
    int value = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), value);
    if (ec != std::errc()) fail("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return value;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("complex text, offset " + std::to_string(pos_) + ": " + what);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

SimplicialComplex parse_complex(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json_complex(text);

  TextCursor in(text);
  in.expect_word("m");
  in.expect('=');
  const int m = in.integer();
  std::vector<Face> facets;
  if (in.accept(';')) {
    if (!in.at_end()) {
      in.expect_word("facets");
      in.expect('=');
      while (in.accept('{')) {
        Face f;
        if (!in.accept('}')) {
          do f.push_back(in.integer());
          while (in.accept(','));
          in.expect('}');
        }
        facets.push_back(std::move(f));
        if (!in.accept(',')) break;
      }
      in.accept(';');
    }
  }
  if (!in.at_end()) in.fail("trailing input");
  return SimplicialComplex::from_facets(m, std::move(facets));
}

// ------------------------------------------------- derived constructions

SimplicialComplex full_subcomplex(const SimplicialComplex& k, const IndexSet& subset) {
  if (subset.ambient() != k.vertex_count()) throw InputError("index set ambient size differs from the complex");
  std::vector<std::vector<Vertex>> by_dim;
  for (int d = 0; d <= k.dimension(); ++d) {
    std::vector<Vertex> flat;
    for (std::size_t i = 0; i < k.count(d); ++i) {
      auto f = k.face(d, i);
      if (!std::all_of(f.begin(), f.end(), [&](Vertex v) { return subset.contains(v); })) continue;
      for (Vertex v : f) flat.push_back(subset.position(v) + 1);
    }
    if (flat.empty()) break;
    by_dim.push_back(std::move(flat));
  }
  return SimplicialComplex::from_sorted_faces(static_cast<int>(subset.size()), std::move(by_dim));
}

SimplicialComplex join(const SimplicialComplex& k1, const SimplicialComplex& k2) {
  const int n1 = k1.vertex_count();
  std::vector<Face> facets;
  for (const Face& a : k1.facets())
    for (const Face& b : k2.facets()) {
      Face f = a;
      for (Vertex v : b) f.push_back(v + n1);
      facets.push_back(std::move(f));
    }
  return SimplicialComplex::from_facets(n1 + k2.vertex_count(), std::move(facets));
}

SimplicialMap canonical_join_inclusion(const SimplicialComplex& k, const IndexSet& j, const IndexSet& l) {
  if (!j.disjoint(l)) throw InputError("join inclusion needs disjoint index sets, got " + j.to_string() + " and " + l.to_string());
  const IndexSet i = j.united(l);
  std::vector<Vertex> image;
  for (int v : i.members())
    image.push_back(j.contains(v) ? j.position(v) + 1 : static_cast<int>(j.size()) + l.position(v) + 1);
  return SimplicialMap(full_subcomplex(k, i), join(full_subcomplex(k, j), full_subcomplex(k, l)), std::move(image));
}

int shuffle_sign(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::size_t inversions = 0;
  std::size_t ia = 0;
  // for each b element, count a elements greater than it
  for (Vertex y : b) {
    while (ia < a.size() && a[ia] < y) ++ia;
    inversions += a.size() - ia;
  }
  return (inversions & 1u) ? -1 : 1;
}

// --------------------------------------------------------- named complexes

namespace complexes {

SimplicialComplex points(int n) {
  std::vector<Face> f;
  for (int v = 1; v <= n; ++v) f.push_back({v});
  return SimplicialComplex::from_facets(n, std::move(f));
}

SimplicialComplex simplex(int n) {
  Face f(static_cast<std::size_t>(n));
  std::iota(f.begin(), f.end(), 1);
  return SimplicialComplex::from_facets(n, {f});
}

SimplicialComplex simplex_boundary(int n) {
  std::vector<Face> facets;
  for (int skip = 1; skip <= n; ++skip) {
    Face f;
    for (int v = 1; v <= n; ++v)
      if (v != skip) f.push_back(v);
    facets.push_back(std::move(f));
  }
  return SimplicialComplex::from_facets(n, std::move(facets));
}

SimplicialComplex cycle(int n) {
  if (n < 3) throw InputError("a cycle needs at least 3 vertices");
  std::vector<Face> facets;
  for (int v = 1; v <= n; ++v) facets.push_back({v, v % n + 1});
  return SimplicialComplex::from_facets(n, std::move(facets));
}

SimplicialComplex rp2() {
  return SimplicialComplex::from_facets(6, {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                                            {2, 3, 5}, {2, 4, 5}, {2, 4, 6}, {3, 4, 6}, {3, 5, 6}});
}

SimplicialComplex torus() {
  std::vector<Face> facets;
  for (int i = 0; i < 7; ++i) {
    facets.push_back({i + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1});
    facets.push_back({i + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1});
  }
  return SimplicialComplex::from_facets(7, std::move(facets));
}

}  // namespace complexes

}  // namespace mac
