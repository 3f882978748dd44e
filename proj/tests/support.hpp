#pragma once

// Complex corpora shared by the test suites.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "macring/complex.hpp"

namespace support {

using mac::Face;
using mac::SimplicialComplex;

inline SimplicialComplex from_masks(int m, const std::vector<std::uint32_t>& masks) {
  std::vector<Face> facets;
  for (auto mask : masks) {
    Face f;
    for (int v = 1; v <= m; ++v)
      if (mask >> (v - 1) & 1u) f.push_back(v);
    facets.push_back(f);
  }
  return SimplicialComplex::from_facets(m, facets);
}

/// Every simplicial complex on exactly m labelled vertices (ghosts allowed),
/// one per isomorphism class.
inline std::vector<SimplicialComplex> complexes_on(int m) {
  const std::uint32_t subsets = (1u << m) - 1;  // nonempty subsets are 1..subsets
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  std::set<std::vector<std::uint32_t>> seen;
  std::vector<SimplicialComplex> out;
  for (std::uint64_t family = 0; family < (std::uint64_t{1} << subsets); ++family) {
    std::vector<std::uint32_t> faces;
    for (std::uint32_t s = 1; s <= subsets; ++s)
      if (family >> (s - 1) & 1u) faces.push_back(s);
    bool closed = true;
    for (auto s : faces) {
      for (std::uint32_t t = (s - 1) & s; t > 0 && closed; t = (t - 1) & s)
        closed = family >> (t - 1) & 1u;
      if (!closed) break;
    }
    if (!closed) continue;
    std::vector<std::uint32_t> best;
    for (const auto& p : perms) {
      std::vector<std::uint32_t> image;
      for (auto s : faces) {
        std::uint32_t t = 0;
        for (int v = 0; v < m; ++v)
          if (s >> v & 1u) t |= 1u << p[static_cast<std::size_t>(v)];
        image.push_back(t);
      }
      std::sort(image.begin(), image.end());
      if (best.empty() || image < best) best = image;
    }
    if (!seen.insert(best).second) continue;
    out.push_back(from_masks(m, faces));
  }
  return out;
}

/// All complexes on at most `max_vertices` vertices up to isomorphism.
inline std::vector<SimplicialComplex> small_complexes(int max_vertices) {
  std::vector<SimplicialComplex> out;
  for (int m = 0; m <= max_vertices; ++m) {
    auto part = complexes_on(m);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

/// The named part of the corpus beyond the small complexes.
inline std::vector<SimplicialComplex> named_complexes() {
  using namespace mac::complexes;
  return {cycle(4), cycle(5), cycle(6), rp2(), points(2), points(3), simplex(1), simplex(2), simplex(3),
          simplex(4), simplex(5)};
}

/// A random complex on m vertices generated by up to `facets` random faces.
inline SimplicialComplex random_complex(std::mt19937& gen, int m, int facets) {
  std::vector<std::uint32_t> masks;
  std::uniform_int_distribution<std::uint32_t> pick(1, (1u << m) - 1);
  std::uniform_int_distribution<int> count(0, facets);
  for (int i = count(gen); i > 0; --i) masks.push_back(pick(gen));
  return from_masks(m, masks);
}

}  // namespace support
