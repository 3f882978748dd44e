#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <memory>

#include "macring/decomposition.hpp"
#include "macring/errors.hpp"

using namespace mac;

namespace {

const auto Z = Coefficients::integers();

// Σ_I rank H̃^q(K_I) placed in degree q + 1 + |I|(n - 1), read off full
// coboundary matrices through Smith normal form.
std::map<int, std::size_t> hochster_ranks(const SimplicialComplex& k, int n) {
  std::map<int, std::size_t> out;
  for (const IndexSet& subset : IndexSet::all_subsets(k.vertex_count())) {
    auto k_i = std::make_shared<const SimplicialComplex>(full_subcomplex(k, subset));
    CochainComplex cc = CochainComplex::reduced(k_i, Z);
    auto rank_of = [&](int d) -> std::size_t {
      if (d < cc.min_degree() || d >= cc.max_degree()) return 0;
      return smith_normal_form(cc.coboundary_matrix(d)).rank;
    };
    for (int q = -1; q <= k_i->dimension(); ++q) {
      std::size_t b = cc.rank(q) - rank_of(q) - rank_of(q - 1);
      if (b > 0) out[q + 1 + (n - 1) * static_cast<int>(subset.size())] += b;
    }
  }
  return out;
}

std::map<int, DegreeGroup> model_groups(const SimplicialComplex& k, const PairFamily& pairs,
                                        const Coefficients& ring) {
  TriangulatedModel model = build_model(k, pairs);
  CohomologyGroups g(model.total_cochains(ring));
  std::map<int, DegreeGroup> out;
  for (int n = 0; n <= model.complex().dimension(); ++n) {
    DegreeGroup dg{g.betti(n), g.torsion(n)};
    if (dg.free_rank > 0 || !dg.torsion.empty()) out[n] = dg;
  }
  return out;
}

SimplicialComplex ghost_extended_two_points() { return SimplicialComplex::from_facets(3, {{1}, {2}}); }

}  // namespace

TEST_CASE("two points with disk-sphere pairs give S^3", "[decomposition]") {
  auto k = complexes::points(2);
  DecompositionModule d = decompose(k, PairFamily::disk_sphere(2, 2), Z);
  REQUIRE(d.generators().size() == 2);
  CHECK(d.generators()[0].degree == 0);
  CHECK(d.generators()[1].degree == 3);
  CHECK(poincare_series(d) == std::map<int, std::size_t>{{0, 1}, {3, 1}});
  const Summand& top = d.summands()[d.generators()[1].summand];
  CHECK(top.index == IndexSet::full(2));
  CHECK(top.internal_degree == 0);
  CHECK(top.fiber_degree == 2);
}

TEST_CASE("a full simplex gives a contractible space", "[decomposition]") {
  for (int m = 1; m <= 5; ++m)
    for (int n : {1, 2}) {
      DecompositionModule d = decompose(complexes::simplex(m), PairFamily::disk_sphere(m, n), Z);
      CHECK(d.generators().size() == 1);
      CHECK(poincare_series(d) == std::map<int, std::size_t>{{0, 1}});
    }
}

TEST_CASE("the boundary of a square gives S^3 x S^3", "[decomposition]") {
  auto k = complexes::cycle(4);
  auto pairs = PairFamily::disk_sphere(4, 2);
  DecompositionModule d = decompose(k, pairs, Z);
  CHECK(poincare_series(d) == std::map<int, std::size_t>{{0, 1}, {3, 2}, {6, 1}});
  CHECK(degree_groups(d) == model_groups(k, pairs, Z));
  CHECK(d.max_degree() == 6);
  CHECK(d.generators_in_degree(3).size() == 2);
  CHECK(d.find_summand(IndexSet({1, 3}, 4), 0, {0, 0}).has_value());
  CHECK_FALSE(d.find_summand(IndexSet({1, 2}, 4), 0, {0, 0}).has_value());
}

TEST_CASE("the pentagon matches the Hochster count", "[decomposition]") {
  auto k = complexes::cycle(5);
  DecompositionModule d = decompose(k, PairFamily::disk_sphere(5, 2), Z);
  std::map<int, std::size_t> expected{{0, 1}, {3, 5}, {4, 5}, {7, 1}};
  CHECK(poincare_series(d) == expected);
  CHECK(hochster_ranks(k, 2) == expected);
}

TEST_CASE("Hochster count on named complexes", "[decomposition]") {
  for (const auto& k : {complexes::cycle(6), complexes::rp2(), complexes::points(3), complexes::torus()}) {
    DecompositionModule d = decompose(k, PairFamily::disk_sphere(k.vertex_count(), 1), Z);
    CHECK(poincare_series(d) == hochster_ranks(k, 1));
  }
}

TEST_CASE("torsion of RP^2 shows up in the splitting", "[decomposition]") {
  auto k = complexes::rp2();
  auto pairs = PairFamily::disk_sphere(6, 1);
  DecompositionModule d = decompose(k, pairs, Z);
  auto groups = degree_groups(d);
  bool has_two_torsion = false;
  for (const auto& [n, g] : groups)
    for (const auto& t : g.torsion) has_two_torsion |= t == 2;
  CHECK(has_two_torsion);
  CHECK(groups == model_groups(k, pairs, Z));

  DecompositionModule d2 = decompose(k, pairs, Coefficients::mod(2));
  for (const auto& [n, g] : degree_groups(d2)) CHECK(g.torsion.empty());
}

TEST_CASE("a ghost vertex contributes a sphere factor", "[decomposition]") {
  auto k = ghost_extended_two_points();
  DecompositionModule d = decompose(k, PairFamily::disk_sphere(3, 2), Z);
  // S^3 x S^1
  CHECK(poincare_series(d) == std::map<int, std::size_t>{{0, 1}, {1, 1}, {3, 1}, {4, 1}});
  CHECK(degree_groups(d) == model_groups(k, PairFamily::disk_sphere(3, 2), Z));
}

TEST_CASE("cone pairs on sphere rings match disk-sphere pairs additively", "[decomposition]") {
  auto k = complexes::cycle(5);
  auto cone = PairFamily::cone(std::vector<GradedRing>(5, GradedRing::sphere(1)));
  CHECK(poincare_series(decompose(k, cone, Z)) == poincare_series(decompose(k, PairFamily::disk_sphere(5, 2), Z)));
}

TEST_CASE("simplicial pairs: a wedge of circles", "[decomposition]") {
  auto circle = complexes::simplex_boundary(3);
  auto point = SimplicialComplex::from_facets(3, {{1}});
  auto pairs = PairFamily::simplicial({SimplicialPair::make(circle, point), SimplicialPair::make(circle, point)});
  DecompositionModule d = decompose(complexes::points(2), pairs, Z);
  CHECK(poincare_series(d) == std::map<int, std::size_t>{{0, 1}, {1, 2}});
  d = decompose(complexes::simplex(2), pairs, Z);
  CHECK(poincare_series(d) == std::map<int, std::size_t>{{0, 1}, {1, 2}, {2, 1}});
}

TEST_CASE("regrading shifts summands by the suspension vector", "[decomposition]") {
  auto k = complexes::cycle(4);
  DecompositionModule d1 = decompose(k, PairFamily::disk_sphere(4, 1), Z);
  DecompositionModule d2 = decompose(k, PairFamily::disk_sphere(4, 2), Z);

  DecompositionModule same = regrade(d1, {0, 0, 0, 0});
  CHECK(poincare_series(same) == poincare_series(d1));

  DecompositionModule up = regrade(d1, {1, 1, 1, 1});
  CHECK(poincare_series(up) == poincare_series(d2));
  CHECK(up.pairs().suspension() == std::vector<int>{1, 1, 1, 1});

  DecompositionModule twice = regrade(regrade(d1, {1, 0, 1, 0}), {0, 1, 0, 1});
  CHECK(poincare_series(twice) == poincare_series(d2));

  DecompositionModule one = regrade(d1, {1, 0, 0, 0});
  for (std::size_t g = 0; g < d1.generators().size(); ++g) {
    const auto& s = d1.summands()[d1.generators()[g].summand];
    int shift = s.index.contains(1) ? 1 : 0;
    CHECK(one.generators()[g].degree == d1.generators()[g].degree + shift);
  }
}

TEST_CASE("regrading a simplicial family marks its geometry stale", "[decomposition]") {
  auto pairs = PairFamily::simplicial({SimplicialPair::disk(1), SimplicialPair::disk(1)});
  DecompositionModule d = decompose(complexes::points(2), pairs, Z);
  CHECK_FALSE(d.geometry_stale());
  CHECK(regrade(d, {1, 1}).geometry_stale());
}

TEST_CASE("decomposition input errors", "[decomposition]") {
  CHECK_THROWS_AS(decompose(complexes::points(3), PairFamily::disk_sphere(2, 2), Z), InputError);
  CHECK_THROWS_AS(decompose(complexes::points(25), PairFamily::disk_sphere(25, 2), Z), InputError);
  DecompositionModule d = decompose(complexes::points(2), PairFamily::disk_sphere(2, 2), Z);
  CHECK_THROWS_AS(regrade(d, {1}), InputError);
}

TEST_CASE("pair family descriptors", "[pairs]") {
  PairFamily p = parse_pair_family("disk-sphere:2", 3);
  CHECK(p.kind() == PairFamily::Kind::DiskSphere);
  CHECK(p.disk_dimension(2) == 2);
  CHECK(p.is_suspension_pair());

  p = parse_pair_family("disk-sphere:[1,2,1] suspend:[0,1,2]", 3);
  CHECK(p.disk_dimension(0) == 1);
  CHECK(p.disk_dimension(1) == 3);
  CHECK(p.disk_dimension(2) == 3);
  CHECK_FALSE(p.is_suspension_pair());

  p = parse_pair_family("cone:[sphere:0,sphere:1]", 2);
  CHECK(p.kind() == PairFamily::Kind::Cone);
  CHECK(p.fiber_ring(0) == GradedRing::sphere(0));
  CHECK_FALSE(p.has_geometric_model());

  CHECK_THROWS_AS(parse_pair_family("disk-sphere:[1,2]", 3), InputError);
  CHECK_THROWS_AS(parse_pair_family("disk-sphere:0", 2), InputError);
  CHECK_THROWS_AS(parse_pair_family("torus", 2), InputError);
}

TEST_CASE("graded ring files", "[pairs]") {
  GradedRing r = GradedRing::parse(
      "# two spheres wedged\n"
      "gen a 2\n"
      "gen b 2\n"
      "gen c 4\n"
      "a*a = 1 c\n"
      "b*b = -1 c\n");
  REQUIRE(r.size() == 3);
  CHECK(r.degree(2) == 4);
  CHECK(r.product(0, 0) == std::vector<Integer>{0, 0, 1});
  CHECK(r.product(1, 1) == std::vector<Integer>{0, 0, -1});
  CHECK(r.product(0, 1) == std::vector<Integer>{0, 0, 0});

  GradedRing odd = GradedRing::parse("gen x 1\ngen y 1\ngen z 2\nx*y = 1 z\n");
  CHECK(odd.product(1, 0) == std::vector<Integer>{0, 0, -1});

  CHECK_THROWS_AS(GradedRing::parse("gen a 1\ngen b 1\na*a = 1 b\n"), InputError);
  CHECK_THROWS_AS(GradedRing::parse("gen a 1\na*q = 0\n"), InputError);

  GradedRing s0 = GradedRing::sphere(0);
  CHECK(s0.product(0, 0) == std::vector<Integer>{1});
  CHECK(GradedRing::sphere(0).shifted(1) == GradedRing::sphere(1));
}
