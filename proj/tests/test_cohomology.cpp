#include <catch2/catch_amalgamated.hpp>

#include <memory>

#include "macring/cohomology.hpp"
#include "macring/errors.hpp"

using namespace mac;

namespace {

std::shared_ptr<const SimplicialComplex> share(const SimplicialComplex& k) {
  return std::make_shared<const SimplicialComplex>(k);
}

// Reference values straight from full coboundary matrices: free rank from
// ranks, torsion from invariant factors.
struct Reference {
  std::size_t free_rank;
  std::vector<Integer> torsion;
};

Reference reference(const CochainComplex& cc, int q) {
  auto rank_of = [&](int d) -> std::size_t {
    if (d < cc.min_degree() || d >= cc.max_degree()) return 0;
    IntMatrix m = cc.coboundary_matrix(d);
    if (cc.ring().is_field()) return rank_mod_p(m, cc.ring().modulus());
    return smith_normal_form(m).rank;
  };
  Reference r{cc.rank(q) - rank_of(q) - rank_of(q - 1), {}};
  if (!cc.ring().is_field() && q - 1 >= cc.min_degree())
    for (const auto& d : smith_normal_form(cc.coboundary_matrix(q - 1)).diagonal)
      if (d != 1) r.torsion.push_back(d);
  return r;
}

}  // namespace

TEST_CASE("reduced cohomology of small complexes", "[cohomology]") {
  auto z = Coefficients::integers();
  CHECK(reduced_cohomology(complexes::points(2), z, 0).free_rank() == 1);
  CHECK(reduced_cohomology(complexes::cycle(3), z, 1).free_rank() == 1);
  CHECK(reduced_cohomology(complexes::cycle(3), z, 0).free_rank() == 0);
  CHECK(reduced_cohomology(SimplicialComplex(), z, -1).free_rank() == 1);
  CHECK(reduced_cohomology(complexes::points(1), z, -1).free_rank() == 0);

  CohomologyBasis rp2 = reduced_cohomology(complexes::rp2(), z, 2);
  CHECK(rp2.free_rank() == 0);
  CHECK(rp2.torsion() == std::vector<Integer>{2});
  CHECK(reduced_cohomology(complexes::rp2(), z, 1).size() == 0);
}

TEST_CASE("generators are cocycles and express themselves", "[cohomology]") {
  for (auto ring : {Coefficients::integers(), Coefficients::mod(2), Coefficients::mod(3)}) {
    for (const auto& k : {complexes::rp2(), complexes::torus(), complexes::cycle(5), complexes::points(3)}) {
      auto cc = CochainComplex::reduced(share(k), ring);
      for (int q = -1; q <= k.dimension(); ++q) {
        CohomologyBasis b = cohomology_basis(cc, q);
        Reference ref = reference(cc, q);
        CHECK(b.free_rank() == ref.free_rank);
        CHECK(b.torsion() == ref.torsion);
        for (std::size_t g = 0; g < b.size(); ++g) {
          REQUIRE(cc.is_cocycle(b.generators()[g]));
          std::vector<Integer> expected(b.size());
          expected[g] = 1;
          CHECK(b.express(b.generators()[g]) == expected);
        }
      }
    }
  }
}

TEST_CASE("expressing a cocycle ignores coboundaries", "[cohomology]") {
  auto z = Coefficients::integers();
  auto cc = CochainComplex::reduced(share(complexes::torus()), z);
  CohomologyBasis h1 = cohomology_basis(cc, 1);
  REQUIRE(h1.size() == 2);
  Cochain zero0 = cc.zero(0);
  zero0.values[3] = 5;
  Cochain shifted = cc.coboundary(zero0);
  for (std::size_t i = 0; i < shifted.values.size(); ++i) shifted.values[i] += 2 * h1.generators()[1].values[i];
  CHECK(h1.express(shifted) == std::vector<Integer>{0, 2});
  CHECK(h1.is_coboundary(cc.coboundary(zero0)));
  CHECK_THROWS_AS(h1.express(Cochain{1, std::vector<Integer>(21, 1)}), InputError);
}

TEST_CASE("cup products on the projective plane and the torus", "[cohomology]") {
  auto f2 = Coefficients::mod(2);
  SimplicialComplex rp2 = complexes::rp2();
  CohomologyBasis a = reduced_cohomology(rp2, f2, 1);
  CohomologyBasis top = reduced_cohomology(rp2, f2, 2);
  REQUIRE(a.size() == 1);
  REQUIRE(top.size() == 1);
  Cochain u = a.generators()[0];
  CHECK(top.express(cup_product(rp2, u, u, f2)) == std::vector<Integer>{1});

  auto z = Coefficients::integers();
  SimplicialComplex t = complexes::torus();
  CohomologyBasis h1 = reduced_cohomology(t, z, 1);
  CohomologyBasis h2 = reduced_cohomology(t, z, 2);
  REQUIRE(h1.size() == 2);
  REQUIRE(h2.size() == 1);
  const Cochain& x = h1.generators()[0];
  const Cochain& y = h1.generators()[1];
  auto xy = h2.express(cup_product(t, x, y, z));
  auto yx = h2.express(cup_product(t, y, x, z));
  CHECK((xy[0] == 1 || xy[0] == -1));
  CHECK(yx[0] == -xy[0]);
  CHECK(h2.express(cup_product(t, x, x, z)) == std::vector<Integer>{0});
}

TEST_CASE("cup product of a zero cochain is zero", "[cohomology]") {
  SimplicialComplex t = complexes::torus();
  auto z = Coefficients::integers();
  auto cc = CochainComplex::reduced(share(t), z);
  CohomologyBasis h1 = cohomology_basis(cc, 1);
  CHECK(cup_product(t, cc.zero(1), h1.generators()[0], z).is_zero());
  CHECK(cup_product(t, h1.generators()[0], cc.zero(2), z).values.empty());
}

TEST_CASE("pullbacks", "[cohomology]") {
  auto z = Coefficients::integers();
  SimplicialComplex c4 = complexes::cycle(4);
  SimplicialComplex c5 = complexes::cycle(5);

  SimplicialMap id(c4, c4, {1, 2, 3, 4});
  CohomologyBasis h1 = reduced_cohomology(c4, z, 1);
  CHECK(induced_map(id, h1.generators()[0], h1) == std::vector<Integer>{1});

  SimplicialMap constant(c4, c4, {2, 2, 2, 2});
  CHECK(induced_map(constant, h1.generators()[0], h1) == std::vector<Integer>{0});

  SimplicialMap f = canonical_join_inclusion(c5, IndexSet({1, 3}, 5), IndexSet({2, 4}, 5));
  CohomologyBasis target = reduced_cohomology(f.target(), z, 1);
  CohomologyBasis source = reduced_cohomology(f.source(), z, 1);
  REQUIRE(target.size() == 1);
  CHECK(source.size() == 0);
  CHECK(source.is_coboundary(pullback(f, target.generators()[0], z)));
}

TEST_CASE("relative cochains", "[cohomology]") {
  auto z = Coefficients::integers();
  auto edge = share(complexes::simplex(2));
  SimplicialComplex ends = complexes::points(2);
  auto rel = quotient_cohomology(edge, ends, z);
  CHECK(rel.rank(0) == 0);
  CHECK(rel.rank(1) == 1);
  CHECK(CohomologyGroups(rel).betti(1) == 1);

  auto all = quotient_cohomology(edge, complexes::simplex(2), z);
  CHECK(all.rank(0) == 0);
  CHECK(all.rank(1) == 0);

  auto c5 = share(complexes::cycle(5));
  auto none = quotient_cohomology(c5, SimplicialComplex::from_facets(5, {}), z);
  CohomologyGroups g(none);
  CHECK(g.betti(0) == 0);
  CHECK(g.betti(1) == 1);

  CHECK_THROWS_AS(quotient_cohomology(edge, complexes::points(3), z), InputError);
}

TEST_CASE("whole-complex groups agree with matrix references", "[cohomology]") {
  for (auto ring : {Coefficients::integers(), Coefficients::mod(2), Coefficients::mod(3)}) {
    for (const auto& k : {complexes::rp2(), complexes::torus(), complexes::simplex_boundary(4), complexes::points(4)}) {
      for (bool augmented : {true, false}) {
        auto cc = augmented ? CochainComplex::reduced(share(k), ring) : CochainComplex::unreduced(share(k), ring);
        CohomologyGroups g(cc);
        long long euler_betti = 0, euler_faces = 0;
        for (int q = cc.min_degree(); q <= cc.max_degree(); ++q) {
          Reference ref = reference(cc, q);
          CHECK(g.betti(q) == ref.free_rank);
          CHECK(g.torsion(q) == ref.torsion);
          euler_betti += (q % 2 == 0 ? 1 : -1) * static_cast<long long>(g.betti(q));
          euler_faces += (q % 2 == 0 ? 1 : -1) * static_cast<long long>(cc.rank(q));
        }
        CHECK(euler_betti == euler_faces);
      }
    }
  }
}

TEST_CASE("coordinates against a chosen basis", "[cohomology]") {
  auto z = Coefficients::integers();
  auto cc = CochainComplex::reduced(share(complexes::rp2()), z);
  CohomologyGroups g(cc);
  CohomologyBasis h2 = cohomology_basis(cc, 2);
  ClassCoordinates coords = g.coordinates(2, h2.generators(), h2.orders());
  REQUIRE(coords.valid());
  Cochain three = h2.generators()[0];
  for (auto& x : three.values) x *= 3;
  CHECK(coords(three) == std::vector<Integer>{1});

  ClassCoordinates wrong = g.coordinates(2, h2.generators(), {Integer(0)});
  CHECK_FALSE(wrong.valid());
  ClassCoordinates missing = g.coordinates(2, {}, {});
  CHECK_FALSE(missing.valid());

  auto tc = CochainComplex::reduced(share(complexes::torus()), z);
  CohomologyGroups tg(tc);
  CohomologyBasis h1 = cohomology_basis(tc, 1);
  Cochain doubled = h1.generators()[0];
  for (auto& x : doubled.values) x *= 2;
  CHECK_FALSE(tg.coordinates(1, {doubled, h1.generators()[1]}, {0, 0}).valid());
  CHECK(tg.coordinates(1, h1.generators(), h1.orders()).valid());
}
