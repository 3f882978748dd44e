#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "macring/errors.hpp"
#include "macring/geometric_model.hpp"
#include "macring/star_ring.hpp"

using namespace mac;

namespace {

const auto Z = Coefficients::integers();

std::size_t nonzero_products(const StarRing& r) {
  std::size_t count = 0;
  for (std::size_t i = 1; i < r.size(); ++i)
    for (std::size_t j = 1; j < r.size(); ++j)
      for (const auto& c : r.product(i, j))
        if (c != 0) {
          ++count;
          break;
        }
  return count;
}

Cochain only_generator(const SimplicialComplex& k, int q) {
  CohomologyBasis b = reduced_cohomology(k, Z, q);
  REQUIRE(b.size() == 1);
  return b.generators()[0];
}

}  // namespace

TEST_CASE("join product on the square hits the fundamental class", "[star_ring]") {
  auto k = complexes::cycle(4);
  IndexSet j({1, 3}, 4), l({2, 4}, 4);
  Cochain a = only_generator(full_subcomplex(k, j), 0);
  Cochain b = only_generator(full_subcomplex(k, l), 0);
  Cochain ab = star_disjoint(k, j, l, a, b, Z);
  CHECK(ab.degree == 1);
  auto coords = reduced_cohomology(k, Z, 1).express(ab);
  REQUIRE(coords.size() == 1);
  CHECK(abs(coords[0]) == 1);
}

TEST_CASE("join product on the pentagon over a path is trivial", "[star_ring]") {
  auto k = complexes::cycle(5);
  IndexSet j({1, 3}, 5), l({2, 4}, 5);
  Cochain a = only_generator(full_subcomplex(k, j), 0);
  Cochain b = only_generator(full_subcomplex(k, l), 0);
  Cochain ab = star_disjoint(k, j, l, a, b, Z);
  auto k_jl = full_subcomplex(k, j.united(l));
  CHECK(reduced_cohomology(k_jl, Z, 1).size() == 0);
  CHECK(ab.degree == 1);
}

TEST_CASE("join product rejects overlapping index sets", "[star_ring]") {
  auto k = complexes::cycle(4);
  IndexSet j({1, 3}, 4), l({1, 2}, 4);
  Cochain a = only_generator(full_subcomplex(k, j), 0);
  CHECK_THROWS_AS(star_disjoint(k, j, l, a, a, Z), InputError);
}

TEST_CASE("fiber products with the Koszul sign", "[star_ring]") {
  auto pairs = PairFamily::cone({GradedRing::sphere(1), GradedRing::sphere(1)});
  IndexSet one({1}, 2), two({2}, 2);

  auto p = cone_pair_product(pairs, one, {0}, two, {0});
  REQUIRE(p.size() == 1);
  CHECK(p[0].first == std::vector<int>{0, 0});
  CHECK(p[0].second == 1);

  p = cone_pair_product(pairs, two, {0}, one, {0});
  REQUIRE(p.size() == 1);
  CHECK(p[0].second == -1);

  CHECK(cone_pair_product(pairs, one, {0}, one, {0}).empty());

  auto even = PairFamily::cone({GradedRing::sphere(0), GradedRing::sphere(2)});
  p = cone_pair_product(even, two, {0}, one, {0});
  REQUIRE(p.size() == 1);
  CHECK(p[0].second == 1);
  p = cone_pair_product(even, one, {0}, one, {0});
  REQUIRE(p.size() == 1);
  CHECK(p[0].first == std::vector<int>{0});
}

TEST_CASE("multiplication table of S^3", "[star_ring]") {
  StarRing r = multiplication_table(complexes::points(2), PairFamily::disk_sphere(2, 2), Z);
  REQUIRE(r.size() == 2);
  CHECK(r.product(0, 1) == r.generator(1));
  CHECK(r.product(1, 0) == r.generator(1));
  CHECK(r.product(1, 1) == r.zero());
  CHECK(check_table(r).ok);
}

TEST_CASE("multiplication table of S^3 x S^3", "[star_ring]") {
  auto k = complexes::cycle(4);
  StarRing r = multiplication_table(k, PairFamily::disk_sphere(4, 2), Z);
  REQUIRE(r.size() == 4);
  CHECK(nonzero_products(r) == 2);
  RingElement top = r.product(1, 2);
  CHECK(abs(top[3]) == 1);
  CHECK(star_product(r, r.generator(1), r.generator(2)) == top);
  RingElement minus(4);
  minus[3] = -top[3];
  CHECK(r.product(2, 1) == minus);
  CHECK(check_table(r).ok);
  CHECK(compare_tables(r, direct_ring(k, PairFamily::disk_sphere(4, 2), Z)).isomorphic);
}

TEST_CASE("pentagon products pair complementary summands", "[star_ring]") {
  auto k = complexes::cycle(5);
  StarRing r = multiplication_table(k, PairFamily::disk_sphere(5, 2), Z);
  CHECK(r.size() == 12);
  CHECK(nonzero_products(r) == 10);
  const auto& gens = r.module().generators();
  for (std::size_t i = 1; i < r.size(); ++i)
    for (std::size_t j = 1; j < r.size(); ++j) {
      bool nonzero = r.product(i, j) != r.zero();
      if (!nonzero) continue;
      CHECK(gens[i].degree + gens[j].degree == 7);
      const auto& si = r.module().summands()[gens[i].summand].index;
      const auto& sj = r.module().summands()[gens[j].summand].index;
      CHECK(si.disjoint(sj));
      CHECK(si.united(sj) == IndexSet::full(5));
    }
  CHECK(check_table(r).ok);
}

TEST_CASE("a full simplex has only the unit", "[star_ring]") {
  StarRing r = multiplication_table(complexes::simplex(3), PairFamily::disk_sphere(3, 2), Z);
  REQUIRE(r.size() == 1);
  CHECK(r.product(0, 0) == r.unit());
}

TEST_CASE("overlapping products of suspension pairs vanish by rule", "[star_ring]") {
  auto k = complexes::cycle(5);
  StarRing r = multiplication_table(k, PairFamily::disk_sphere(5, 2), Z);
  const auto& m = r.module();
  std::size_t overlapping = 0;
  for (std::size_t i = 1; i < r.size(); ++i)
    for (std::size_t j = 1; j < r.size(); ++j) {
      const auto& si = m.summands()[m.generators()[i].summand].index;
      const auto& sj = m.summands()[m.generators()[j].summand].index;
      if (si.disjoint(sj)) {
        CHECK(r.rule(i, j) == ProductRule::Disjoint);
        continue;
      }
      ++overlapping;
      CHECK(r.rule(i, j) == ProductRule::Vanishing);
      CHECK(r.product(i, j) == r.zero());
    }
  CHECK(overlapping > 0);
}

TEST_CASE("interval pairs multiply geometrically on overlaps", "[star_ring]") {
  auto k = complexes::points(3);
  StarRing r = multiplication_table(k, PairFamily::disk_sphere(3, 1), Z);
  bool geometric = false;
  for (std::size_t i = 1; i < r.size(); ++i)
    for (std::size_t j = 1; j < r.size(); ++j) geometric |= r.rule(i, j) == ProductRule::Geometric;
  CHECK(geometric);
  CHECK(check_table(r).ok);
  CHECK(compare_tables(r, direct_ring(k, PairFamily::disk_sphere(3, 1), Z)).isomorphic);
}

TEST_CASE("cone pairs on circles reproduce the disk table", "[star_ring]") {
  for (const auto& k : {complexes::cycle(4), complexes::cycle(5), complexes::points(3)}) {
    const int m = k.vertex_count();
    StarRing disk = multiplication_table(k, PairFamily::disk_sphere(m, 2), Z);
    StarRing cone =
        multiplication_table(k, PairFamily::cone(std::vector<GradedRing>(static_cast<std::size_t>(m), GradedRing::sphere(1))), Z);
    CHECK(compare_tables(disk, cone).isomorphic);
  }
}

TEST_CASE("a tampered table fails the structural checks", "[star_ring]") {
  StarRing r = multiplication_table(complexes::cycle(4), PairFamily::disk_sphere(4, 2), Z);
  std::vector<std::vector<RingElement>> table(r.size(), std::vector<RingElement>(r.size()));
  std::vector<std::vector<ProductRule>> rules(r.size(), std::vector<ProductRule>(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) {
      table[i][j] = r.product(i, j);
      rules[i][j] = r.rule(i, j);
    }
  table[2][1] = r.product(1, 2);
  StarRing broken(r.module(), table, rules);
  TableReport report = check_table(broken);
  CHECK_FALSE(report.ok);
  CHECK_FALSE(report.failures.empty());
  CHECK_FALSE(compare_tables(r, broken).isomorphic);
}

TEST_CASE("ungraded comparison across suspensions", "[star_ring]") {
  auto k = complexes::cycle(4);
  auto pairs = PairFamily::disk_sphere(4, 1);
  IsoReport same = ungraded_iso_check(k, pairs, {1, 1, 1, 1}, {3, 3, 3, 3}, Z);
  CHECK(same.isomorphic);
  CHECK(same.counterexample.empty());
  CHECK(ungraded_iso_check(k, pairs, {2, 2, 2, 2}, {4, 4, 4, 4}, Coefficients::mod(3)).isomorphic);
  CHECK_THROWS_AS(ungraded_iso_check(k, pairs, {1, 1, 1, 1}, {2, 2, 2, 2}, Z), InputError);
}

TEST_CASE("tables of different complexes differ", "[star_ring]") {
  StarRing a = multiplication_table(complexes::points(2), PairFamily::disk_sphere(2, 2), Z);
  StarRing b = multiplication_table(complexes::cycle(4), PairFamily::disk_sphere(4, 2), Z);
  IsoReport report = compare_tables(a, b);
  CHECK_FALSE(report.isomorphic);
  CHECK_FALSE(report.counterexample.empty());
}
