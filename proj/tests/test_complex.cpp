#include <catch2/catch_amalgamated.hpp>

#include "macring/complex.hpp"
#include "macring/errors.hpp"

using namespace mac;

TEST_CASE("parse_complex closes facets downward", "[complex]") {
  SimplicialComplex two = parse_complex("m=2; facets={1},{2}");
  CHECK(two.face_count() == 3);
  CHECK(two.dimension() == 0);

  SimplicialComplex triangle = parse_complex("m=3; facets={1,2},{2,3},{1,3}");
  CHECK(triangle.face_count() == 7);

  SimplicialComplex c5 = parse_complex("m=5; facets={1,2},{2,3},{3,4},{4,5},{5,1}");
  CHECK(c5.face_count() == 11);
  CHECK(c5 == complexes::cycle(5));
}

TEST_CASE("parse_complex accepts JSON and ghost vertices", "[complex]") {
  SimplicialComplex k = parse_complex(R"({"m": 4, "facets": [[1, 2], [3]]})");
  CHECK(k.vertex_count() == 4);
  CHECK(k.count(0) == 3);
  CHECK_FALSE(k.contains(Face{4}));
  CHECK(parse_complex("m=4; facets={1,2},{3}") == k);
  CHECK(parse_complex("m=3; facets={}").face_count() == 1);
  CHECK(parse_complex("m=0").face_count() == 1);
}

TEST_CASE("parse_complex rejects malformed input", "[complex]") {
  CHECK_THROWS_AS(parse_complex("m=2; facets={1,3}"), InputError);
  CHECK_THROWS_AS(parse_complex("m=3; facets={1,1}"), InputError);
  CHECK_THROWS_AS(parse_complex("m=3; facets={1,2"), InputError);
  CHECK_THROWS_AS(parse_complex("facets={1}"), InputError);
  CHECK_THROWS_AS(parse_complex(R"({"facets": [[1]]})"), InputError);
}

TEST_CASE("to_string round trips", "[complex]") {
  for (const auto& k : {complexes::rp2(), complexes::torus(), complexes::points(3), SimplicialComplex()}) {
    CHECK(parse_complex(k.to_string()) == k);
  }
}

TEST_CASE("faces are stored lexicographically with a working index", "[complex]") {
  SimplicialComplex k = complexes::torus();
  for (int d = -1; d <= k.dimension(); ++d) {
    for (std::size_t i = 0; i < k.count(d); ++i) {
      CHECK(k.index_of(k.face(d, i)) == i);
      if (i > 0) CHECK(k.face_vector(d, i - 1) < k.face_vector(d, i));
    }
  }
  CHECK(k.count(0) == 7);
  CHECK(k.count(1) == 21);
  CHECK(k.count(2) == 14);
  CHECK(k.facets().size() == 14);
}

TEST_CASE("full subcomplexes", "[complex]") {
  SimplicialComplex c5 = complexes::cycle(5);
  SimplicialComplex pair = full_subcomplex(c5, IndexSet({1, 3}, 5));
  CHECK(pair == complexes::points(2));

  SimplicialComplex edge_point = full_subcomplex(c5, IndexSet({1, 2, 4}, 5));
  CHECK(edge_point == SimplicialComplex::from_facets(3, {{1, 2}, {3}}));

  SimplicialComplex full = complexes::simplex(5);
  CHECK(full_subcomplex(full, IndexSet({2, 4, 5}, 5)) == complexes::simplex(3));
  CHECK(full_subcomplex(full, IndexSet({}, 5)) == SimplicialComplex());
}

TEST_CASE("restriction is transitive", "[complex]") {
  SimplicialComplex k = complexes::rp2();
  IndexSet outer({1, 2, 4, 5, 6}, 6);
  SimplicialComplex k_outer = full_subcomplex(k, outer);
  // {2, 5, 6} sits at positions {2, 4, 5} of `outer`
  CHECK(full_subcomplex(k_outer, IndexSet({2, 4, 5}, 5)) == full_subcomplex(k, IndexSet({2, 5, 6}, 6)));
  for (int d = -1; d <= k.dimension(); ++d) CHECK(k_outer.count(d) <= k.count(d));
}

TEST_CASE("joins", "[complex]") {
  SimplicialComplex point = complexes::points(1);
  CHECK(join(point, point) == complexes::simplex(2));

  SimplicialComplex square = join(complexes::points(2), complexes::points(2));
  CHECK(square.count(1) == 4);
  CHECK(square == SimplicialComplex::from_facets(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}}));

  SimplicialComplex k = complexes::cycle(5);
  CHECK(join(SimplicialComplex(), k) == k);
  CHECK(join(k, complexes::rp2()).face_count() == k.face_count() * complexes::rp2().face_count());
  SimplicialComplex a = complexes::points(2), b = complexes::cycle(3), c = complexes::simplex(2);
  CHECK(join(join(a, b), c) == join(a, join(b, c)));
}

TEST_CASE("canonical join inclusion", "[complex]") {
  SimplicialComplex c4 = complexes::cycle(4);
  SimplicialMap f = canonical_join_inclusion(c4, IndexSet({1, 3}, 4), IndexSet({2, 4}, 4));
  CHECK(f.vertex_image() == std::vector<Vertex>{1, 3, 2, 4});
  CHECK(f.target().count(1) == 4);

  SimplicialComplex c5 = complexes::cycle(5);
  SimplicialMap g = canonical_join_inclusion(c5, IndexSet({1, 3}, 5), IndexSet({2, 4}, 5));
  // the source is the path 1-2-3-4
  CHECK(g.source() == SimplicialComplex::from_facets(4, {{1, 2}, {2, 3}, {3, 4}}));
  CHECK(g.target() == SimplicialComplex::from_facets(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}}));

  CHECK_THROWS_AS(canonical_join_inclusion(c5, IndexSet({1, 2}, 5), IndexSet({2, 4}, 5)), InputError);

  auto [img, sign] = f.oriented_image(Face{2, 3});
  CHECK(img == Face{2, 3});
  CHECK(sign == -1);
}

TEST_CASE("shuffle signs", "[complex]") {
  CHECK(shuffle_sign(Face{1, 3}, Face{2}) == -1);
  CHECK(shuffle_sign(Face{1, 2}, Face{3, 4}) == 1);
  CHECK(shuffle_sign(Face{3, 4}, Face{1, 2}) == 1);
  CHECK(shuffle_sign(Face{2, 4}, Face{1, 3}) == -1);
  CHECK(shuffle_sign(Face{}, Face{1}) == 1);
}

TEST_CASE("index sets", "[complex]") {
  auto all = IndexSet::all_subsets(3);
  REQUIRE(all.size() == 8);
  CHECK(all[0].empty());
  CHECK(all[1].members() == std::vector<int>{1});
  CHECK(all[4].members() == std::vector<int>{1, 2});
  CHECK(all[7].members() == std::vector<int>{1, 2, 3});
  IndexSet s({2, 5}, 6);
  CHECK(s.position(5) == 1);
  CHECK(s.position(3) == -1);
  CHECK(s.to_string() == "{2,5}");
  CHECK_THROWS_AS(IndexSet({7}, 6), InputError);
}
