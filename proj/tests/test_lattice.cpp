#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "trimlat/lattice.hpp"
#include "trimlat/pattern.hpp"

using namespace trimlat;

TEST_CASE("k_star maps to the nearest odd cover") {
  CHECK(k_star(1) == 1);
  CHECK(k_star(2) == 3);
  CHECK(k_star(3) == 3);
  CHECK(k_star(4) == 5);
  CHECK(k_star(7) == 7);
  CHECK(k_star(10) == 11);
  CHECK_THROWS_AS(k_star(0), std::invalid_argument);
  CHECK_THROWS_AS(k_star(-3), std::invalid_argument);
}

TEST_CASE("closed and open boxes in one dimension") {
  auto b2 = BoxRegion::closed(1, 2.0);
  REQUIRE(b2.size() == 3);
  CHECK(b2.sites() == std::vector<Site>{{-1}, {0}, {1}});

  auto b2o = BoxRegion::open(1, 2.0);
  REQUIRE(b2o.size() == 1);
  CHECK(b2o.sites() == std::vector<Site>{{0}});

  // closed equals open exactly when the side is not an even integer
  auto b3 = BoxRegion::closed(1, 3.0);
  auto b3o = BoxRegion::open(1, 3.0);
  CHECK(b3.sites() == b3o.sites());
  auto b25 = BoxRegion::closed(1, 2.5);
  auto b25o = BoxRegion::open(1, 2.5);
  CHECK(b25.sites() == b25o.sites());
  CHECK(b25.size() == 3);

  CHECK_THROWS_AS(BoxRegion::closed(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(BoxRegion::closed(1, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(BoxRegion::closed(0, 2.0), std::invalid_argument);
}

TEST_CASE("closed box cardinality is k_star^d for integer sides") {
  for (int d = 1; d <= 3; ++d) {
    for (std::int64_t K = 1; K <= 6; ++K) {
      auto b = BoxRegion::closed(d, static_cast<double>(K), Site(d, 0));
      std::size_t expect = 1;
      for (int i = 0; i < d; ++i) expect *= static_cast<std::size_t>(k_star(K));
      CHECK(b.size() == expect);
    }
  }
}

TEST_CASE("box enumeration is lexicographic and indexable") {
  auto b = BoxRegion::closed(2, 2.0, {0, 0});
  auto s = b.sites();
  REQUIRE(s.size() == 9);
  CHECK(s.front() == Site{-1, -1});
  CHECK(s[1] == Site{-1, 0});
  CHECK(s[3] == Site{0, -1});
  CHECK(s.back() == Site{1, 1});
  CHECK(std::is_sorted(s.begin(), s.end()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(b.index_of(s[i]) == i);
    CHECK(b.site_at(i) == s[i]);
  }
  CHECK(!b.contains({2, 0}));
  CHECK_THROWS_AS(b.index_of({2, 0}), std::out_of_range);
  CHECK(!b.find({2, 0}).has_value());

  auto shifted = BoxRegion::closed(2, 2.0, {5, -3});
  CHECK(shifted.contains({4, -2}));
  CHECK(shifted.size() == 9);
  CHECK(shifted.sites().front() == Site{4, -4});
}

TEST_CASE("boundary of small sets") {
  SUBCASE("singleton in one dimension") {
    auto bd = boundary({{0}}, 1);
    CHECK(bd.size() == 2);
    REQUIRE(bd.eta.size() == 1);
    CHECK(bd.eta[0] == 2);
    REQUIRE(bd.edges.size() == 2);
    CHECK(bd.edges[0] == std::pair<Site, Site>{{0}, {-1}});
    CHECK(bd.edges[1] == std::pair<Site, Site>{{0}, {1}});
    CHECK(bd.outer == std::vector<Site>{{-1}, {1}});
  }
  SUBCASE("adjacent pair in one dimension") {
    auto bd = boundary({{0}, {1}}, 1);
    CHECK(bd.size() == 2);
    CHECK(bd.eta == std::vector<int>{1, 1});
    CHECK(internal_edges({{0}, {1}}, 1) == 1);
  }
  SUBCASE("two dimensions") {
    CHECK(boundary({{0, 0}}, 2).size() == 4);
    CHECK(boundary({{0, 0}, {0, 1}}, 2).size() == 6);
    std::vector<Site> square{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    auto bd = boundary(square, 2);
    CHECK(bd.size() == 8);
    CHECK(bd.eta == std::vector<int>{2, 2, 2, 2});
    CHECK(internal_edges(square, 2) == 4);
    CHECK(bd.inner.size() == 4);
  }
  SUBCASE("duplicates are collapsed") {
    auto bd = boundary({{0}, {0}}, 1);
    CHECK(bd.set.size() == 1);
    CHECK(bd.size() == 2);
  }
  SUBCASE("boundary counts edges against the full lattice: 2d|A| - 2 internal") {
    std::vector<Site> a{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}};
    auto bd = boundary(a, 2);
    CHECK(static_cast<std::int64_t>(bd.size()) ==
          4 * static_cast<std::int64_t>(a.size()) - 2 * internal_edges(a, 2));
  }
}

TEST_CASE("graph distances inside boxes") {
  auto b = BoxRegion::closed(2, 9.0, {0, 0});
  CHECK(graph_distance(b, {0, 0}, {1, 2}) == 3);  // full box: l1 distance
  CHECK(graph_distance(b, {0, 0}, {0, 0}) == 0);
  CHECK(graph_distance(b, {-4, -4}, {4, 4}) == 16);
  CHECK(graph_diameter(BoxRegion::closed(1, 3.0)) == 2);
  CHECK(graph_diameter(b) == 16);
  CHECK_THROWS_AS(graph_distance(b, {0, 0}, {9, 9}), std::invalid_argument);

  // distance through an induced subgraph can exceed l1
  std::vector<Site> ring{{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};
  CHECK(graph_distance(ring, {1, 0}, {1, 2}, 2) == 4);
  std::vector<Site> lsh{{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}};
  CHECK(graph_distance(lsh, {0, 0}, {2, 2}, 2) == 4);
  CHECK(graph_diameter(lsh, 2) == 4);

  std::vector<Site> split{{0}, {5}};
  CHECK_THROWS_AS(graph_distance(split, {0}, {5}, 1), std::invalid_argument);
  CHECK_THROWS_AS(graph_diameter(split, 1), std::invalid_argument);
}

TEST_CASE("relative denseness of periodic patterns") {
  auto even = TrimPattern::periodic(1, 2, {{0}});
  CHECK(even.contains({4}));
  CHECK(even.contains({-6}));
  CHECK(!even.contains({3}));

  auto c = even.check_relatively_dense(2, 1);
  CHECK(c.ok);
  CHECK(!c.window_local);
  auto c2 = even.check_relatively_dense(2, 2);
  CHECK(!c2.ok);
  REQUIRE(c2.violating_cell.has_value());
  CHECK(c2.min_count == 1);

  // odd sites: the open 2-cell around an even center misses them entirely
  auto odd = TrimPattern::periodic(1, 2, {{1}});
  CHECK(!odd.check_relatively_dense(2, 1).ok);
  CHECK(odd.check_relatively_dense(3, 1).ok);

  auto triple = TrimPattern::periodic(1, 3, {{0}});
  CHECK(triple.check_relatively_dense(3, 1).ok);
  CHECK(!triple.check_relatively_dense(3, 2).ok);
  CHECK(triple.check_relatively_dense(4, 1).ok);  // open 4-cell holds 3 consecutive

  auto evens2 = TrimPattern::periodic(2, 2, {{0, 0}});
  CHECK(evens2.check_relatively_dense(2, 1).ok);
  CHECK(!evens2.check_relatively_dense(2, 2).ok);

  // period != K exercises the lcm sweep of cell centers
  CHECK(even.check_relatively_dense(3, 1).ok);
  CHECK(triple.check_relatively_dense(2, 1).ok == false);  // cells at odd multiples miss

  auto full = TrimPattern::periodic(1, 1, {{0}});
  CHECK(full.check_relatively_dense(1, 1).ok);
  CHECK(!even.check_relatively_dense(1, 1).ok);  // K=1 demands the full lattice
  CHECK_THROWS_AS(even.check_relatively_dense(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(even.check_relatively_dense(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(even.check_relatively_dense(2, 5), std::invalid_argument);  // Q > K^d

  even.declare_density(2, 1);
  CHECK(even.declared_k() == 2);
  CHECK(even.declared_q() == 1);
  CHECK_THROWS_AS(even.declare_density(2, 2), std::invalid_argument);
}

TEST_CASE("explicit patterns are window-local") {
  auto w = BoxRegion::closed(1, 12.0);
  auto p = TrimPattern::explicit_set(1, {{-6}, {-3}, {0}, {3}, {6}}, w);
  CHECK(p.contains({0}));
  CHECK(!p.contains({1}));
  CHECK_THROWS_AS(p.contains({7}), std::out_of_range);

  auto c = p.check_relatively_dense(3, 1);
  CHECK(c.ok);
  CHECK(c.window_local);

  auto sparse = TrimPattern::explicit_set(1, {{0}}, w);
  CHECK(!sparse.check_relatively_dense(3, 1).ok);

  // a window too small to hold one full cell cannot be checked
  auto tiny = TrimPattern::explicit_set(1, {{0}}, BoxRegion::closed(1, 1.0));
  CHECK_THROWS_AS(tiny.check_relatively_dense(3, 1), std::invalid_argument);
}

TEST_CASE("pattern canonicalization and serialization") {
  auto p = TrimPattern::periodic(1, 3, {{4}, {-2}, {1}});  // all congruent to 1
  CHECK(p.base_sites() == std::vector<Site>{{1}});
  CHECK(p.contains({7}));
  CHECK(!p.contains({0}));

  p.declare_density(3, 1);
  auto j = p.to_json();
  CHECK(j.at("dim") == 1);
  CHECK(j.at("period") == 3);
  CHECK(j.at("Q") == 1);
  auto q = TrimPattern::from_json(j);
  CHECK(q.kind() == TrimPattern::Kind::Periodic);
  CHECK(q.base_sites() == p.base_sites());
  CHECK(q.declared_q() == 1);

  auto w = BoxRegion::closed(2, 4.0);
  auto e = TrimPattern::explicit_set(2, {{0, 0}, {2, 2}}, w);
  auto je = e.to_json();
  auto qe = TrimPattern::from_json(je);
  CHECK(qe.kind() == TrimPattern::Kind::Explicit);
  CHECK(qe.contains({2, 2}));
  CHECK(!qe.contains({1, 1}));

  CHECK_THROWS_AS(TrimPattern::periodic(1, 0, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(TrimPattern::periodic(2, 2, {{0}}), std::invalid_argument);  // dim mismatch
  CHECK_THROWS_AS(TrimPattern::explicit_set(1, {{99}}, BoxRegion::closed(1, 4.0)),
                  std::invalid_argument);  // site outside window
}

TEST_CASE("sites_in lists pattern sites inside a box") {
  auto even = TrimPattern::periodic(1, 2, {{0}});
  auto got = even.sites_in(BoxRegion::closed(1, 6.0));
  CHECK(got == std::vector<Site>{{-2}, {0}, {2}});
  auto evens2 = TrimPattern::periodic(2, 2, {{0, 0}});
  CHECK(evens2.sites_in(BoxRegion::closed(2, 2.0)).size() == 1);
}
