#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "antnet/roadmap.hpp"
#include "oracles.hpp"

using antnet::City;
using antnet::Roadmap;

namespace {

std::vector<City> line_cities(int n) {
    std::vector<City> cities;
    for (int i = 0; i < n; ++i) cities.push_back({i, static_cast<double>(i), 0.0});
    return cities;
}

// Triangle with direct edge 5 between 0 and 2 and a 4+3 detour via 1.
Roadmap triangle_345() {
    return Roadmap({{0, 0.0, 0.0}, {1, 4.0, 0.0}, {2, 4.0, 3.0}},
                   {{0, 2}, {0, 1}, {1, 2}});
}

}  // namespace

TEST_SUITE("roadmap") {

TEST_CASE("construction validates invariants") {
    SUBCASE("accepts a minimal valid map") {
        const Roadmap map({{0, 0.0, 0.0}, {1, 5.0, 0.0}}, {{0, 1}});
        CHECK(map.city_count() == 2);
        CHECK(map.edge_count() == 1);
        CHECK(map.edges()[0].length == 5.0);
    }
    SUBCASE("rejects fewer than two cities") {
        CHECK_THROWS_AS(Roadmap({{0, 0.0, 0.0}}, {}), std::invalid_argument);
    }
    SUBCASE("rejects duplicate ids") {
        CHECK_THROWS_AS(Roadmap({{0, 0.0, 0.0}, {0, 1.0, 0.0}}, {{0, 0}}),
                        std::invalid_argument);
    }
    SUBCASE("rejects non-dense ids") {
        CHECK_THROWS_AS(Roadmap({{0, 0.0, 0.0}, {2, 1.0, 0.0}}, {{0, 2}}),
                        std::invalid_argument);
    }
    SUBCASE("rejects non-finite coordinates") {
        const double inf = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(Roadmap({{0, inf, 0.0}, {1, 1.0, 0.0}}, {{0, 1}}),
                        std::invalid_argument);
    }
    SUBCASE("rejects self-loops") {
        CHECK_THROWS_AS(Roadmap(line_cities(2), {{0, 1}, {1, 1}}), std::invalid_argument);
    }
    SUBCASE("rejects duplicate edges, including reversed") {
        CHECK_THROWS_AS(Roadmap(line_cities(2), {{0, 1}, {1, 0}}), std::invalid_argument);
    }
    SUBCASE("rejects edges to unknown cities") {
        CHECK_THROWS_AS(Roadmap(line_cities(2), {{0, 5}}), std::invalid_argument);
    }
    SUBCASE("rejects zero-length edges") {
        CHECK_THROWS_AS(Roadmap({{0, 1.0, 1.0}, {1, 1.0, 1.0}}, {{0, 1}}),
                        std::invalid_argument);
    }
    SUBCASE("rejects disconnected graphs") {
        CHECK_THROWS_AS(Roadmap(
            {{0, 0.0, 0.0}, {1, 1.0, 0.0}, {2, 5.0, 0.0}, {3, 6.0, 0.0}},
            {{0, 1}, {2, 3}}),
            std::invalid_argument);
    }
    SUBCASE("error messages name the offending field") {
        try {
            Roadmap(line_cities(3), {{0, 1}, {1, 2}, {2, 9}});
            FAIL("expected a throw");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("edges[2]") != std::string::npos);
        }
    }
}

TEST_CASE("adjacency is sorted and symmetric") {
    const Roadmap map = triangle_345();
    const auto n0 = map.neighbors(0);
    REQUIRE(n0.size() == 2);
    CHECK(n0[0].neighbor == 1);
    CHECK(n0[1].neighbor == 2);
    CHECK(map.edge_index(0, 2) == map.edge_index(2, 0));
    CHECK(map.edge_index(0, 2) != Roadmap::npos);
    CHECK(map.edge_index(1, 1) == Roadmap::npos);
    CHECK(map.edge_length(map.edge_index(0, 2)) == 5.0);
    CHECK(map.distance(0, 2) == 5.0);
}

TEST_CASE("generate_roadmap: minimal instance") {
    const Roadmap map = antnet::generate_roadmap(2, 10.0, 10.0, 1, 7);
    CHECK(map.city_count() == 2);
    CHECK(map.edge_count() == 1);
}

TEST_CASE("generate_roadmap: 120 cities, degree 4, connected") {
    const Roadmap map = antnet::generate_roadmap(120, 200.0, 200.0, 4, 1);
    CHECK(map.city_count() == 120);

    // Connectivity via an independent union-find oracle.
    oracles::UnionFind uf(120);
    for (const Roadmap::Edge& e : map.edges()) uf.unite(e.u, e.v);
    CHECK(uf.components() == 1);

    // k-nearest-neighbor linking guarantees degree >= 4 before (and
    // therefore after) augmentation.
    for (int c = 0; c < 120; ++c) CHECK(map.neighbors(c).size() >= 4);

    // Coordinates stay inside the requested area.
    for (const City& c : map.cities()) {
        CHECK(c.x >= 0.0);
        CHECK(c.x < 200.0);
        CHECK(c.y >= 0.0);
        CHECK(c.y < 200.0);
    }
}

TEST_CASE("generate_roadmap: deterministic per seed") {
    const Roadmap a = antnet::generate_roadmap(40, 100.0, 100.0, 3, 11);
    const Roadmap b = antnet::generate_roadmap(40, 100.0, 100.0, 3, 11);
    REQUIRE(a.edge_count() == b.edge_count());
    for (std::size_t i = 0; i < a.edge_count(); ++i) {
        CHECK(a.edges()[i].u == b.edges()[i].u);
        CHECK(a.edges()[i].v == b.edges()[i].v);
        CHECK(a.edges()[i].length == b.edges()[i].length);
    }
    for (int c = 0; c < 40; ++c) {
        CHECK(a.city(c).x == b.city(c).x);
        CHECK(a.city(c).y == b.city(c).y);
    }

    const Roadmap c = antnet::generate_roadmap(40, 100.0, 100.0, 3, 12);
    bool any_differs = false;
    for (int i = 0; i < 40 && !any_differs; ++i)
        any_differs = a.city(i).x != c.city(i).x || a.city(i).y != c.city(i).y;
    CHECK(any_differs);
}

TEST_CASE("generate_roadmap: rejects invalid arguments") {
    CHECK_THROWS_AS(antnet::generate_roadmap(1, 10.0, 10.0, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(antnet::generate_roadmap(5, 0.0, 10.0, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(antnet::generate_roadmap(5, 10.0, -1.0, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(antnet::generate_roadmap(5, 10.0, 10.0, 0, 1), std::invalid_argument);
}

TEST_CASE("dijkstra: trivial and hand-checked instances") {
    SUBCASE("2-node map") {
        const Roadmap map({{0, 0.0, 0.0}, {1, 5.0, 0.0}}, {{0, 1}});
        const antnet::ShortestPath sp = antnet::dijkstra(map, 0, 1);
        CHECK(sp.nodes == std::vector<int>{0, 1});
        CHECK(sp.length == 5.0);
    }
    SUBCASE("triangle 3-4-5 prefers the direct edge") {
        const antnet::ShortestPath sp = antnet::dijkstra(triangle_345(), 0, 2);
        CHECK(sp.nodes == std::vector<int>{0, 2});
        CHECK(sp.length == 5.0);
    }
    SUBCASE("rejects invalid endpoints") {
        const Roadmap map = triangle_345();
        CHECK_THROWS_AS(antnet::dijkstra(map, 0, 0), std::invalid_argument);
        CHECK_THROWS_AS(antnet::dijkstra(map, 0, 7), std::invalid_argument);
        CHECK_THROWS_AS(antnet::dijkstra(map, -1, 2), std::invalid_argument);
    }
}

TEST_CASE("dijkstra: matches brute-force enumeration on random 10-node maps") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Roadmap map = antnet::generate_roadmap(10, 50.0, 50.0, 3, seed);
        std::vector<std::pair<int, int>> edges;
        for (const Roadmap::Edge& e : map.edges()) edges.emplace_back(e.u, e.v);
        std::vector<std::pair<double, double>> coords;
        for (const City& c : map.cities()) coords.emplace_back(c.x, c.y);
        const oracles::BruteForceShortest oracle(10, edges, coords);

        const antnet::ShortestPath sp = antnet::dijkstra(map, 0, 9);
        CAPTURE(seed);
        CHECK(sp.length == doctest::Approx(oracle.shortest(0, 9)).epsilon(1e-12));
        CHECK(sp.nodes.front() == 0);
        CHECK(sp.nodes.back() == 9);

        // Path length re-derivable from its own edges.
        double recomputed = 0.0;
        for (std::size_t i = 0; i + 1 < sp.nodes.size(); ++i) {
            const std::size_t idx = map.edge_index(sp.nodes[i], sp.nodes[i + 1]);
            REQUIRE(idx != Roadmap::npos);
            recomputed += map.edge_length(idx);
        }
        CHECK(sp.length == recomputed);
    }
}

TEST_CASE("dijkstra: symmetric on undirected maps") {
    const Roadmap map = antnet::generate_roadmap(30, 80.0, 80.0, 3, 4);
    const double forward = antnet::dijkstra(map, 2, 27).length;
    const double backward = antnet::dijkstra(map, 27, 2).length;
    CHECK(forward == doctest::Approx(backward).epsilon(1e-13));
}

TEST_CASE("extract_features: arithmetic on known instances") {
    SUBCASE("two nodes, one edge") {
        const Roadmap map({{0, 0.0, 0.0}, {1, 4.0, 2.0}}, {{0, 1}});
        const antnet::EnvFeatures f = antnet::extract_features(map);
        CHECK(f.node_density == doctest::Approx(2.0 * 200.0 / 8.0));
        CHECK(f.smallest_arc_stddev == 0.0);
    }
    SUBCASE("unit square: all smallest arcs equal") {
        const Roadmap map({{0, 0.0, 0.0}, {1, 1.0, 0.0}, {2, 1.0, 1.0}, {3, 0.0, 1.0}},
                          {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
        const antnet::EnvFeatures f = antnet::extract_features(map);
        CHECK(f.smallest_arc_stddev == 0.0);
        CHECK(f.node_density == doctest::Approx(4.0 * 200.0 / 1.0));
    }
    SUBCASE("generated 120-city map lands near 0.6 nodes per 200 sq units") {
        const Roadmap map = antnet::generate_roadmap(120, 200.0, 200.0, 4, 1);
        double min_x = map.city(0).x, max_x = min_x;
        double min_y = map.city(0).y, max_y = min_y;
        for (const City& c : map.cities()) {
            min_x = std::min(min_x, c.x);
            max_x = std::max(max_x, c.x);
            min_y = std::min(min_y, c.y);
            max_y = std::max(max_y, c.y);
        }
        const double expected = 120.0 * 200.0 / ((max_x - min_x) * (max_y - min_y));
        const antnet::EnvFeatures f = antnet::extract_features(map);
        CHECK(f.node_density == doctest::Approx(expected).epsilon(1e-12));
        CHECK(f.node_density > 0.55);
        CHECK(f.node_density < 0.8);
        CHECK(f.smallest_arc_stddev >= 0.0);
    }
    SUBCASE("degenerate bounding box rejected") {
        const Roadmap map(line_cities(3), {{0, 1}, {1, 2}});
        CHECK_THROWS_AS(antnet::extract_features(map), std::invalid_argument);
    }
    SUBCASE("translation invariance") {
        const Roadmap base = antnet::generate_roadmap(25, 60.0, 60.0, 3, 9);
        std::vector<City> shifted;
        for (const City& c : base.cities()) shifted.push_back({c.id, c.x + 137.5, c.y - 41.25});
        std::vector<std::pair<int, int>> edges;
        for (const Roadmap::Edge& e : base.edges()) edges.emplace_back(e.u, e.v);
        const Roadmap moved(shifted, edges);

        const antnet::EnvFeatures f0 = antnet::extract_features(base);
        const antnet::EnvFeatures f1 = antnet::extract_features(moved);
        CHECK(f1.node_density == doctest::Approx(f0.node_density).epsilon(1e-9));
        CHECK(f1.smallest_arc_stddev ==
              doctest::Approx(f0.smallest_arc_stddev).epsilon(1e-9));
    }
}

TEST_CASE("generated maps: dijkstra is a lower bound for any walk") {
    const Roadmap map = antnet::generate_roadmap(20, 50.0, 50.0, 3, 3);
    const double optimal = antnet::dijkstra(map, 0, 19).length;
    // Any handmade simple path is at least as long.
    const antnet::ShortestPath sp = antnet::dijkstra(map, 0, 19);
    double detour = 0.0;
    // Walk to dest via the neighbor of 0 with the largest edge, then follow
    // dijkstra from there; total must be >= optimal.
    const auto n0 = map.neighbors(0);
    REQUIRE(!n0.empty());
    std::size_t longest = 0;
    for (std::size_t i = 1; i < n0.size(); ++i)
        if (map.edge_length(n0[i].edge_index) > map.edge_length(n0[longest].edge_index))
            longest = i;
    const int via = n0[longest].neighbor;
    if (via != 19) {
        detour = map.edge_length(n0[longest].edge_index) + antnet::dijkstra(map, via, 19).length;
        CHECK(detour >= optimal);
    }
    CHECK(sp.length == optimal);
}

}  // TEST_SUITE
