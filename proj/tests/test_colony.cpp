#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "antnet/colony.hpp"
#include "antnet/rng.hpp"
#include "antnet/roadmap.hpp"
#include "antnet/trail.hpp"

using antnet::Rng;
using antnet::Roadmap;
using antnet::SolverParams;
using antnet::TrailState;
using antnet::TransitionProbabilities;

namespace {

// Symmetric fork: 0 at the origin, two middle nodes equidistant from
// both 0 and the destination 3, so eta is identical on both branches.
Roadmap fork_map() {
    return Roadmap({{0, 0.0, 0.0}, {1, 1.0, 1.0}, {2, 1.0, -1.0}, {3, 2.0, 0.0}},
                   {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

std::vector<char> fresh_visited(const Roadmap& map, int current) {
    std::vector<char> visited(map.city_count(), 0);
    visited[static_cast<std::size_t>(current)] = 1;
    return visited;
}

}  // namespace

TEST_SUITE("colony") {

TEST_CASE("SolverParams::validate guards every invariant") {
    SolverParams ok;
    CHECK_NOTHROW(ok.validate());

    auto expect_reject = [](auto&& mutate) {
        SolverParams params;
        mutate(params);
        CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    };
    expect_reject([](SolverParams& p) { p.alpha = -0.1; });
    expect_reject([](SolverParams& p) { p.beta = -1.0; });
    expect_reject([](SolverParams& p) { p.rho = 0.0; });
    expect_reject([](SolverParams& p) { p.rho = 1.0; });
    expect_reject([](SolverParams& p) { p.q0 = -0.01; });
    expect_reject([](SolverParams& p) { p.q0 = 1.01; });
    expect_reject([](SolverParams& p) { p.e_weight = -1.0; });
    expect_reject([](SolverParams& p) { p.n_ants = 0; });
    expect_reject([](SolverParams& p) { p.n_iterations = 0; });
    expect_reject([](SolverParams& p) {
        p.rule.kind = antnet::DepositionKind::Exponential;
        p.rule.time_constant = 0.0;
    });
}

TEST_CASE("visibility: 1 / (edge length + distance to goal)") {
    // i at 0, k at 3, goal at 10 on a line: d_ik = 3, d_kg = 7.
    const Roadmap line({{0, 0.0, 0.0}, {1, 3.0, 0.0}, {2, 10.0, 0.0}}, {{0, 1}, {1, 2}});
    CHECK(antnet::visibility(line, 0, 1, 2) == 0.1);

    // Neighbor k is the goal itself: d_kg = 0.
    const Roadmap direct({{0, 0.0, 0.0}, {1, 4.0, 0.0}}, {{0, 1}});
    CHECK(antnet::visibility(direct, 0, 1, 1) == 0.25);
}

TEST_CASE("visibility: exact homogeneity under power-of-two coordinate scaling") {
    const Roadmap base = fork_map();
    std::vector<antnet::City> scaled;
    for (const antnet::City& c : base.cities()) scaled.push_back({c.id, 2.0 * c.x, 2.0 * c.y});
    std::vector<std::pair<int, int>> edges;
    for (const Roadmap::Edge& e : base.edges()) edges.emplace_back(e.u, e.v);
    const Roadmap doubled(scaled, edges);

    CHECK(antnet::visibility(doubled, 0, 1, 3) == 0.5 * antnet::visibility(base, 0, 1, 3));
    CHECK(antnet::visibility(doubled, 1, 3, 3) == 0.5 * antnet::visibility(base, 1, 3, 3));
}

TEST_CASE("transition_probabilities: hand-checked distributions") {
    const Roadmap map = fork_map();
    SolverParams params;
    params.alpha = 1.0;
    params.beta = 1.0;

    SUBCASE("single feasible neighbor gets probability 1") {
        TrailState state(map.edge_count(), 0.1);
        std::vector<char> visited = fresh_visited(map, 0);
        visited[2] = 1;  // block one branch
        const TransitionProbabilities p =
            antnet::transition_probabilities(state, map, 0, visited, 3, params);
        REQUIRE(p.neighbors == std::vector<int>{1});
        CHECK(p.probability[0] == 1.0);
    }
    SUBCASE("two symmetric neighbors split 0.5 / 0.5 exactly") {
        TrailState state(map.edge_count(), 0.1);
        const TransitionProbabilities p =
            antnet::transition_probabilities(state, map, 0, fresh_visited(map, 0), 3, params);
        REQUIRE(p.neighbors == std::vector<int>{1, 2});
        CHECK(p.probability[0] == 0.5);
        CHECK(p.probability[1] == 0.5);
    }
    SUBCASE("tau = (1, 2) with equal eta gives (1/3, 2/3)") {
        TrailState state(map.edge_count(), 0.0);
        state.add(map.edge_index(0, 1), 1.0);
        state.add(map.edge_index(0, 2), 2.0);
        const TransitionProbabilities p =
            antnet::transition_probabilities(state, map, 0, fresh_visited(map, 0), 3, params);
        REQUIRE(p.neighbors == std::vector<int>{1, 2});
        CHECK(p.probability[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(p.probability[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    }
    SUBCASE("dead end is an outcome, not an exception") {
        TrailState state(map.edge_count(), 0.1);
        std::vector<char> visited(map.city_count(), 1);
        const TransitionProbabilities p =
            antnet::transition_probabilities(state, map, 0, visited, 3, params);
        CHECK(p.dead_end());
    }
}

TEST_CASE("transition_probabilities: normalization fuzz") {
    const Roadmap map = antnet::generate_roadmap(30, 100.0, 100.0, 4, 5);
    Rng rng(99);
    int checked = 0;
    while (checked < 10000) {
        TrailState state(map.edge_count(), 0.0);
        for (std::size_t e = 0; e < state.size(); ++e)
            state.add(e, rng.uniform(0.0, 10.0));
        SolverParams params;
        params.alpha = rng.uniform(0.0, 5.0);
        params.beta = rng.uniform(0.0, 5.0);

        const int current = static_cast<int>(rng.uniform_index(map.city_count()));
        std::vector<char> visited(map.city_count(), 0);
        visited[static_cast<std::size_t>(current)] = 1;
        for (std::size_t c = 0; c < map.city_count(); ++c)
            if (static_cast<int>(c) != current && rng.uniform01() < 0.3) visited[c] = 1;
        const int dest = static_cast<int>(rng.uniform_index(map.city_count()));
        if (dest == current) continue;

        const TransitionProbabilities p =
            antnet::transition_probabilities(state, map, current, visited, dest, params);
        if (p.dead_end()) continue;
        double sum = 0.0;
        for (double prob : p.probability) {
            CHECK(prob >= 0.0);
            sum += prob;
        }
        REQUIRE(std::abs(sum - 1.0) < 1e-12);
        ++checked;
    }
}

TEST_CASE("transition_probabilities: monotone pheromone attraction") {
    const Roadmap map = fork_map();
    SolverParams params;
    params.alpha = 1.3;
    params.beta = 2.0;

    double previous = 0.0;
    for (double tau1 : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        TrailState state(map.edge_count(), 0.0);
        state.add(map.edge_index(0, 1), tau1);
        state.add(map.edge_index(0, 2), 1.0);
        const TransitionProbabilities p =
            antnet::transition_probabilities(state, map, 0, fresh_visited(map, 0), 3, params);
        REQUIRE(p.neighbors.size() == 2);
        CHECK(p.probability[0] >= previous);
        previous = p.probability[0];
    }
}

TEST_CASE("transition_probabilities: exact scale invariance") {
    const Roadmap map = fork_map();
    SolverParams params;
    params.alpha = 1.7;
    params.beta = 3.1;

    TrailState state(map.edge_count(), 0.0);
    state.add(0, 0.3);
    state.add(1, 1.1);
    state.add(2, 0.9);
    state.add(3, 2.2);

    // tau scaled by 2^6: probabilities must be bit-identical.
    TrailState scaled(map.edge_count(), 0.0);
    for (std::size_t e = 0; e < state.size(); ++e) scaled.add(e, state.tau(e) * 64.0);

    const auto visited = fresh_visited(map, 0);
    const TransitionProbabilities p0 =
        antnet::transition_probabilities(state, map, 0, visited, 3, params);
    const TransitionProbabilities p1 =
        antnet::transition_probabilities(scaled, map, 0, visited, 3, params);
    REQUIRE(p0.neighbors == p1.neighbors);
    for (std::size_t i = 0; i < p0.probability.size(); ++i)
        CHECK(p0.probability[i] == p1.probability[i]);

    // Coordinates scaled by 2: eta halves exactly, ratios unchanged.
    std::vector<antnet::City> cities;
    for (const antnet::City& c : map.cities()) cities.push_back({c.id, 2.0 * c.x, 2.0 * c.y});
    std::vector<std::pair<int, int>> edges;
    for (const Roadmap::Edge& e : map.edges()) edges.emplace_back(e.u, e.v);
    const Roadmap doubled(cities, edges);
    const TransitionProbabilities p2 =
        antnet::transition_probabilities(state, doubled, 0, visited, 3, params);
    REQUIRE(p0.neighbors == p2.neighbors);
    for (std::size_t i = 0; i < p0.probability.size(); ++i)
        CHECK(p0.probability[i] == p2.probability[i]);
}

TEST_CASE("step: branch selection per the literal rule") {
    const Roadmap map = fork_map();
    TrailState state(map.edge_count(), 0.0);
    state.add(map.edge_index(0, 1), 9.0);  // neighbor 1 dominates
    state.add(map.edge_index(0, 2), 1.0);
    SolverParams params;
    params.alpha = 1.0;
    params.beta = 0.0;

    SUBCASE("q0 = 0: always the greedy argmax") {
        params.q0 = 0.0;
        for (std::uint64_t seed = 0; seed < 500; ++seed) {
            Rng rng(seed);
            const auto next = antnet::step(state, map, 0, fresh_visited(map, 0), 3, params, rng);
            REQUIRE(next.has_value());
            CHECK(*next == 1);
        }
    }
    SUBCASE("q0 = 1: probabilistic draw visits the weaker branch ~10%") {
        params.q0 = 1.0;
        int weaker = 0;
        for (std::uint64_t seed = 0; seed < 2000; ++seed) {
            Rng rng(seed);
            const auto next = antnet::step(state, map, 0, fresh_visited(map, 0), 3, params, rng);
            REQUIRE(next.has_value());
            if (*next == 2) ++weaker;
        }
        // p = 0.1, n = 2000: 3 sigma is about 40.
        CHECK(weaker > 200 - 3 * 41);
        CHECK(weaker < 200 + 3 * 41);
    }
    SUBCASE("greedy ties break to the lowest city id") {
        TrailState even(map.edge_count(), 0.1);
        params.q0 = 0.0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            Rng rng(seed);
            const auto next = antnet::step(even, map, 0, fresh_visited(map, 0), 3, params, rng);
            REQUIRE(next.has_value());
            CHECK(*next == 1);
        }
    }
    SUBCASE("dead end propagates as nullopt") {
        std::vector<char> visited(map.city_count(), 1);
        Rng rng(1);
        CHECK(!antnet::step(state, map, 0, visited, 3, params, rng).has_value());
    }
    SUBCASE("fixed seed replays the same choice") {
        params.q0 = 1.0;
        Rng a(77), b(77);
        const auto first = antnet::step(state, map, 0, fresh_visited(map, 0), 3, params, a);
        const auto second = antnet::step(state, map, 0, fresh_visited(map, 0), 3, params, b);
        REQUIRE(first.has_value());
        REQUIRE(second.has_value());
        CHECK(*first == *second);
    }
}

TEST_CASE("construct_path: forced routes") {
    SUBCASE("two nodes") {
        const Roadmap map({{0, 0.0, 0.0}, {1, 5.0, 0.0}}, {{0, 1}});
        TrailState state(map.edge_count(), 0.1);
        Rng rng(3);
        const antnet::PathResult path =
            antnet::construct_path(state, map, 0, 1, SolverParams{}, rng);
        CHECK(path.complete);
        CHECK(path.nodes == std::vector<int>{0, 1});
        CHECK(path.length == 5.0);
    }
    SUBCASE("path graph forces s-a-d") {
        const Roadmap map({{0, 0.0, 0.0}, {1, 1.0, 0.0}, {2, 2.5, 0.0}},
                          {{0, 1}, {1, 2}});
        TrailState state(map.edge_count(), 0.1);
        Rng rng(3);
        const antnet::PathResult path =
            antnet::construct_path(state, map, 0, 2, SolverParams{}, rng);
        CHECK(path.complete);
        CHECK(path.nodes == std::vector<int>{0, 1, 2});
        CHECK(path.length == map.edge_length(map.edge_index(0, 1)) +
                                 map.edge_length(map.edge_index(1, 2)));
    }
}

TEST_CASE("construct_path: star-graph dead-end rate matches first-step analytics") {
    // Center 0; destination 1; leaves 2..4 dead-end. With beta = 0 and a
    // fresh trail every run, the first step is uniform over 4 neighbors,
    // so P(incomplete) = 3/4.
    const Roadmap map({{0, 0.0, 0.0},
                       {1, 1.0, 0.0},
                       {2, 0.0, 1.0},
                       {3, -1.0, 0.0},
                       {4, 0.0, -1.0}},
                      {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    SolverParams params;
    params.alpha = 1.0;
    params.beta = 0.0;
    params.q0 = 1.0;

    const int runs = 10000;
    int incomplete = 0;
    for (int i = 0; i < runs; ++i) {
        TrailState state(map.edge_count(), 0.1);
        Rng rng(antnet::derive_stream_seed(420, 0, static_cast<std::uint64_t>(i)));
        const antnet::PathResult path = antnet::construct_path(state, map, 0, 1, params, rng);
        if (!path.complete) {
            ++incomplete;
            CHECK(path.nodes.size() == 2);
        }
    }
    // p = 0.75, n = 10000: sigma = sqrt(p(1-p)/n) ~ 0.00433, 3 sigma ~ 130 runs.
    CHECK(incomplete > 7500 - 130);
    CHECK(incomplete < 7500 + 130);
}

TEST_CASE("construct_path: complete paths are simple and exactly summed") {
    const Roadmap map = antnet::generate_roadmap(25, 60.0, 60.0, 3, 21);
    SolverParams params;
    params.beta = 2.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        TrailState state(map.edge_count(), 0.1);
        Rng rng(seed);
        const antnet::PathResult path = antnet::construct_path(state, map, 0, 24, params, rng);
        if (!path.complete) continue;

        std::vector<char> seen(map.city_count(), 0);
        double total = 0.0;
        for (std::size_t i = 0; i < path.nodes.size(); ++i) {
            REQUIRE(!seen[static_cast<std::size_t>(path.nodes[i])]);
            seen[static_cast<std::size_t>(path.nodes[i])] = 1;
            if (i + 1 < path.nodes.size()) {
                const std::size_t e = map.edge_index(path.nodes[i], path.nodes[i + 1]);
                REQUIRE(e != Roadmap::npos);
                total += map.edge_length(e);
            }
        }
        CHECK(path.nodes.front() == 0);
        CHECK(path.nodes.back() == 24);
        CHECK(path.length == total);
    }
}

}  // TEST_SUITE
