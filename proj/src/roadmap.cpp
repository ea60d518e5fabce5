#include "antnet/roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "antnet/rng.hpp"
#include "antnet/stats.hpp"

namespace antnet {

namespace {

double euclid(const City& a, const City& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

Roadmap::Roadmap(std::vector<City> cities, std::vector<std::pair<int, int>> edges)
    : cities_(std::move(cities)) {
    const std::size_t n = cities_.size();
    if (n < 2) throw std::invalid_argument("roadmap: needs at least 2 cities");

    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const City& c = cities_[i];
        if (c.id < 0 || static_cast<std::size_t>(c.id) >= n)
            throw std::invalid_argument("roadmap: cities[" + std::to_string(i) +
                                        "].id " + std::to_string(c.id) +
                                        " outside dense range 0.." + std::to_string(n - 1));
        if (seen[static_cast<std::size_t>(c.id)])
            throw std::invalid_argument("roadmap: cities[" + std::to_string(i) +
                                        "].id " + std::to_string(c.id) + " is duplicated");
        seen[static_cast<std::size_t>(c.id)] = true;
        if (!std::isfinite(c.x) || !std::isfinite(c.y))
            throw std::invalid_argument("roadmap: cities[" + std::to_string(i) +
                                        "] has a non-finite coordinate");
    }
    // Store in id order so city(id) is an array lookup.
    std::sort(cities_.begin(), cities_.end(),
              [](const City& a, const City& b) { return a.id < b.id; });

    std::set<std::pair<int, int>> unique_edges;
    edges_.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        if (u < 0 || static_cast<std::size_t>(u) >= n || v < 0 ||
            static_cast<std::size_t>(v) >= n)
            throw std::invalid_argument("roadmap: edges[" + std::to_string(i) +
                                        "] references an unknown city id");
        if (u == v)
            throw std::invalid_argument("roadmap: edges[" + std::to_string(i) +
                                        "] is a self-loop on city " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (!unique_edges.emplace(u, v).second)
            throw std::invalid_argument("roadmap: edges[" + std::to_string(i) +
                                        "] duplicates edge (" + std::to_string(u) + "," +
                                        std::to_string(v) + ")");
        const double len = euclid(cities_[static_cast<std::size_t>(u)],
                                  cities_[static_cast<std::size_t>(v)]);
        if (!(len > 0.0))
            throw std::invalid_argument("roadmap: edges[" + std::to_string(i) +
                                        "] has non-positive length (coincident cities " +
                                        std::to_string(u) + "," + std::to_string(v) + ")");
        edges_.push_back(Edge{u, v, len});
    }
    if (edges_.empty()) throw std::invalid_argument("roadmap: no edges");

    // Canonical edge order: by (u, v).
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });

    // Adjacency grouped by city, neighbors ascending.
    std::vector<std::vector<Adjacent>> adj(n);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        adj[static_cast<std::size_t>(edges_[e].u)].push_back({edges_[e].v, e});
        adj[static_cast<std::size_t>(edges_[e].v)].push_back({edges_[e].u, e});
    }
    adj_offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(adj[i].begin(), adj[i].end(),
                  [](const Adjacent& a, const Adjacent& b) { return a.neighbor < b.neighbor; });
        adj_offsets_[i + 1] = adj_offsets_[i] + adj[i].size();
        adjacency_.insert(adjacency_.end(), adj[i].begin(), adj[i].end());
    }

    // Connectivity (BFS from city 0).
    std::vector<bool> reached(n, false);
    std::queue<int> frontier;
    frontier.push(0);
    reached[0] = true;
    std::size_t count = 1;
    while (!frontier.empty()) {
        const int c = frontier.front();
        frontier.pop();
        for (const Adjacent& a : neighbors(c)) {
            if (!reached[static_cast<std::size_t>(a.neighbor)]) {
                reached[static_cast<std::size_t>(a.neighbor)] = true;
                ++count;
                frontier.push(a.neighbor);
            }
        }
    }
    if (count != n)
        throw std::invalid_argument("roadmap: graph is disconnected (" +
                                    std::to_string(count) + " of " + std::to_string(n) +
                                    " cities reachable from city 0)");
}

std::span<const Roadmap::Adjacent> Roadmap::neighbors(int city) const {
    const auto i = static_cast<std::size_t>(city);
    return {adjacency_.data() + adj_offsets_[i], adj_offsets_[i + 1] - adj_offsets_[i]};
}

double Roadmap::distance(int a, int b) const {
    return euclid(cities_[static_cast<std::size_t>(a)], cities_[static_cast<std::size_t>(b)]);
}

std::size_t Roadmap::edge_index(int u, int v) const {
    for (const Adjacent& a : neighbors(u))
        if (a.neighbor == v) return a.edge_index;
    return npos;
}

Roadmap generate_roadmap(int n_cities, double width, double height,
                         int connectivity_degree, std::uint64_t seed) {
    if (n_cities < 2) throw std::invalid_argument("generate_roadmap: n_cities must be >= 2");
    if (!(width > 0.0) || !(height > 0.0))
        throw std::invalid_argument("generate_roadmap: area dimensions must be positive");
    if (connectivity_degree < 1)
        throw std::invalid_argument("generate_roadmap: connectivity_degree must be >= 1");

    const auto n = static_cast<std::size_t>(n_cities);
    Rng rng(splitmix64(seed));
    std::vector<City> cities(n);
    for (std::size_t i = 0; i < n; ++i) {
        cities[i].id = static_cast<int>(i);
        cities[i].x = rng.uniform(0.0, width);
        cities[i].y = rng.uniform(0.0, height);
    }

    const int k = std::min(connectivity_degree, n_cities - 1);
    std::set<std::pair<int, int>> edge_set;
    std::vector<std::pair<double, int>> order(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        order.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            order.emplace_back(euclid(cities[i], cities[j]), static_cast<int>(j));
        }
        std::sort(order.begin(), order.end());
        for (int t = 0; t < k; ++t) {
            const int j = order[static_cast<std::size_t>(t)].second;
            edge_set.emplace(std::min<int>(static_cast<int>(i), j),
                             std::max<int>(static_cast<int>(i), j));
        }
    }

    // Union-find over the kNN edges, then join remaining components with
    // the shortest available cross edge until one component is left.
    std::vector<int> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        return true;
    };
    std::size_t components = n;
    for (const auto& [u, v] : edge_set)
        if (unite(u, v)) --components;

    while (components > 1) {
        double best_len = std::numeric_limits<double>::infinity();
        std::pair<int, int> best_pair{-1, -1};
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (find(static_cast<int>(i)) == find(static_cast<int>(j))) continue;
                const double len = euclid(cities[i], cities[j]);
                if (len < best_len) {
                    best_len = len;
                    best_pair = {static_cast<int>(i), static_cast<int>(j)};
                }
            }
        }
        edge_set.emplace(best_pair);
        unite(best_pair.first, best_pair.second);
        --components;
    }

    return Roadmap(std::move(cities),
                   std::vector<std::pair<int, int>>(edge_set.begin(), edge_set.end()));
}

ShortestPath dijkstra(const Roadmap& map, int source, int dest) {
    if (!map.valid_city(source) || !map.valid_city(dest))
        throw std::invalid_argument("dijkstra: invalid city id");
    if (source == dest) throw std::invalid_argument("dijkstra: source equals destination");

    const std::size_t n = map.city_count();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<int> parent(n, -1);
    using Entry = std::pair<double, int>;  // (distance, city) -- city id breaks ties
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;

    dist[static_cast<std::size_t>(source)] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;  // stale entry
        if (u == dest) break;
        for (const Roadmap::Adjacent& a : map.neighbors(u)) {
            const double nd = d + map.edge_length(a.edge_index);
            if (nd < dist[static_cast<std::size_t>(a.neighbor)]) {
                dist[static_cast<std::size_t>(a.neighbor)] = nd;
                parent[static_cast<std::size_t>(a.neighbor)] = u;
                heap.emplace(nd, a.neighbor);
            }
        }
    }

    if (!std::isfinite(dist[static_cast<std::size_t>(dest)]))
        throw std::runtime_error("dijkstra: destination unreachable");

    ShortestPath result;
    for (int c = dest; c != -1; c = parent[static_cast<std::size_t>(c)])
        result.nodes.push_back(c);
    std::reverse(result.nodes.begin(), result.nodes.end());
    // Recompute the length in path order so it matches a source-to-dest
    // edge-length sum exactly.
    result.length = 0.0;
    for (std::size_t i = 0; i + 1 < result.nodes.size(); ++i)
        result.length +=
            map.edge_length(map.edge_index(result.nodes[i], result.nodes[i + 1]));
    return result;
}

EnvFeatures extract_features(const Roadmap& map) {
    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;
    for (const City& c : map.cities()) {
        min_x = std::min(min_x, c.x);
        max_x = std::max(max_x, c.x);
        min_y = std::min(min_y, c.y);
        max_y = std::max(max_y, c.y);
    }
    const double area = (max_x - min_x) * (max_y - min_y);
    if (!(area > 0.0))
        throw std::invalid_argument(
            "extract_features: degenerate bounding box (all cities collinear or coincident)");

    std::vector<double> smallest_arc(map.city_count());
    for (std::size_t i = 0; i < map.city_count(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (const Roadmap::Adjacent& a : map.neighbors(static_cast<int>(i)))
            best = std::min(best, map.edge_length(a.edge_index));
        smallest_arc[i] = best;
    }

    EnvFeatures f;
    f.node_density = static_cast<double>(map.city_count()) * 200.0 / area;
    f.smallest_arc_stddev = population_stddev(smallest_arc);
    return f;
}

}  // namespace antnet
