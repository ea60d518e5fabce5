#ifndef ANTNET_ROADMAP_HPP
#define ANTNET_ROADMAP_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace antnet {

struct City {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
};

/// Weighted undirected geometric graph of cities. Edge lengths are the
/// Euclidean distances between endpoint coordinates. Construction
/// validates all invariants (dense unique ids, no self-loops, no
/// duplicate edges, connectivity, strictly positive lengths) and throws
/// std::invalid_argument with a field-specific message on violation.
/// Immutable after construction; safe for concurrent reads.
class Roadmap {
public:
    struct Edge {
        int u = 0;  // u < v
        int v = 0;
        double length = 0.0;
    };

    struct Adjacent {
        int neighbor = 0;
        std::size_t edge_index = 0;
    };

    Roadmap(std::vector<City> cities, std::vector<std::pair<int, int>> edges);

    std::size_t city_count() const { return cities_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<City>& cities() const { return cities_; }
    const City& city(int id) const { return cities_[static_cast<std::size_t>(id)]; }
    const std::vector<Edge>& edges() const { return edges_; }
    double edge_length(std::size_t edge_index) const { return edges_[edge_index].length; }

    /// Neighbors of a city in ascending id order.
    std::span<const Adjacent> neighbors(int city) const;

    /// Straight-line distance between any two cities (not necessarily
    /// joined by an edge).
    double distance(int a, int b) const;

    /// Index of the undirected edge (u, v), or npos if absent.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t edge_index(int u, int v) const;

    bool valid_city(int id) const {
        return id >= 0 && static_cast<std::size_t>(id) < cities_.size();
    }

private:
    std::vector<City> cities_;
    std::vector<Edge> edges_;
    std::vector<Adjacent> adjacency_;       // grouped by city
    std::vector<std::size_t> adj_offsets_;  // city_count()+1 offsets into adjacency_
};

/// Uniform-random cities in [0,width) x [0,height), each linked to its
/// `connectivity_degree` nearest neighbors, then augmented with the
/// minimum number of extra edges until connected. Deterministic for a
/// fixed seed.
Roadmap generate_roadmap(int n_cities, double width, double height,
                         int connectivity_degree, std::uint64_t seed);

struct ShortestPath {
    std::vector<int> nodes;  // source first, dest last
    double length = 0.0;
};

/// Exact shortest path between two distinct cities.
ShortestPath dijkstra(const Roadmap& map, int source, int dest);

/// Environment features used by the parameter predictor.
struct EnvFeatures {
    double node_density = 0.0;        // nodes per 200 square units of bounding box
    double smallest_arc_stddev = 0.0; // population stddev of per-node min incident edge length
};

EnvFeatures extract_features(const Roadmap& map);

}  // namespace antnet

#endif
