#pragma once

#include "dyncolor/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace dyncolor {

/// Simple undirected graph on dense vertex ids 0..n-1, stored as adjacency
/// lists. Edges can only be added.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t vertex_count) : adjacency_(vertex_count) {}

    /// Throws Error{self_loop | duplicate_edge | vertex_out_of_range}.
    static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges);

    /// Throws Error{self_loop | duplicate_edge | vertex_out_of_range}.
    void insert_edge(Vertex u, Vertex v);

    bool has_edge(Vertex u, Vertex v) const;

    std::size_t vertex_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
    std::size_t max_degree() const noexcept { return max_degree_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }

    /// Every edge once, with u < v, in ascending (u, v) order.
    std::vector<Edge> edges() const;

private:
    void check_vertex(Vertex v) const;

    std::vector<std::vector<Vertex>> adjacency_;
    std::size_t edge_count_ = 0;
    std::size_t max_degree_ = 0;
};

} // namespace dyncolor
