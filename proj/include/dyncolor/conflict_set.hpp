#pragma once

#include "dyncolor/indexed_set.hpp"
#include "dyncolor/rng.hpp"
#include "dyncolor/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace dyncolor {

class Graph;
class Coloring;

/// Flags of conflicting vertices backed by a compact array for O(1) uniform
/// sampling, plus the total number of conflicting edges.
class ConflictSet {
public:
    ConflictSet() = default;

    /// Full rebuild in O(|V| + |E|).
    static ConflictSet rebuild(const Graph& g, std::span<const Color> colors);
    static ConflictSet rebuild(const Graph& g, const Coloring& c);

    /// `colors` already holds v's new color; the set was consistent with
    /// `old_color` at v. Touches v and its neighbors only. Returns the number
    /// of adjacency entries scanned.
    std::size_t on_recolor(const Graph& g, std::span<const Color> colors, Vertex v, Color old_color);

    bool flagged(Vertex v) const { return members_.contains(v); }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    std::size_t conflict_edge_count() const noexcept { return conflict_edges_; }
    std::span<const Vertex> members() const noexcept { return members_.members(); }
    std::size_t position(Vertex v) const { return members_.position(v); }
    /// Number of neighbors of v sharing its color.
    std::size_t conflict_degree(Vertex v) const { return conflict_degree_[v]; }

    /// Uniform over flagged vertices. Throws Error{empty_conflict_set}.
    Vertex sample(Rng& rng) const;

private:
    void set_degree(Vertex v, std::size_t d);

    IndexedSet members_;
    std::vector<std::size_t> conflict_degree_;
    std::size_t conflict_edges_ = 0;
};

} // namespace dyncolor
