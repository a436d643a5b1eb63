#pragma once

#include "dyncolor/coloring.hpp"
#include "dyncolor/graph.hpp"
#include "dyncolor/occurrence.hpp"
#include "dyncolor/types.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace dyncolor {

struct BipartiteCheck {
    bool bipartite = false;
    /// Colors 1/2 per vertex when bipartite.
    std::vector<Color> two_coloring;
    /// Closed walk v0, v1, ..., vk with vk adjacent to v0 and odd length when
    /// not bipartite.
    std::vector<Vertex> odd_cycle;
};

/// BFS 2-coloring in O(|V| + |E|).
BipartiteCheck is_bipartite(const Graph& g);

inline constexpr std::size_t grundy_bruteforce_limit = 12;

/// Exact Grundy number by dynamic programming over vertex subsets: the first
/// color class of a Grundy coloring is a maximal independent set and the
/// remainder is a Grundy coloring of what is left. Throws Error{too_large}
/// above grundy_bruteforce_limit vertices.
Color grundy_number_bruteforce(const Graph& g);

enum class TreeClassKind { opt, a_i, other };

struct TreeClass {
    TreeClassKind kind = TreeClassKind::other;
    /// Depth of the parent endpoint of the single conflicting edge (a_i only).
    std::size_t depth = 0;

    friend bool operator==(const TreeClass&, const TreeClass&) = default;
};

/// Classifies a coloring of a complete binary tree (root: the unique vertex
/// of degree 2). Throws Error{not_tree_instance} if g is not one.
TreeClass classify_tree_conflict(const Graph& g, const Coloring& c);

struct PassageTime {
    /// Reduced fraction "p/q" when exact arithmetic was used, else empty.
    std::string exact;
    double value = 0;
    bool exact_arithmetic = false;
};

inline constexpr std::size_t ehrenfest_exact_limit = 20;

/// Expected number of steps of the N-ball Ehrenfest chain started at `start`
/// until it first enters `targets` (at least one step is always taken),
/// conditioned on entering `targets` before any state of `forbidden`.
/// Exact rationals for N <= ehrenfest_exact_limit, 128-bit floats beyond.
/// Throws Error{precondition_violated} for odd or small N or states outside
/// 0..N, and Error{singular_system} when the targets cannot be reached.
PassageTime ehrenfest_first_passage(std::size_t N, std::size_t start, const std::vector<std::size_t>& targets,
                                    const std::vector<std::size_t>& forbidden = {});

struct Recount {
    std::size_t conflicts = 0;
    ColorOccurrence occurrence;
    bool grundy = false;
};

/// From-scratch recomputation of every incrementally maintained quantity.
Recount recount_all(const Graph& g, const Coloring& c);

} // namespace dyncolor
