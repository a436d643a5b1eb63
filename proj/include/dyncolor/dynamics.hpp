#pragma once

#include "dyncolor/coloring.hpp"
#include "dyncolor/graph.hpp"
#include "dyncolor/instances.hpp"
#include "dyncolor/rng.hpp"
#include "dyncolor/types.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace dyncolor {

enum class Insertion {
    none,
    /// Withheld cut edges of a worst-case path or cycle.
    path_join,
    /// Withheld root edge of a worst-case complete binary tree.
    tree_root_edge,
    /// Withheld root edges of a worst-case depth-2 star.
    depth2_star_complete,
    /// Withheld gadget edges of a worst-case planar grid.
    planar_gadgets,
    /// Withheld uniformly chosen triangulation edges of a planar grid.
    random_planar,
    /// Conflicting, bipartiteness-preserving edges chosen at random.
    random_bipartite,
    /// Withheld chained batch of a nested bipartite instance.
    nested_bipartite,
    explicit_edges,
};

std::string_view to_string(Insertion i) noexcept;
std::optional<Insertion> parse_insertion(std::string_view name) noexcept;

struct ScenarioSpec {
    InstanceSpec base;
    Insertion insertion = Insertion::none;
    /// Batch size for random_bipartite; the scripted kinds take theirs from
    /// base.params.T.
    std::size_t T = 1;
    std::vector<Edge> edges;
    /// random_bipartite only: endpoints pairwise at distance >= 3 with
    /// supported neighborhoods, so Grundy local search creates exactly color 3.
    bool independent_endpoints = false;
};

struct Scenario {
    /// Post-insertion graph.
    Graph graph;
    /// Pre-insertion coloring, untouched by the insertion.
    Coloring coloring;
    std::vector<Edge> inserted;
    /// Requested batch size; `inserted` may be smaller when the class
    /// allows fewer edges.
    std::size_t requested = 0;
    Color target_max_color = 2;
};

/// Inserts the batch described by `spec` into `inst` as one atomic update.
/// Throws Error{edge_exists} for an explicit edge already present and
/// Error{class_violated} if the family's class is not preserved.
Scenario apply_scenario(Instance inst, const ScenarioSpec& spec, Rng& rng);

/// generate() followed by apply_scenario().
Scenario make_scenario(const ScenarioSpec& spec, Rng& rng);

struct BatchOptions {
    bool independent_endpoints = false;
};

/// Up to T new edges, each conflicting under `c`, such that g stays bipartite.
/// Returns the largest feasible batch found (exactly T when possible).
/// Throws Error{insufficient_components} if no such edge exists and
/// Error{class_violated} if g is not bipartite to begin with.
std::vector<Edge> build_bipartite_conflict_batch(const Graph& g, const Coloring& c, std::size_t T, Rng& rng,
                                                 BatchOptions options = {});

} // namespace dyncolor
