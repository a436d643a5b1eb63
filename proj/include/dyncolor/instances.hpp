#pragma once

#include "dyncolor/coloring.hpp"
#include "dyncolor/graph.hpp"
#include "dyncolor/rng.hpp"
#include "dyncolor/types.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dyncolor {

enum class Family {
    path,
    cycle,
    complete_binary_tree,
    depth2_star,
    forest_tn,
    random_bipartite,
    planar_grid,
    nested_bipartite,
    custom,
};

enum class ColoringMode { proper_canonical, proper_inverted, worst_case, random };

std::string_view to_string(Family f) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;
std::string_view to_string(ColoringMode m) noexcept;
std::optional<ColoringMode> parse_coloring_mode(std::string_view name) noexcept;

struct InstanceParams {
    /// Number of scripted insertions the worst case prepares (path cuts,
    /// detached star branches, planar gadgets, nested batch size).
    std::size_t T = 1;
    double edge_probability = 0.3;
    /// Size of the first part of a random bipartite graph; 0 means n/2.
    std::size_t part_a = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    /// Palette size for the random coloring mode.
    Color colors = 2;
    /// Edge-list file for the custom family.
    std::string file;
};

struct InstanceSpec {
    Family family = Family::path;
    std::size_t n = 0;
    ColoringMode mode = ColoringMode::proper_canonical;
    InstanceParams params;
};

struct Instance {
    /// Pre-insertion graph.
    Graph graph;
    /// Proper on `graph` in every mode except random.
    Coloring coloring;
    /// Edges held back for the scripted batch insertion.
    std::vector<Edge> withheld;
    /// Largest color of the optimum a run has to rediscover.
    Color target_max_color = 2;
};

/// Throws Error{incompatible_size} when n and family disagree and
/// Error{scenario_generation_failed} if a randomized construction gives up.
Instance generate(const InstanceSpec& spec, Rng& rng);

struct PlanarGrid {
    Graph graph;
    /// Greedy coloring in row-major order, at most 5 colors.
    Coloring coloring;
    /// true: diagonals (r,c)-(r+1,c+1); false: (r,c+1)-(r+1,c).
    bool main_diagonal = true;
};

/// Triangulated rows x cols grid with vertex id r*cols + c; planar with
/// maximum degree at most 6. Throws Error{incompatible_size} below 2x2.
PlanarGrid generate_planar_deg6(std::size_t rows, std::size_t cols);

/// Heap-numbered complete binary tree helpers: depth of vertex v.
std::size_t heap_depth(Vertex v) noexcept;

/// Edge-list text: "n m", m lines "u v", optional "c c_1 ... c_n".
struct EdgeListFile {
    Graph graph;
    std::optional<std::vector<Color>> colors;
};

/// Throws Error{parse_error} or graph construction errors.
EdgeListFile read_edge_list(std::string_view text);
std::string write_edge_list(const Graph& g, const Coloring* c = nullptr);

} // namespace dyncolor
