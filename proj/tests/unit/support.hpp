#pragma once

// Test-side reference computations, written independently of the library's
// incremental structures.

#include "dyncolor/coloring.hpp"
#include "dyncolor/error.hpp"
#include "dyncolor/graph.hpp"
#include "dyncolor/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace testsupport {

using namespace dyncolor;

inline Graph path(std::size_t n)
{
    Graph g(n);
    for (Vertex v = 0; v + 1 < n; ++v)
        g.insert_edge(v, v + 1);
    return g;
}

inline Graph cycle(std::size_t n)
{
    Graph g = path(n);
    g.insert_edge(static_cast<Vertex>(n - 1), 0);
    return g;
}

inline Coloring colors(std::vector<Color> c, Color k = 0)
{
    return Coloring(std::move(c), k == 0 ? Palette::unbounded() : Palette::of_size(k));
}

/// Code of the Error thrown by fn, or nullopt if it returns normally.
template <class F>
std::optional<Errc> error_code(F&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

/// Same colors under the bounded palette {1..k}.
inline Coloring with_palette(const Coloring& c, Color k)
{
    return Coloring(std::vector<Color>(c.values().begin(), c.values().end()),
                    k == 0 ? Palette::unbounded() : Palette::of_size(k));
}

inline std::size_t ref_conflicts(const Graph& g, std::span<const Color> c)
{
    std::size_t total = 0;
    for (const Edge& e : g.edges())
        if (c[e.u] == c[e.v])
            ++total;
    return total;
}

inline std::set<Vertex> ref_conflicting_vertices(const Graph& g, std::span<const Color> c)
{
    std::set<Vertex> out;
    for (const Edge& e : g.edges())
        if (c[e.u] == c[e.v]) {
            out.insert(e.u);
            out.insert(e.v);
        }
    return out;
}

inline std::map<Color, std::size_t> ref_histogram(std::span<const Color> c)
{
    std::map<Color, std::size_t> h;
    for (Color x : c)
        ++h[x];
    return h;
}

inline Color ref_mex(const Graph& g, std::span<const Color> c, Vertex v)
{
    std::set<Color> used;
    for (Vertex u : g.neighbors(v))
        used.insert(c[u]);
    Color m = 1;
    while (used.count(m))
        ++m;
    return m;
}

inline bool ref_is_grundy(const Graph& g, std::span<const Color> c)
{
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (ref_mex(g, c, v) != c[v])
            return false;
    return true;
}

/// Erdos-Renyi G(n, p).
inline Graph random_graph(std::size_t n, double p, Rng& rng)
{
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.bernoulli(p))
                g.insert_edge(u, v);
    return g;
}

inline std::vector<Color> random_colors(std::size_t n, Color k, Rng& rng)
{
    std::vector<Color> c(n);
    for (auto& x : c)
        x = static_cast<Color>(rng.between(1, k));
    return c;
}

/// Connected components of the subgraph induced by colors {i, j}, by
/// repeated relaxation rather than a traversal.
inline std::vector<int> ref_two_color_components(const Graph& g, std::span<const Color> c, Color i, Color j)
{
    const std::size_t n = g.vertex_count();
    std::vector<int> label(n, -1);
    for (Vertex v = 0; v < n; ++v)
        if (c[v] == i || c[v] == j)
            label[v] = static_cast<int>(v);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Edge& e : g.edges()) {
            if (label[e.u] < 0 || label[e.v] < 0)
                continue;
            const int m = std::min(label[e.u], label[e.v]);
            if (label[e.u] != m || label[e.v] != m) {
                label[e.u] = label[e.v] = m;
                changed = true;
            }
        }
    }
    return label;
}

/// Number of standard deviations between an observed count and its binomial
/// expectation.
inline double z_score(std::size_t observed, std::size_t trials, double p)
{
    const double mean = static_cast<double>(trials) * p;
    const double sd = std::sqrt(static_cast<double>(trials) * p * (1 - p));
    return (static_cast<double>(observed) - mean) / sd;
}

} // namespace testsupport
