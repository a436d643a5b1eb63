#include "dyncolor/coloring.hpp"

#include "dyncolor/error.hpp"
#include "dyncolor/graph.hpp"

#include <algorithm>
#include <string>

namespace dyncolor {

namespace {

void check_color(Color c, Color max_allowed, Vertex v)
{
    if (c < 1 || c > max_allowed)
        throw Error(Errc::invalid_color, "vertex " + std::to_string(v) + " has color " +
                                             std::to_string(c) + ", allowed 1.." +
                                             std::to_string(max_allowed));
}

} // namespace

Coloring::Coloring(std::vector<Color> colors, Palette palette)
    : colors_(std::move(colors)), palette_(palette)
{
    const Color max_allowed = palette_.max_allowed(colors_.size());
    for (Vertex v = 0; v < colors_.size(); ++v)
        check_color(colors_[v], max_allowed, v);
}

void Coloring::set(Vertex v, Color c)
{
    check_color(c, palette_.max_allowed(colors_.size()), v);
    colors_[v] = c;
}

Color Coloring::max_color() const noexcept
{
    return colors_.empty() ? 0 : *std::max_element(colors_.begin(), colors_.end());
}

std::size_t count_conflicts(const Graph& g, const Coloring& c)
{
    std::size_t conflicts = 0;
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v : g.neighbors(u))
            if (u < v && c[u] == c[v])
                ++conflicts;
    return conflicts;
}

Color min_free_color(const Graph& g, std::span<const Color> colors, Vertex v)
{
    const auto nb = g.neighbors(v);
    // The answer is at most deg(v) + 1, so colors above that are irrelevant.
    std::vector<bool> used(nb.size() + 2, false);
    for (Vertex u : nb)
        if (colors[u] < used.size())
            used[colors[u]] = true;
    Color c = 1;
    while (used[c])
        ++c;
    return c;
}

bool is_grundy_vertex(const Graph& g, std::span<const Color> colors, Vertex v)
{
    return colors[v] == min_free_color(g, colors, v);
}

bool is_grundy_coloring(const Graph& g, const Coloring& c)
{
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!is_grundy_vertex(g, c.values(), v))
            return false;
    return true;
}

bool is_proper(const Graph& g, const Coloring& c)
{
    return count_conflicts(g, c) == 0;
}

} // namespace dyncolor
