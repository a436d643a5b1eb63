#pragma once

#include "dyncolor/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace dyncolor {

class Graph;

/// Bounded(k) allows colors 1..k; Unbounded allows 1..n.
struct Palette {
    bool bounded = false;
    Color k = 0;

    static Palette of_size(Color k) noexcept { return {true, k}; }
    static Palette unbounded() noexcept { return {false, 0}; }

    Color max_allowed(std::size_t vertex_count) const noexcept
    {
        return bounded ? k : static_cast<Color>(vertex_count);
    }

    friend bool operator==(const Palette&, const Palette&) = default;
};

/// Vertex -> color map. Construction validates every entry against the palette.
class Coloring {
public:
    Coloring() = default;
    /// Throws Error{invalid_color} when a value is outside the palette.
    Coloring(std::vector<Color> colors, Palette palette);

    static Coloring uniform(std::size_t n, Color c, Palette palette)
    {
        return Coloring(std::vector<Color>(n, c), palette);
    }

    std::size_t size() const noexcept { return colors_.size(); }
    Color operator[](Vertex v) const { return colors_[v]; }
    const Palette& palette() const noexcept { return palette_; }
    std::span<const Color> values() const noexcept { return colors_; }

    /// Throws Error{invalid_color}.
    void set(Vertex v, Color c);

    Color max_color() const noexcept;

    friend bool operator==(const Coloring& a, const Coloring& b) { return a.colors_ == b.colors_; }

private:
    std::vector<Color> colors_;
    Palette palette_;
};

std::size_t count_conflicts(const Graph& g, const Coloring& c);

/// Smallest color not used by any neighbor of v.
Color min_free_color(const Graph& g, std::span<const Color> colors, Vertex v);

bool is_grundy_vertex(const Graph& g, std::span<const Color> colors, Vertex v);
bool is_grundy_coloring(const Graph& g, const Coloring& c);
bool is_proper(const Graph& g, const Coloring& c);

} // namespace dyncolor
