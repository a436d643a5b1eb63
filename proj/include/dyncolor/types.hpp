#pragma once

#include <cstdint>

namespace dyncolor {

using Vertex = std::uint32_t;
/// Colors are 1-based; 0 is never a valid color.
using Color = std::uint32_t;

struct Edge {
    Vertex u;
    Vertex v;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Cost-model counters accumulated by every algorithm step.
struct WorkCounters {
    std::uint64_t vertices_touched = 0;
    std::uint64_t edges_scanned = 0;

    std::uint64_t total() const noexcept { return vertices_touched + edges_scanned; }

    WorkCounters& operator+=(const WorkCounters& o) noexcept
    {
        vertices_touched += o.vertices_touched;
        edges_scanned += o.edges_scanned;
        return *this;
    }
};

} // namespace dyncolor
