#include "dyncolor/conflict_set.hpp"

#include "dyncolor/coloring.hpp"
#include "dyncolor/error.hpp"
#include "dyncolor/graph.hpp"

namespace dyncolor {

ConflictSet ConflictSet::rebuild(const Graph& g, std::span<const Color> colors)
{
    ConflictSet cs;
    const std::size_t n = g.vertex_count();
    cs.members_ = IndexedSet(n);
    cs.conflict_degree_.assign(n, 0);
    std::size_t twice_edges = 0;
    for (Vertex v = 0; v < n; ++v) {
        std::size_t d = 0;
        for (Vertex u : g.neighbors(v))
            if (colors[u] == colors[v])
                ++d;
        cs.conflict_degree_[v] = d;
        twice_edges += d;
        if (d > 0)
            cs.members_.insert(v);
    }
    cs.conflict_edges_ = twice_edges / 2;
    return cs;
}

ConflictSet ConflictSet::rebuild(const Graph& g, const Coloring& c)
{
    return rebuild(g, c.values());
}

void ConflictSet::set_degree(Vertex v, std::size_t d)
{
    conflict_degree_[v] = d;
    if (d > 0)
        members_.insert(v);
    else
        members_.erase(v);
}

std::size_t ConflictSet::on_recolor(const Graph& g, std::span<const Color> colors, Vertex v,
                                    Color old_color)
{
    const Color now = colors[v];
    if (now == old_color)
        return 0;
    std::size_t own = 0;
    for (Vertex u : g.neighbors(v)) {
        if (colors[u] == old_color) {
            set_degree(u, conflict_degree_[u] - 1);
            --conflict_edges_;
        } else if (colors[u] == now) {
            set_degree(u, conflict_degree_[u] + 1);
            ++conflict_edges_;
            ++own;
        }
    }
    set_degree(v, own);
    return g.degree(v);
}

Vertex ConflictSet::sample(Rng& rng) const
{
    if (members_.empty())
        throw Error(Errc::empty_conflict_set, "no conflicting vertex to sample");
    return members_.sample(rng);
}

} // namespace dyncolor
