#pragma once

// Graph traversals shared by the pure operator API and the ILS run state.
// A store exposes color(v), recolor(v, c) and work(); the traversal code never
// sees how colors are kept.

#include "dyncolor/graph.hpp"
#include "dyncolor/rng.hpp"
#include "dyncolor/types.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dyncolor {

enum class QueueOrder { fifo, lifo, random };

/// Order in which Grundy local search processes pending vertices. The
/// default (FIFO, seeded by ascending id) is the reproducible reference.
struct QueuePolicy {
    QueueOrder order = QueueOrder::fifo;
    std::uint64_t seed = 0;
};

namespace ops {

/// Epoch-stamped markers so that each traversal costs only what it visits.
class Scratch {
public:
    void reserve(std::size_t n)
    {
        if (mark_.size() < n) {
            mark_.resize(n, 0);
            queued_.resize(n, 0);
        }
    }

    std::uint32_t next_epoch()
    {
        if (++epoch_ == 0) {
            std::fill(mark_.begin(), mark_.end(), 0);
            epoch_ = 1;
        }
        return epoch_;
    }
    bool marked(Vertex v) const { return mark_[v] == epoch_; }
    void mark(Vertex v) { mark_[v] = epoch_; }

    std::uint32_t next_color_epoch(std::size_t colors)
    {
        if (color_mark_.size() < colors)
            color_mark_.resize(colors, 0);
        if (++color_epoch_ == 0) {
            std::fill(color_mark_.begin(), color_mark_.end(), 0);
            color_epoch_ = 1;
        }
        return color_epoch_;
    }
    void mark_color(Color c) { color_mark_[c] = color_epoch_; }
    bool color_marked(Color c) const { return color_mark_[c] == color_epoch_; }

    std::vector<std::uint8_t>& queued() { return queued_; }
    std::vector<Vertex>& frontier() { return frontier_; }
    std::vector<Vertex>& pending() { return pending_; }
    std::vector<Vertex>& swap_list() { return swap_list_; }

private:
    std::vector<std::uint32_t> mark_;
    std::uint32_t epoch_ = 0;
    std::vector<std::uint32_t> color_mark_;
    std::uint32_t color_epoch_ = 0;
    std::vector<std::uint8_t> queued_;
    std::vector<Vertex> frontier_;
    std::vector<Vertex> pending_;
    std::vector<Vertex> swap_list_;
};

template <class Store>
Color min_free_color(const Graph& g, const Store& s, Vertex v, Scratch& scratch, WorkCounters& work)
{
    const std::size_t d = g.degree(v);
    scratch.next_color_epoch(d + 2);
    for (Vertex u : g.neighbors(v)) {
        const Color c = s.color(u);
        if (c <= d + 1)
            scratch.mark_color(c);
    }
    work.vertices_touched += 1 + d;
    work.edges_scanned += d;
    Color c = 1;
    while (scratch.color_marked(c))
        ++c;
    return c;
}

/// Appends to `out` the component of `start` in the subgraph induced by
/// colors {i, j}, skipping vertices already marked in the current epoch.
template <class Store>
void collect_component(const Graph& g, const Store& s, Vertex start, Color i, Color j, Scratch& scratch,
                       std::vector<Vertex>& out, WorkCounters& work)
{
    if (scratch.marked(start))
        return;
    auto& stack = scratch.frontier();
    stack.clear();
    scratch.mark(start);
    stack.push_back(start);
    while (!stack.empty()) {
        const Vertex x = stack.back();
        stack.pop_back();
        out.push_back(x);
        ++work.vertices_touched;
        work.edges_scanned += g.degree(x);
        for (Vertex y : g.neighbors(x)) {
            if (scratch.marked(y))
                continue;
            const Color c = s.color(y);
            if (c == i || c == j) {
                scratch.mark(y);
                stack.push_back(y);
            }
        }
    }
}

template <class Store>
void swap_colors(Store& s, std::span<const Vertex> vertices, Color i, Color j)
{
    for (Vertex x : vertices)
        s.recolor(x, s.color(x) == i ? j : i);
}

/// Kempe chain on H_j(v) with i = c(v). j == c(v) is a no-op whose component
/// is {v}. Leaves the swapped component in scratch.swap_list().
template <class Store>
std::span<const Vertex> kempe_chain(const Graph& g, Store& s, Vertex v, Color j, Scratch& scratch)
{
    auto& comp = scratch.swap_list();
    comp.clear();
    const Color i = s.color(v);
    if (j == i) {
        comp.push_back(v);
        return comp;
    }
    scratch.next_epoch();
    collect_component(g, s, v, i, j, scratch, comp, s.work());
    swap_colors(s, comp, i, j);
    return comp;
}

/// Swaps i and j on the union of H_j(u) over all i-colored neighbors u of v,
/// each component visited once.
template <class Store>
std::span<const Vertex> color_elimination(const Graph& g, Store& s, Vertex v, Color i, Color j, Scratch& scratch)
{
    auto& all = scratch.swap_list();
    all.clear();
    scratch.next_epoch();
    s.work().vertices_touched += 1 + g.degree(v);
    s.work().edges_scanned += g.degree(v);
    for (Vertex u : g.neighbors(v))
        if (s.color(u) == i)
            collect_component(g, s, u, i, j, scratch, all, s.work());
    swap_colors(s, all, i, j);
    return all;
}

/// Grundy local search from the given candidates, which must include every
/// non-Grundy vertex and be sorted ascending. Non-Grundy candidates are
/// queued in that order; after each recoloring the neighbors of the vertex
/// are queued unless already pending. Returns the number of recolorings.
template <class Store>
std::size_t grundy_search(const Graph& g, Store& s, std::span<const Vertex> candidates, QueuePolicy policy,
                          Scratch& scratch)
{
    auto& queued = scratch.queued();
    auto& pending = scratch.pending();
    pending.clear();
    WorkCounters& work = s.work();
    for (Vertex v : candidates) {
        if (queued[v])
            continue;
        if (min_free_color(g, s, v, scratch, work) != s.color(v)) {
            queued[v] = 1;
            pending.push_back(v);
        }
    }

    Rng rng(policy.seed);
    std::size_t head = 0;
    std::size_t recolorings = 0;
    auto pop = [&]() -> Vertex {
        Vertex v = 0;
        switch (policy.order) {
        case QueueOrder::fifo:
            v = pending[head++];
            if (head > 1024 && 2 * head > pending.size()) {
                pending.erase(pending.begin(), pending.begin() + static_cast<std::ptrdiff_t>(head));
                head = 0;
            }
            break;
        case QueueOrder::lifo:
            v = pending.back();
            pending.pop_back();
            break;
        case QueueOrder::random: {
            const std::size_t k = rng.below(pending.size());
            v = pending[k];
            pending[k] = pending.back();
            pending.pop_back();
            break;
        }
        }
        queued[v] = 0;
        return v;
    };

    while (head < pending.size()) {
        const Vertex v = pop();
        const Color m = min_free_color(g, s, v, scratch, work);
        if (m == s.color(v))
            continue;
        s.recolor(v, m);
        ++recolorings;
        for (Vertex u : g.neighbors(v))
            if (!queued[u]) {
                queued[u] = 1;
                pending.push_back(u);
            }
    }
    pending.clear();
    return recolorings;
}

} // namespace ops
} // namespace dyncolor
