#include "dyncolor/dynamics.hpp"

#include "dyncolor/error.hpp"
#include "dyncolor/oracles.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <utility>

namespace dyncolor {

namespace {

constexpr std::array insertion_names{
    std::pair{Insertion::none, "none"},
    std::pair{Insertion::path_join, "path_join"},
    std::pair{Insertion::tree_root_edge, "tree_root_edge"},
    std::pair{Insertion::depth2_star_complete, "depth2_star_complete"},
    std::pair{Insertion::planar_gadgets, "planar_gadgets"},
    std::pair{Insertion::random_planar, "random_planar"},
    std::pair{Insertion::random_bipartite, "random_bipartite"},
    std::pair{Insertion::nested_bipartite, "nested_bipartite"},
    std::pair{Insertion::explicit_edges, "explicit"},
};

/// Union-find over vertices tracking the side of each vertex relative to
/// its root, so that bipartiteness survives every union.
class ParityUnionFind {
public:
    explicit ParityUnionFind(std::size_t n) : parent_(n), parity_(n, 0)
    {
        std::iota(parent_.begin(), parent_.end(), Vertex{0});
    }

    std::pair<Vertex, int> find(Vertex v)
    {
        int p = 0;
        Vertex r = v;
        while (parent_[r] != r) {
            p ^= parity_[r];
            r = parent_[r];
        }
        // Path compression with parity fix-up.
        int acc = p;
        while (parent_[v] != r) {
            const Vertex next = parent_[v];
            const int here = parity_[v];
            parent_[v] = r;
            parity_[v] = acc;
            acc ^= here;
            v = next;
        }
        return {r, p};
    }

    /// Would an edge {u, v} keep the union bipartite?
    bool compatible(Vertex u, Vertex v)
    {
        const auto [ru, pu] = find(u);
        const auto [rv, pv] = find(v);
        return ru != rv || pu != pv;
    }

    /// Records edge {u, v}; returns false if it closes an odd cycle.
    bool join(Vertex u, Vertex v)
    {
        const auto [ru, pu] = find(u);
        const auto [rv, pv] = find(v);
        if (ru == rv)
            return pu != pv;
        parent_[ru] = rv;
        parity_[ru] = pu ^ pv ^ 1;
        return true;
    }

private:
    std::vector<Vertex> parent_;
    std::vector<int> parity_;
};

bool bipartite_family(Family f)
{
    return f != Family::planar_grid && f != Family::custom;
}

void require(bool ok, Insertion kind, const InstanceSpec& base, std::initializer_list<Family> families)
{
    if (!ok || std::find(families.begin(), families.end(), base.family) == families.end())
        throw Error(Errc::class_violated,
                    fmt::format("insertion '{}' needs a worst-case instance of a matching family, got {} / {}",
                                to_string(kind), to_string(base.family), to_string(base.mode)));
}

} // namespace

std::string_view to_string(Insertion i) noexcept
{
    for (const auto& [k, name] : insertion_names)
        if (k == i)
            return name;
    return "?";
}

std::optional<Insertion> parse_insertion(std::string_view name) noexcept
{
    for (const auto& [k, s] : insertion_names)
        if (s == name)
            return k;
    return std::nullopt;
}

std::vector<Edge> build_bipartite_conflict_batch(const Graph& g, const Coloring& c, std::size_t T, Rng& rng,
                                                 BatchOptions options)
{
    const std::size_t n = g.vertex_count();
    ParityUnionFind uf(n);
    for (const Edge& e : g.edges())
        if (!uf.join(e.u, e.v))
            throw Error(Errc::class_violated, "graph is not bipartite");
    if (T == 0)
        return {};

    std::set<std::pair<Vertex, Vertex>> chosen;
    // Vertices within distance 2 of a chosen endpoint (independent mode).
    std::vector<bool> blocked(n, false);

    auto supported = [&](Vertex x) {
        if (g.degree(x) == 0)
            return false;
        if (c[x] != 1)
            return true;
        for (Vertex u : g.neighbors(x))
            if (g.degree(u) < 2)
                return false;
        return true;
    };
    auto ok = [&](Vertex x, Vertex y) {
        if (x == y || c[x] != c[y] || g.has_edge(x, y))
            return false;
        if (chosen.count({std::min(x, y), std::max(x, y)}))
            return false;
        if (options.independent_endpoints) {
            if (blocked[x] || blocked[y] || !supported(x) || !supported(y))
                return false;
            // x and y must be at distance >= 3 from each other as well.
            for (Vertex u : g.neighbors(x)) {
                if (u == y)
                    return false;
                for (Vertex w : g.neighbors(u))
                    if (w == y)
                        return false;
            }
        }
        return uf.compatible(x, y);
    };
    std::vector<Edge> out;
    auto take = [&](Vertex x, Vertex y) {
        uf.join(x, y);
        chosen.insert({std::min(x, y), std::max(x, y)});
        out.push_back({std::min(x, y), std::max(x, y)});
        if (options.independent_endpoints)
            for (Vertex e : {x, y}) {
                blocked[e] = true;
                for (Vertex u : g.neighbors(e)) {
                    blocked[u] = true;
                    for (Vertex w : g.neighbors(u))
                        blocked[w] = true;
                }
            }
    };

    const std::size_t attempts = 200 * T + 1000;
    for (std::size_t a = 0; a < attempts && out.size() < T && n >= 2; ++a) {
        const auto x = static_cast<Vertex>(rng.below(n));
        const auto y = static_cast<Vertex>(rng.below(n));
        if (ok(x, y))
            take(x, y);
    }
    if (out.size() < T) {
        std::vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), Vertex{0});
        for (std::size_t i = n; i > 1; --i)
            std::swap(order[i - 1], order[rng.below(i)]);
        for (std::size_t i = 0; i < n && out.size() < T; ++i)
            for (std::size_t j = i + 1; j < n && out.size() < T; ++j)
                if (ok(order[i], order[j]))
                    take(order[i], order[j]);
    }
    if (out.empty())
        throw Error(Errc::insufficient_components,
                    "no conflicting edge can be added without breaking bipartiteness");
    return out;
}

Scenario apply_scenario(Instance inst, const ScenarioSpec& spec, Rng& rng)
{
    const InstanceSpec& base = spec.base;
    const bool worst = base.mode == ColoringMode::worst_case;
    std::vector<Edge> batch;
    std::size_t requested = 0;
    switch (spec.insertion) {
    case Insertion::none: break;
    case Insertion::path_join:
        require(worst, spec.insertion, base, {Family::path, Family::cycle});
        batch = inst.withheld;
        requested = base.params.T;
        break;
    case Insertion::tree_root_edge:
        require(worst, spec.insertion, base, {Family::complete_binary_tree});
        batch = inst.withheld;
        requested = 1;
        break;
    case Insertion::depth2_star_complete:
        require(worst, spec.insertion, base, {Family::depth2_star, Family::forest_tn});
        batch = inst.withheld;
        requested = batch.size();
        break;
    case Insertion::planar_gadgets:
        require(worst, spec.insertion, base, {Family::planar_grid});
        batch = inst.withheld;
        requested = base.params.T;
        break;
    case Insertion::random_planar:
        require(!worst, spec.insertion, base, {Family::planar_grid});
        batch = inst.withheld;
        requested = base.params.T;
        break;
    case Insertion::nested_bipartite:
        require(true, spec.insertion, base, {Family::nested_bipartite});
        batch = inst.withheld;
        requested = base.params.T;
        break;
    case Insertion::random_bipartite:
        if (!bipartite_family(base.family))
            throw Error(Errc::class_violated, "random bipartite insertion needs a bipartite family");
        batch = build_bipartite_conflict_batch(inst.graph, inst.coloring, spec.T, rng,
                                               {spec.independent_endpoints});
        requested = spec.T;
        break;
    case Insertion::explicit_edges:
        batch = spec.edges;
        requested = batch.size();
        break;
    }

    for (const Edge& e : batch) {
        if (e.u < inst.graph.vertex_count() && e.v < inst.graph.vertex_count() && inst.graph.has_edge(e.u, e.v))
            throw Error(Errc::edge_exists, fmt::format("edge {{{}, {}}} is already present", e.u, e.v));
        inst.graph.insert_edge(e.u, e.v);
    }

    if (base.family == Family::planar_grid) {
        if (inst.graph.max_degree() > 6)
            throw Error(Errc::class_violated, "planar instance exceeds degree 6");
    } else if (bipartite_family(base.family) && !(base.family == Family::cycle && base.n % 2 == 1)) {
        if (!is_bipartite(inst.graph).bipartite)
            throw Error(Errc::class_violated, "insertion broke bipartiteness");
    }

    Scenario out;
    out.graph = std::move(inst.graph);
    out.coloring = std::move(inst.coloring);
    out.inserted = std::move(batch);
    out.requested = requested;
    out.target_max_color = inst.target_max_color;
    return out;
}

Scenario make_scenario(const ScenarioSpec& spec, Rng& rng)
{
    return apply_scenario(generate(spec.base, rng), spec, rng);
}

} // namespace dyncolor
