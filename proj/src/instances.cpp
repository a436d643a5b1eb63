#include "dyncolor/instances.hpp"

#include "dyncolor/error.hpp"
#include "dyncolor/unbounded.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace dyncolor {

namespace {

constexpr std::array family_names{
    std::pair{Family::path, "path"},
    std::pair{Family::cycle, "cycle"},
    std::pair{Family::complete_binary_tree, "complete_binary_tree"},
    std::pair{Family::depth2_star, "depth2_star"},
    std::pair{Family::forest_tn, "forest_tn"},
    std::pair{Family::random_bipartite, "random_bipartite"},
    std::pair{Family::planar_grid, "planar_grid"},
    std::pair{Family::nested_bipartite, "nested_bipartite"},
    std::pair{Family::custom, "custom"},
};

constexpr std::array mode_names{
    std::pair{ColoringMode::proper_canonical, "proper_canonical"},
    std::pair{ColoringMode::proper_inverted, "proper_inverted"},
    std::pair{ColoringMode::worst_case, "worst_case"},
    std::pair{ColoringMode::random, "random"},
};

[[noreturn]] void incompatible(const std::string& what)
{
    throw Error(Errc::incompatible_size, what);
}

Coloring unbounded(std::vector<Color> c)
{
    return Coloring(std::move(c), Palette::unbounded());
}

std::vector<Color> random_colors(std::size_t n, Color k, Rng& rng)
{
    std::vector<Color> c(n);
    for (auto& x : c)
        x = static_cast<Color>(rng.between(1, std::max<Color>(k, 1)));
    return c;
}

template <class T>
void shuffle(std::vector<T>& v, Rng& rng)
{
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.below(i)]);
}

Color flip(Color c) { return 3 - c; }

Instance make_path(const InstanceSpec& spec, bool closed, Rng& rng)
{
    const std::size_t n = spec.n;
    if (n < 2)
        incompatible("path needs at least 2 vertices");
    if (closed && (n < 4 || n % 2 != 0) && spec.mode != ColoringMode::random)
        incompatible("a properly 2-colored cycle needs an even length of at least 4");

    Instance out;
    std::vector<Color> c(n);
    for (Vertex v = 0; v < n; ++v)
        c[v] = 1 + v % 2;

    std::set<std::pair<Vertex, Vertex>> cut_edges;
    if (spec.mode == ColoringMode::worst_case) {
        const std::size_t T = spec.params.T;
        if (T < 1 || n < 2 * (T + 1) || (closed && T % 2 != 0))
            incompatible(fmt::format("cannot cut a length-{} {} into {} inverted segments", n,
                                     closed ? "cycle" : "path", T + 1));
        std::size_t segment = 0;
        std::size_t next_cut = 1;
        for (Vertex v = 0; v < n; ++v) {
            if (next_cut <= T && v == next_cut * n / (T + 1)) {
                cut_edges.insert({v - 1, v});
                out.withheld.push_back({v - 1, v});
                ++segment;
                ++next_cut;
            }
            c[v] = 1 + (v + segment) % 2;
        }
    } else if (spec.mode == ColoringMode::proper_inverted) {
        for (auto& x : c)
            x = flip(x);
    } else if (spec.mode == ColoringMode::random) {
        c = random_colors(n, spec.params.colors, rng);
    }

    out.graph = Graph(n);
    for (Vertex v = 0; v + 1 < n; ++v)
        if (!cut_edges.count({v, v + 1}))
            out.graph.insert_edge(v, v + 1);
    if (closed)
        out.graph.insert_edge(static_cast<Vertex>(n - 1), 0);
    out.coloring = unbounded(std::move(c));
    return out;
}

Instance make_binary_tree(const InstanceSpec& spec, Rng& rng)
{
    const std::size_t n = spec.n;
    if (n < 3 || ((n + 1) & n) != 0)
        incompatible("complete binary tree needs n = 2^h - 1 with h >= 2");
    Instance out;
    std::vector<Color> c(n);
    for (Vertex v = 0; v < n; ++v)
        c[v] = heap_depth(v) % 2 == 0 ? 1 : 2;
    const bool worst = spec.mode == ColoringMode::worst_case;
    if (spec.mode == ColoringMode::proper_inverted) {
        for (auto& x : c)
            x = flip(x);
    } else if (worst) {
        // Withhold the root edge {0, 2} and invert the subtree below 2, so the
        // insertion conflicts at the root.
        for (Vertex v = 2; v < n; ++v) {
            Vertex a = v;
            while (a > 2)
                a = (a - 1) / 2;
            if (a == 2)
                c[v] = flip(c[v]);
        }
        out.withheld.push_back({0, 2});
    } else if (spec.mode == ColoringMode::random) {
        c = random_colors(n, spec.params.colors, rng);
    }
    out.graph = Graph(n);
    for (Vertex v = 1; v < n; ++v)
        if (!(worst && v == 2))
            out.graph.insert_edge((v - 1) / 2, v);
    out.coloring = unbounded(std::move(c));
    return out;
}

/// Root 0, middles 1..N, leaf of middle m is m + N. The last T middles are
/// detached from the root and their edges are withheld.
Instance make_depth2_star(const InstanceSpec& spec, std::size_t T, Rng& rng)
{
    const std::size_t n = spec.n;
    if (n < 3 || n % 2 == 0)
        incompatible("depth-2 star needs an odd vertex count of at least 3");
    const std::size_t N = (n - 1) / 2;
    const bool worst = spec.mode == ColoringMode::worst_case;
    if (worst && (T < 1 || T > N))
        incompatible(fmt::format("depth-2 star with {} branches cannot detach {}", N, T));
    Instance out;
    std::vector<Color> c(n);
    c[0] = 2;
    for (Vertex m = 1; m <= N; ++m) {
        const bool detached = worst && m > N - T;
        c[m] = detached ? 2 : 1;
        c[m + N] = detached ? 1 : 2;
    }
    if (spec.mode == ColoringMode::proper_inverted)
        for (auto& x : c)
            x = flip(x);
    if (spec.mode == ColoringMode::random)
        c = random_colors(n, spec.params.colors, rng);

    out.graph = Graph(n);
    for (Vertex m = 1; m <= N; ++m) {
        if (worst && m > N - T)
            out.withheld.push_back({0, m});
        else
            out.graph.insert_edge(0, m);
        out.graph.insert_edge(m, static_cast<Vertex>(m + N));
    }
    out.coloring = unbounded(std::move(c));
    return out;
}

Instance make_random_bipartite(const InstanceSpec& spec, Rng& rng)
{
    const std::size_t n = spec.n;
    const std::size_t a = spec.params.part_a == 0 ? n / 2 : spec.params.part_a;
    if (n < 2 || a == 0 || a >= n)
        incompatible("random bipartite graph needs two non-empty parts");
    Instance out;
    out.graph = Graph(n);
    for (Vertex u = 0; u < a; ++u)
        for (auto v = static_cast<Vertex>(a); v < n; ++v)
            if (rng.bernoulli(spec.params.edge_probability))
                out.graph.insert_edge(u, v);
    std::vector<Color> c(n);
    for (Vertex v = 0; v < n; ++v)
        c[v] = v < a ? 1 : 2;
    if (spec.mode == ColoringMode::proper_inverted)
        for (auto& x : c)
            x = flip(x);
    if (spec.mode == ColoringMode::random)
        c = random_colors(n, spec.params.colors, rng);
    out.coloring = unbounded(std::move(c));
    return out;
}

/// Batch on disjoint 4-cycles that forces a vertex of color `target` after
/// Grundy local search. Each node is a 4-cycle x - y - x' - y' with x, x'
/// colored 1; x is recolored while y, y' keep x' as their 1-colored support.
class NestedBuilder {
public:
    /// Returns the vertex that ends with color `target` (>= 3).
    Vertex build(Color target)
    {
        std::vector<Vertex> lower;
        for (Color k = 3; k < target; ++k)
            lower.push_back(build(k));
        const Vertex x = add_cycle();
        for (Vertex z : lower)
            batch.push_back({z, x});
        const Vertex w = add_cycle();
        batch.push_back({x, w});
        return x;
    }

    /// Insertions needed by build(target).
    static std::size_t cost(Color target)
    {
        std::size_t total = 1;
        for (Color k = 3; k < target; ++k)
            total += cost(k) + 1;
        return total;
    }

    std::vector<Edge> edges;
    std::vector<Edge> batch;
    std::size_t vertices = 0;

private:
    Vertex add_cycle()
    {
        const auto x = static_cast<Vertex>(vertices);
        vertices += 4;
        // x = id, y = id+1, x' = id+2, y' = id+3
        edges.push_back({x, x + 1});
        edges.push_back({x + 1, x + 2});
        edges.push_back({x + 2, x + 3});
        edges.push_back({x, x + 3});
        return x;
    }
};

Instance make_nested_bipartite(const InstanceSpec& spec)
{
    const std::size_t T = spec.params.T;
    if (T < 1)
        incompatible("nested batch needs T >= 1");
    NestedBuilder b;
    std::size_t left = T;
    Color top = 3;
    while (NestedBuilder::cost(top + 1) <= left)
        ++top;
    b.build(top);
    left -= NestedBuilder::cost(top);
    while (left-- > 0)
        b.build(3);
    Instance out;
    out.graph = Graph::from_edges(b.vertices, b.edges);
    std::vector<Color> c(b.vertices);
    for (Vertex v = 0; v < b.vertices; ++v)
        c[v] = v % 2 == 0 ? 1 : 2;
    out.coloring = unbounded(std::move(c));
    out.withheld = std::move(b.batch);
    return out;
}

struct GridGeometry {
    std::size_t rows, cols;
    bool main_diagonal;

    Vertex id(std::size_t r, std::size_t c) const { return static_cast<Vertex>(r * cols + c); }

    template <class Fn>
    void for_each_edge(Fn&& fn) const
    {
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) {
                if (c + 1 < cols)
                    fn(id(r, c), id(r, c + 1));
                if (r + 1 < rows)
                    fn(id(r, c), id(r + 1, c));
                if (r + 1 < rows && c + 1 < cols) {
                    if (main_diagonal)
                        fn(id(r, c), id(r + 1, c + 1));
                    else
                        fn(id(r, c + 1), id(r + 1, c));
                }
            }
    }

    Graph build(const std::set<std::pair<Vertex, Vertex>>& skip = {}) const
    {
        Graph g(rows * cols);
        for_each_edge([&](Vertex u, Vertex v) {
            if (!skip.count({std::min(u, v), std::max(u, v)}))
                g.insert_edge(u, v);
        });
        return g;
    }
};

std::vector<Color> greedy_row_major(const Graph& g)
{
    std::vector<Color> c(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        c[v] = min_free_color(g, c, v);
    return c;
}

std::pair<std::size_t, std::size_t> grid_shape(const InstanceSpec& spec)
{
    std::size_t rows = spec.params.rows, cols = spec.params.cols;
    if (rows == 0 || cols == 0) {
        auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(spec.n))));
        if (side * side != spec.n)
            incompatible("planar grid needs rows/cols or a square vertex count");
        rows = cols = side;
    }
    if (spec.n != 0 && spec.n != rows * cols)
        incompatible("planar grid vertex count differs from rows * cols");
    return {rows, cols};
}

constexpr std::size_t gadget_block = 6;
constexpr int gadget_radius = 2;
constexpr std::size_t gadget_tries = 5000;
constexpr int gadget_restarts = 20;

/// Grundy 5-coloring of the grid without T withheld horizontal edges {v, w}
/// in which v and w both hold color 5, so that each insertion forces a 6.
std::optional<Instance> try_planar_gadgets(const GridGeometry& geo, std::size_t T, Rng& rng)
{
    const std::size_t br = geo.rows / gadget_block, bc = geo.cols / gadget_block;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < br; ++i)
        for (std::size_t j = 0; j < bc; ++j)
            slots.emplace_back(i, j);
    shuffle(slots, rng);
    slots.resize(T);
    const std::size_t off_r = (geo.rows - br * gadget_block) / 2;
    const std::size_t off_c = (geo.cols - bc * gadget_block) / 2;

    Instance out;
    std::set<std::pair<Vertex, Vertex>> skip;
    std::vector<std::pair<std::size_t, std::size_t>> anchors;
    for (const auto& [i, j] : slots) {
        const std::size_t r = off_r + i * gadget_block + gadget_block / 2;
        const std::size_t c = off_c + j * gadget_block + gadget_block / 2 - 1;
        anchors.emplace_back(r, c);
        const Vertex v = geo.id(r, c), w = geo.id(r, c + 1);
        out.withheld.push_back({v, w});
        skip.insert({v, w});
    }
    const Graph full = geo.build();
    out.graph = geo.build(skip);
    const Graph& g = out.graph;

    std::vector<Color> col(g.vertex_count());
    for (std::size_t r = 0; r < geo.rows; ++r)
        for (std::size_t c = 0; c < geo.cols; ++c)
            col[geo.id(r, c)] = static_cast<Color>((r + c) % 3 + 1);
    {
        const Coloring settled = grundy_local_search(g, unbounded(col));
        col.assign(settled.values().begin(), settled.values().end());
    }

    auto grundy_at = [&](Vertex x) { return min_free_color(g, col, x) == col[x]; };

    for (const Edge& e : out.withheld) {
        std::set<Vertex> patch{e.u, e.v};
        std::set<Vertex> frontier = patch;
        for (int step = 0; step < gadget_radius; ++step) {
            std::set<Vertex> next;
            for (Vertex x : frontier)
                for (Vertex y : full.neighbors(x))
                    next.insert(y);
            patch.insert(next.begin(), next.end());
            frontier = std::move(next);
        }
        std::vector<Vertex> others;
        for (Vertex x : patch)
            if (x != e.u && x != e.v)
                others.push_back(x);
        std::vector<Vertex> check(patch.begin(), patch.end());
        for (Vertex x : patch)
            for (Vertex y : full.neighbors(x))
                if (!patch.count(y))
                    check.push_back(y);

        bool placed = false;
        for (std::size_t t = 0; t < gadget_tries && !placed; ++t) {
            shuffle(others, rng);
            for (Vertex x : patch)
                col[x] = 0;
            for (Vertex x : others)
                col[x] = min_free_color(g, col, x);
            col[e.u] = min_free_color(g, col, e.u);
            col[e.v] = min_free_color(g, col, e.v);
            placed = col[e.u] == 5 && col[e.v] == 5 &&
                     std::all_of(patch.begin(), patch.end(), [&](Vertex x) { return col[x] <= 5; }) &&
                     std::all_of(check.begin(), check.end(), grundy_at);
        }
        if (!placed)
            return std::nullopt;
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!grundy_at(v) || col[v] > 5)
            return std::nullopt;
    out.coloring = unbounded(std::move(col));
    out.target_max_color = 5;
    return out;
}

Instance make_planar(const InstanceSpec& spec, Rng& rng)
{
    const auto [rows, cols] = grid_shape(spec);
    if (rows < 2 || cols < 2)
        incompatible("planar grid needs at least 2 x 2 vertices");
    const std::size_t T = spec.params.T;

    if (spec.mode == ColoringMode::worst_case) {
        const std::size_t slots = (rows / gadget_block) * (cols / gadget_block);
        if (T < 1 || T > slots)
            incompatible(fmt::format("{}x{} grid holds at most {} gadgets, {} requested", rows, cols, slots, T));
        const GridGeometry geo{rows, cols, true};
        for (int attempt = 0; attempt < gadget_restarts; ++attempt)
            if (auto inst = try_planar_gadgets(geo, T, rng))
                return std::move(*inst);
        throw Error(Errc::scenario_generation_failed, "could not place planar gadgets");
    }

    // Withhold T uniformly chosen triangulation edges; the remaining graph is
    // colored greedily in row-major order.
    for (bool diagonal : {true, false}) {
        const GridGeometry geo{rows, cols, diagonal};
        std::vector<Edge> all;
        geo.for_each_edge([&](Vertex u, Vertex v) { all.push_back({std::min(u, v), std::max(u, v)}); });
        if (T > all.size())
            incompatible("more withheld edges than grid edges");
        for (std::size_t i = 0; i < T; ++i)
            std::swap(all[i], all[i + rng.below(all.size() - i)]);
        Instance out;
        std::set<std::pair<Vertex, Vertex>> skip;
        for (std::size_t i = 0; i < T; ++i) {
            out.withheld.push_back(all[i]);
            skip.insert({all[i].u, all[i].v});
        }
        out.graph = geo.build(skip);
        auto c = greedy_row_major(out.graph);
        if (*std::max_element(c.begin(), c.end()) > 5)
            continue;
        if (spec.mode == ColoringMode::random)
            c = random_colors(c.size(), spec.params.colors, rng);
        out.coloring = unbounded(std::move(c));
        out.target_max_color = 5;
        return out;
    }
    throw Error(Errc::scenario_generation_failed, "greedy coloring exceeded 5 colors");
}

Instance make_custom(const InstanceSpec& spec, Rng& rng)
{
    std::ifstream in(spec.params.file);
    if (!in)
        throw Error(Errc::parse_error, "cannot open edge list " + spec.params.file);
    std::stringstream buf;
    buf << in.rdbuf();
    EdgeListFile f = read_edge_list(buf.str());
    Instance out;
    out.graph = std::move(f.graph);
    const std::size_t n = out.graph.vertex_count();
    if (spec.mode == ColoringMode::random || !f.colors)
        out.coloring = unbounded(random_colors(n, spec.params.colors, rng));
    else
        out.coloring = unbounded(*f.colors);
    out.target_max_color = std::max<Color>(2, out.coloring.max_color());
    return out;
}

} // namespace

std::string_view to_string(Family f) noexcept
{
    for (const auto& [k, name] : family_names)
        if (k == f)
            return name;
    return "?";
}

std::optional<Family> parse_family(std::string_view name) noexcept
{
    for (const auto& [k, s] : family_names)
        if (s == name)
            return k;
    return std::nullopt;
}

std::string_view to_string(ColoringMode m) noexcept
{
    for (const auto& [k, name] : mode_names)
        if (k == m)
            return name;
    return "?";
}

std::optional<ColoringMode> parse_coloring_mode(std::string_view name) noexcept
{
    for (const auto& [k, s] : mode_names)
        if (s == name)
            return k;
    return std::nullopt;
}

std::size_t heap_depth(Vertex v) noexcept
{
    std::size_t d = 0;
    for (std::uint64_t x = std::uint64_t{v} + 1; x > 1; x >>= 1)
        ++d;
    return d;
}

Instance generate(const InstanceSpec& spec, Rng& rng)
{
    switch (spec.family) {
    case Family::path: return make_path(spec, false, rng);
    case Family::cycle: return make_path(spec, true, rng);
    case Family::complete_binary_tree: return make_binary_tree(spec, rng);
    case Family::depth2_star: return make_depth2_star(spec, spec.params.T, rng);
    case Family::forest_tn:
        if (spec.n % 4 != 1)
            incompatible("forest T_n needs n = 1 mod 4");
        return make_depth2_star(spec, 1, rng);
    case Family::random_bipartite: return make_random_bipartite(spec, rng);
    case Family::planar_grid: return make_planar(spec, rng);
    case Family::nested_bipartite: return make_nested_bipartite(spec);
    case Family::custom: return make_custom(spec, rng);
    }
    incompatible("unknown family");
}

PlanarGrid generate_planar_deg6(std::size_t rows, std::size_t cols)
{
    if (rows < 2 || cols < 2)
        incompatible("planar grid needs at least 2 x 2 vertices");
    for (bool diagonal : {true, false}) {
        const GridGeometry geo{rows, cols, diagonal};
        Graph g = geo.build();
        auto c = greedy_row_major(g);
        if (*std::max_element(c.begin(), c.end()) <= 5)
            return PlanarGrid{std::move(g), unbounded(std::move(c)), diagonal};
    }
    throw Error(Errc::scenario_generation_failed, "greedy coloring exceeded 5 colors");
}

EdgeListFile read_edge_list(std::string_view text)
{
    std::istringstream in{std::string(text)};
    auto fail = [](const std::string& what) { return Error(Errc::parse_error, "edge list: " + what); };
    long long n = -1, m = -1;
    if (!(in >> n >> m) || n < 0 || m < 0)
        throw fail("expected header 'n m'");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long u = -1, v = -1;
        if (!(in >> u >> v) || u < 0 || v < 0)
            throw fail(fmt::format("edge {} is malformed", i + 1));
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    EdgeListFile out;
    out.graph = Graph::from_edges(static_cast<std::size_t>(n), edges);
    std::string tag;
    if (in >> tag) {
        if (tag != "c")
            throw fail("expected color line starting with 'c'");
        std::vector<Color> colors(static_cast<std::size_t>(n));
        for (auto& c : colors) {
            long long x = 0;
            if (!(in >> x) || x < 1)
                throw fail("color line is malformed");
            c = static_cast<Color>(x);
        }
        out.colors = std::move(colors);
    }
    return out;
}

std::string write_edge_list(const Graph& g, const Coloring* c)
{
    std::string out = fmt::format("{} {}\n", g.vertex_count(), g.edge_count());
    for (const Edge& e : g.edges())
        out += fmt::format("{} {}\n", e.u, e.v);
    if (c) {
        out += "c";
        for (Color x : c->values())
            out += fmt::format(" {}", x);
        out += "\n";
    }
    return out;
}

} // namespace dyncolor
