#include "support.hpp"

#include "dyncolor/conflict_set.hpp"
#include "dyncolor/error.hpp"
#include "dyncolor/occurrence.hpp"

#include <doctest.h>

using namespace dyncolor;
using namespace testsupport;

TEST_CASE("build_graph")
{
    const std::vector<Edge> one{{0, 1}};
    Graph g = Graph::from_edges(2, one);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 1);
    CHECK(g.max_degree() == 1);

    const std::vector<Edge> p3{{0, 1}, {1, 2}};
    Graph p = Graph::from_edges(3, p3);
    CHECK(p.max_degree() == 2);
    CHECK(p.edge_count() == 2);
    CHECK(p.has_edge(2, 1));
    CHECK_FALSE(p.has_edge(0, 2));

    const std::vector<Edge> dup{{0, 1}, {0, 1}};
    CHECK(error_code([&] { Graph::from_edges(4, dup); }) == Errc::duplicate_edge);
    const std::vector<Edge> loop{{1, 1}};
    CHECK(error_code([&] { Graph::from_edges(2, loop); }) == Errc::self_loop);
    const std::vector<Edge> out{{0, 5}};
    CHECK(error_code([&] { Graph::from_edges(3, out); }) == Errc::vertex_out_of_range);
}

TEST_CASE("insert_edge")
{
    Graph g = path(3);
    g.insert_edge(0, 2);
    CHECK(g.edge_count() == 3);
    CHECK(g.max_degree() == 2);
    for (Vertex v = 0; v < 3; ++v)
        CHECK(g.degree(v) == 2);

    Graph h(4);
    h.insert_edge(0, 1);
    h.insert_edge(2, 3);
    h.insert_edge(1, 2);
    CHECK(h.edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});

    CHECK(error_code([&] { h.insert_edge(2, 1); }) == Errc::duplicate_edge);
    CHECK(error_code([&] { h.insert_edge(3, 3); }) == Errc::self_loop);
}

TEST_CASE("adjacency stays symmetric and degrees consistent")
{
    Rng rng(7);
    Graph g = random_graph(40, 0.2, rng);
    std::size_t sum = 0, max_deg = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        sum += g.degree(v);
        max_deg = std::max(max_deg, g.degree(v));
        for (Vertex u : g.neighbors(v)) {
            CHECK(u != v);
            CHECK(g.has_edge(u, v));
        }
    }
    CHECK(sum == 2 * g.edge_count());
    CHECK(max_deg == g.max_degree());
}

TEST_CASE("coloring validates against its palette")
{
    CHECK(error_code([] { Coloring({1, 3}, Palette::of_size(2)); }) == Errc::invalid_color);
    CHECK(error_code([] { Coloring({0, 1}, Palette::unbounded()); }) == Errc::invalid_color);
    CHECK(error_code([] { Coloring({1, 3}, Palette::unbounded()); }) == Errc::invalid_color);
    Coloring c({1, 2, 2}, Palette::unbounded());
    CHECK(c.max_color() == 2);
    CHECK(error_code([&] { c.set(0, 4); }) == Errc::invalid_color);
}

TEST_CASE("count_conflicts")
{
    const Graph p3 = path(3);
    CHECK(count_conflicts(p3, colors({1, 2, 1})) == 0);
    CHECK(count_conflicts(p3, colors({1, 1, 1})) == 2);

    // Twelve-vertex path split into four properly colored subpaths.
    const Graph p12 = path(12);
    CHECK(count_conflicts(p12, colors({1, 2, 2, 1, 2, 2, 1, 1, 2, 1, 2, 1})) == 3);
}

TEST_CASE("rebuild_conflict_set")
{
    const Graph p3 = path(3);
    auto cs = ConflictSet::rebuild(p3, colors({1, 1, 2}));
    CHECK(cs.size() == 2);
    CHECK(cs.flagged(0));
    CHECK(cs.flagged(1));
    CHECK_FALSE(cs.flagged(2));

    CHECK(ConflictSet::rebuild(p3, colors({1, 2, 1})).size() == 0);

    auto all = ConflictSet::rebuild(p3, colors({1, 1, 1}));
    CHECK(all.size() == 3);
    CHECK(all.conflict_edge_count() == 2);
}

TEST_CASE("update_conflict_set_after_recolor")
{
    const Graph p3 = path(3);
    {
        std::vector<Color> c{1, 1, 2};
        auto cs = ConflictSet::rebuild(p3, c);
        c[1] = 2;
        cs.on_recolor(p3, c, 1, 1);
        CHECK(cs.size() == 2);
        CHECK(cs.flagged(1));
        CHECK(cs.flagged(2));
        CHECK_FALSE(cs.flagged(0));
    }
    {
        std::vector<Color> c{1, 1, 2};
        auto cs = ConflictSet::rebuild(p3, c);
        c[0] = 2;
        cs.on_recolor(p3, c, 0, 1);
        CHECK(cs.size() == 0);
        CHECK(cs.conflict_edge_count() == 0);
    }
}

TEST_CASE("incremental conflict set matches a full recount")
{
    Rng rng(11);
    for (int seq = 0; seq < 1000; ++seq) {
        const std::size_t n = 2 + rng.below(20);
        const Graph g = random_graph(n, 0.3, rng);
        const Color k = static_cast<Color>(2 + rng.below(3));
        std::vector<Color> c = random_colors(n, k, rng);
        auto cs = ConflictSet::rebuild(g, c);
        for (int step = 0; step < 20; ++step) {
            const auto v = static_cast<Vertex>(rng.below(n));
            const Color old = c[v];
            c[v] = static_cast<Color>(rng.between(1, k));
            cs.on_recolor(g, c, v, old);
        }
        REQUIRE(cs.conflict_edge_count() == ref_conflicts(g, c));
        const auto ref = ref_conflicting_vertices(g, c);
        REQUIRE(cs.size() == ref.size());
        for (Vertex v = 0; v < n; ++v) {
            REQUIRE(cs.flagged(v) == (ref.count(v) == 1));
            if (cs.flagged(v))
                REQUIRE(cs.members()[cs.position(v)] == v);
        }
    }
}

TEST_CASE("sample_conflicting_vertex")
{
    Rng rng(3);
    {
        // A conflicting vertex always has a conflicting partner, so the
        // smallest non-empty set has two members.
        const Graph p3 = path(3);
        auto cs = ConflictSet::rebuild(p3, std::vector<Color>{1, 1, 2});
        for (int i = 0; i < 100; ++i)
            CHECK(cs.sample(rng) <= 1);
        auto none = ConflictSet::rebuild(p3, std::vector<Color>{1, 2, 1});
        CHECK(error_code([&] { none.sample(rng); }) == Errc::empty_conflict_set);
    }
    {
        // Triangle colored 1,1,1 flags exactly three vertices.
        const Graph tri = cycle(3);
        auto cs = ConflictSet::rebuild(tri, std::vector<Color>{1, 1, 1});
        REQUIRE(cs.size() == 3);
        std::array<std::size_t, 3> hits{};
        const std::size_t draws = 1'000'000;
        for (std::size_t i = 0; i < draws; ++i)
            ++hits[cs.sample(rng)];
        for (auto h : hits)
            CHECK(std::abs(static_cast<double>(h) / draws - 1.0 / 3) < 0.01);
    }
    {
        // Ten flagged vertices out of twenty: five conflicting pairs.
        Graph g(20);
        std::vector<Color> c(20);
        for (Vertex v = 0; v < 20; ++v)
            c[v] = v + 1;
        for (Vertex v = 0; v < 10; v += 2) {
            g.insert_edge(v, v + 1);
            c[v + 1] = c[v];
        }
        for (Vertex v = 10; v + 1 < 20; ++v)
            g.insert_edge(v, v + 1);
        auto cs = ConflictSet::rebuild(g, c);
        REQUIRE(cs.size() == 10);
        std::map<Vertex, std::size_t> hits;
        const std::size_t draws = 1'000'000;
        for (std::size_t i = 0; i < draws; ++i)
            ++hits[cs.sample(rng)];
        CHECK(hits.size() == 10);
        for (const auto& [v, h] : hits) {
            CHECK(v < 10);
            CHECK(std::abs(z_score(h, draws, 0.1)) < 5.0);
        }
    }
}

TEST_CASE("compare")
{
    const auto any = ColorOccurrence::from_counts({{1, 2}, {2, 1}});
    CHECK(compare({0, any}, {1, any}) == Preference::first_better);
    CHECK(compare({2, any}, {1, any}) == Preference::second_better);

    const auto x = ColorOccurrence::from_counts({{3, 1}, {2, 2}, {1, 3}});
    const auto y = ColorOccurrence::from_counts({{3, 2}, {2, 1}, {1, 3}});
    CHECK(compare({0, x}, {0, y}) == Preference::first_better);
    CHECK(compare({0, y}, {0, x}) == Preference::second_better);
    CHECK(compare({0, x}, {0, x}) == Preference::equivalent);

    // Missing colors count as zero.
    const auto short_vec = ColorOccurrence::from_counts({{1, 3}, {2, 3}});
    CHECK(compare({0, short_vec}, {0, x}) == Preference::first_better);
}

TEST_CASE("compare is a total preorder")
{
    Rng rng(5);
    std::vector<Evaluation> pool;
    for (int i = 0; i < 40; ++i) {
        const auto c = random_colors(6, 4, rng);
        pool.push_back({rng.below(3), ColorOccurrence::from_colors(c)});
    }
    auto leq = [](const Evaluation& a, const Evaluation& b) {
        return compare(a, b) != Preference::second_better;
    };
    for (const auto& a : pool) {
        CHECK(compare(a, a) == Preference::equivalent);
        for (const auto& b : pool) {
            CHECK((leq(a, b) || leq(b, a)));
            for (const auto& c : pool)
                if (leq(a, b) && leq(b, c))
                    CHECK(leq(a, c));
        }
    }
}

TEST_CASE("incremental occurrence vector matches a histogram")
{
    Rng rng(9);
    for (int seq = 0; seq < 200; ++seq) {
        const std::size_t n = 1 + rng.below(30);
        std::vector<Color> c = random_colors(n, 8, rng);
        auto occ = ColorOccurrence::from_colors(c);
        OccurrenceDelta delta;
        const auto parent = occ;
        for (int step = 0; step < 50; ++step) {
            const auto v = static_cast<Vertex>(rng.below(n));
            const Color old = c[v];
            c[v] = static_cast<Color>(rng.between(1, 8));
            occ.on_recolor(old, c[v]);
            delta.record(old, c[v]);
        }
        const auto hist = ref_histogram(c);
        REQUIRE(occ.total() == n);
        REQUIRE(occ.max_color() == hist.rbegin()->first);
        for (Color col = 1; col <= 9; ++col)
            REQUIRE(occ.count(col) == (hist.count(col) ? hist.at(col) : 0));
        REQUIRE(occ == ColorOccurrence::from_colors(c));
        // The delta view and the full comparison agree.
        REQUIRE(compare_offspring(0, 0, delta) == compare({0, occ}, {0, parent}));
    }
}
