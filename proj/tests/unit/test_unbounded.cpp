#include "support.hpp"

#include "dyncolor/dynamics.hpp"
#include "dyncolor/occurrence.hpp"
#include "dyncolor/oracles.hpp"
#include "dyncolor/unbounded.hpp"

#include <doctest.h>

using namespace dyncolor;
using namespace testsupport;

namespace {

/// Random graph whose degrees never exceed `cap`.
Graph random_capped_graph(std::size_t n, std::size_t edges, std::size_t cap, Rng& rng)
{
    Graph g(n);
    for (std::size_t a = 0; a < edges * 4 && g.edge_count() < edges; ++a) {
        const auto u = static_cast<Vertex>(rng.below(n));
        const auto v = static_cast<Vertex>(rng.below(n));
        if (u != v && !g.has_edge(u, v) && g.degree(u) < cap && g.degree(v) < cap)
            g.insert_edge(u, v);
    }
    return g;
}

Coloring random_grundy(const Graph& g, Rng& rng)
{
    const auto raw = random_colors(g.vertex_count(), static_cast<Color>(g.max_degree() + 1), rng);
    return grundy_local_search(g, colors(raw), QueuePolicy{QueueOrder::random, rng.next_u64()});
}

Evaluation evaluate(const Graph& g, const Coloring& c)
{
    return {ref_conflicts(g, c.values()), ColorOccurrence::from_colors(c.values())};
}

std::size_t count_at_least(const Coloring& c, Color from)
{
    std::size_t k = 0;
    for (Color x : c.values())
        k += x >= from;
    return k;
}

std::size_t count_equal(const Coloring& c, Color value)
{
    std::size_t k = 0;
    for (Color x : c.values())
        k += x == value;
    return k;
}

} // namespace

TEST_CASE("grundy local search on the completed depth-2 star")
{
    Rng rng(1);
    ScenarioSpec spec;
    spec.base = {Family::depth2_star, 13, ColoringMode::worst_case, {}};
    spec.insertion = Insertion::depth2_star_complete;
    const Scenario sc = make_scenario(spec, rng);
    REQUIRE(count_conflicts(sc.graph, sc.coloring) == 1);
    const Coloring out = grundy_local_search(sc.graph, sc.coloring);
    // Root 3; attached middles 1 with leaves 2; the new middle keeps 2 and its
    // leaf keeps 1.
    CHECK(out == colors({3, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 1}));
    CHECK(is_proper(sc.graph, out));
    CHECK(ref_is_grundy(sc.graph, out.values()));
}

TEST_CASE("grundy local search fixpoint and postcondition")
{
    const Graph p = path(5);
    const Coloring proper = colors({1, 2, 1, 2, 1});
    CHECK(grundy_local_search(p, proper) == proper);
    const GrundyResult stats = grundy_local_search_stats(p, proper);
    CHECK(stats.recolorings == 0);
    CHECK(stats.changed_vertices == 0);

    Rng rng(123);
    for (int round = 0; round < 1000; ++round) {
        const std::size_t n = 1 + rng.below(50);
        const Graph g = random_graph(n, rng.unit() * 0.3, rng);
        const Coloring in = colors(random_colors(n, static_cast<Color>(1 + rng.below(n)), rng));
        const GrundyResult r = grundy_local_search_stats(g, in);
        REQUIRE(ref_is_grundy(g, r.coloring.values()));
        REQUIRE(r.coloring.max_color() <= g.max_degree() + 1);
        // Grundy local search never worsens a coloring.
        REQUIRE(compare(evaluate(g, r.coloring), evaluate(g, in)) != Preference::second_better);
        std::size_t changed = 0;
        for (Vertex v = 0; v < n; ++v)
            changed += r.coloring[v] != in[v];
        REQUIRE(r.changed_vertices == changed);
        REQUIRE(r.recolorings >= changed);
    }
}

TEST_CASE("grundy fixpoint is reached under every queue policy")
{
    Rng rng(9);
    for (int round = 0; round < 300; ++round) {
        const std::size_t n = 2 + rng.below(10);
        const Graph g = random_graph(n, 0.4, rng);
        const Coloring in = colors(random_colors(n, static_cast<Color>(n), rng));
        const Color gamma = grundy_number_bruteforce(g);
        for (QueueOrder order : {QueueOrder::fifo, QueueOrder::lifo, QueueOrder::random}) {
            const Coloring out = grundy_local_search(g, in, QueuePolicy{order, rng.next_u64()});
            REQUIRE(ref_is_grundy(g, out.values()));
            REQUIRE(out.max_color() <= gamma);
        }
    }
}

TEST_CASE("insertions into a Grundy coloring: color increases are bounded by the batch size")
{
    // Each color increase resolves a conflict and no step creates one, so at
    // most T vertices end above their starting color.
    Rng rng(77);
    for (int round = 0; round < 500; ++round) {
        const std::size_t n = 4 + rng.below(30);
        Graph g = random_capped_graph(n, n, 4, rng);
        const Coloring before = random_grundy(g, rng);
        std::size_t T = 0;
        for (std::size_t a = 0; a < 40 && T < 6; ++a) {
            const auto u = static_cast<Vertex>(rng.below(n));
            const auto v = static_cast<Vertex>(rng.below(n));
            if (u != v && !g.has_edge(u, v)) {
                g.insert_edge(u, v);
                ++T;
            }
        }
        const Coloring after = grundy_local_search(g, before);
        std::size_t raised = 0;
        for (Vertex v = 0; v < n; ++v)
            raised += after[v] > before[v];
        REQUIRE(raised <= T);
        REQUIRE(ref_is_grundy(g, after.values()));
    }
}

TEST_CASE("one insertion can change two vertex colors")
{
    // Two edges a1-b1 and a2-b2 colored (1,2); inserting a1-a2 raises a1 to 3,
    // which frees color 1 at b1 and lets a1 settle at 2.
    Graph g(4);
    g.insert_edge(0, 1);
    g.insert_edge(2, 3);
    const Coloring before = colors({1, 2, 1, 2});
    REQUIRE(ref_is_grundy(g, before.values()));
    g.insert_edge(0, 2);
    const GrundyResult r = grundy_local_search_stats(g, before);
    CHECK(r.coloring == colors({2, 1, 1, 2}));
    CHECK(r.changed_vertices == 2);
}

TEST_CASE("kempe chain examples")
{
    const KempeResult a = kempe_chain(path(3), colors({1, 2, 1}), 0, 2);
    CHECK(a.coloring == colors({2, 1, 2}));
    CHECK(a.component.vertices == std::vector<Vertex>{0, 1, 2});
    CHECK(a.component.i == 1);
    CHECK(a.component.j == 2);

    const KempeResult b = kempe_chain(path(4), colors({1, 2, 1, 2}), 0, 2);
    CHECK(b.coloring == colors({2, 1, 2, 1}));
    CHECK(is_proper(path(4), b.coloring));

    // j = c(v) is a no-op.
    const KempeResult same = kempe_chain(path(3), colors({1, 2, 1}), 1, 2);
    CHECK(same.coloring == colors({1, 2, 1}));

    // A color absent from the neighborhood moves v alone.
    const KempeResult fresh = kempe_chain(cycle(4), colors({1, 2, 1, 2}), 0, 3);
    CHECK(fresh.coloring == colors({3, 2, 1, 2}));
    CHECK(fresh.component.vertices == std::vector<Vertex>{0});

    CHECK(error_code([] { kempe_chain(path(3), colors({1, 2, 1}), 0, 3); }) == Errc::precondition_violated);
    CHECK(error_code([] { kempe_chain(path(3), colors({1, 2, 1}), 0, 0); }) == Errc::precondition_violated);
}

TEST_CASE("kempe chain matches the reference component and is an involution")
{
    Rng rng(5);
    for (int round = 0; round < 300; ++round) {
        const std::size_t n = 2 + rng.below(20);
        const Graph g = random_graph(n, 0.25, rng);
        const Coloring c = random_grundy(g, rng);
        const auto v = static_cast<Vertex>(rng.below(n));
        const auto j = static_cast<Color>(1 + rng.below(g.degree(v) + 1));
        const KempeResult r = kempe_chain(g, c, v, j);
        REQUIRE(is_proper(g, r.coloring));

        const Color i = c[v];
        std::vector<Vertex> expected;
        if (i == j) {
            expected = {v};
        } else {
            const auto label = ref_two_color_components(g, c.values(), i, j);
            for (Vertex x = 0; x < n; ++x)
                if (label[x] >= 0 && label[x] == label[v])
                    expected.push_back(x);
        }
        REQUIRE(r.component.vertices == expected);
        for (Vertex x = 0; x < n; ++x) {
            const bool inside = std::binary_search(expected.begin(), expected.end(), x);
            const Color want = !inside ? c[x] : c[x] == i ? j : i;
            REQUIRE(r.coloring[x] == want);
        }
        // The same move from the new color of v restores the input.
        if (i != j) {
            const KempeResult back = kempe_chain(g, r.coloring, v, i);
            REQUIRE(back.coloring == c);
        }
    }
}

TEST_CASE("color elimination examples")
{
    // Star with center 0 colored 3 and leaves 1, 2, 2.
    Graph star(4);
    for (Vertex v = 1; v < 4; ++v)
        star.insert_edge(0, v);
    const Coloring c = colors({3, 1, 2, 2});
    CHECK(color_elimination(star, c, 0, 1, 2) == colors({3, 2, 2, 2}));
    CHECK(color_elimination(star, c, 0, 2, 1) == colors({3, 1, 1, 1}));
    // No i-colored neighbor: unchanged.
    CHECK(color_elimination(star, colors({3, 2, 2, 2}), 0, 1, 2) == colors({3, 2, 2, 2}));
    // c(v) < 3 is a no-op regardless of i and j.
    CHECK(color_elimination(path(3), colors({1, 2, 1}), 1, 5, 5) == colors({1, 2, 1}));

    CHECK(error_code([&] { color_elimination(star, c, 0, 1, 1); }) == Errc::precondition_violated);
    CHECK(error_code([&] { color_elimination(star, c, 0, 1, 3); }) == Errc::precondition_violated);
    CHECK(error_code([&] { color_elimination(star, c, 0, 0, 2); }) == Errc::precondition_violated);
}

TEST_CASE("color elimination frees a color at the depth-2 star root")
{
    Rng rng(2);
    ScenarioSpec spec;
    spec.base = {Family::depth2_star, 13, ColoringMode::worst_case, {}};
    spec.insertion = Insertion::depth2_star_complete;
    const Scenario sc = make_scenario(spec, rng);
    const Coloring settled = grundy_local_search(sc.graph, sc.coloring);
    REQUIRE(settled[0] == 3);
    // Recoloring the single 2-colored middle to 1 leaves the root with one
    // neighbor color.
    const Coloring mutated = color_elimination(sc.graph, settled, 0, 2, 1);
    const Coloring out = grundy_local_search(sc.graph, mutated);
    CHECK(out[0] < 3);
    CHECK(is_proper(sc.graph, out));
    CHECK(out.max_color() == 2);
}

TEST_CASE("color elimination with one component equals a kempe chain")
{
    Rng rng(17);
    std::size_t compared = 0;
    for (int round = 0; round < 2000; ++round) {
        // Random tree with up to 20 vertices.
        const std::size_t n = 3 + rng.below(18);
        Graph g(n);
        for (Vertex v = 1; v < n; ++v)
            g.insert_edge(static_cast<Vertex>(rng.below(v)), v);
        const Coloring c = random_grundy(g, rng);
        for (Vertex v = 0; v < n; ++v) {
            if (c[v] < 3)
                continue;
            for (Color i = 1; i < c[v]; ++i)
                for (Color j = 1; j < c[v]; ++j) {
                    if (i == j)
                        continue;
                    std::vector<Vertex> reps;
                    for (Vertex u : g.neighbors(v))
                        if (c[u] == i)
                            reps.push_back(u);
                    if (reps.empty())
                        continue;
                    const auto label = ref_two_color_components(g, c.values(), i, j);
                    const bool single = std::all_of(reps.begin(), reps.end(),
                                                    [&](Vertex u) { return label[u] == label[reps[0]]; });
                    const Coloring ce = color_elimination(g, c, v, i, j);
                    REQUIRE(is_proper(g, ce));
                    if (!single || j > g.degree(reps[0]) + 1)
                        continue;
                    REQUIRE(ce == kempe_chain(g, c, reps[0], j).coloring);
                    ++compared;
                }
        }
    }
    CHECK(compared > 100);
}

TEST_CASE("operators preserve properness exhaustively")
{
    Rng rng(3);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = 2 + rng.below(11);
        const Graph g = random_graph(n, 0.35, rng);
        const Coloring c = random_grundy(g, rng);
        for (Vertex v = 0; v < n; ++v) {
            for (Color j = 1; j <= g.degree(v) + 1; ++j)
                REQUIRE(is_proper(g, kempe_chain(g, c, v, j).coloring));
            for (Color i = 1; i < c[v]; ++i)
                for (Color j = 1; j < c[v]; ++j)
                    if (i != j)
                        REQUIRE(is_proper(g, color_elimination(g, c, v, i, j)));
        }
    }
}

TEST_CASE("a single operator raises the count of max-degree colored vertices by at most one")
{
    Rng rng(44);
    std::size_t with_delta = 0;
    for (int round = 0; round < 400; ++round) {
        const std::size_t n = 4 + rng.below(9);
        const Graph g = random_capped_graph(n, n + rng.below(n), 2 + rng.below(2), rng);
        if (g.max_degree() < 2)
            continue;
        const Color delta = static_cast<Color>(g.max_degree());
        const Coloring c = random_grundy(g, rng);
        const std::size_t base = count_equal(c, delta);
        with_delta += base > 0;
        for (Vertex v = 0; v < n; ++v) {
            for (Color j = 1; j <= g.degree(v) + 1; ++j)
                REQUIRE(count_equal(kempe_chain(g, c, v, j).coloring, delta) <= base + 1);
            for (Color i = 1; i < c[v]; ++i)
                for (Color j = 1; j < c[v]; ++j)
                    if (i != j)
                        REQUIRE(count_equal(color_elimination(g, c, v, i, j), delta) <= base + 1);
        }
    }
    CHECK(with_delta > 100);
}

TEST_CASE("insertion bound")
{
    CHECK(max_color_after_insertions_bound(1) == 4);
    CHECK(max_color_after_insertions_bound(2) == 5);
    CHECK(max_color_after_insertions_bound(8) == 7);
    CHECK(max_color_after_insertions_bound(50) == 13);
    CHECK(max_color_after_insertions_bound(0) == 3);
}

TEST_CASE("unbounded algorithm names round-trip")
{
    for (Mutation m : {Mutation::kempe, Mutation::elimination})
        for (bool tailored : {false, true}) {
            const UnboundedAlgorithm a{m, tailored};
            CHECK(parse_unbounded_algorithm(to_string(a)) == a);
        }
    CHECK(to_string(UnboundedAlgorithm{Mutation::elimination, true}) == "tailored_ils_ce");
    CHECK_FALSE(parse_unbounded_algorithm("ils").has_value());
}

TEST_CASE("ils state stays consistent and never worsens")
{
    Rng rng(8);
    for (int round = 0; round < 12; ++round) {
        const std::size_t n = 10 + rng.below(40);
        const Graph g = random_capped_graph(n, 2 * n, 3 + rng.below(4), rng);
        const Coloring start = colors(random_colors(n, 4, rng));
        for (UnboundedAlgorithm a : {UnboundedAlgorithm{Mutation::kempe, false}, UnboundedAlgorithm{Mutation::elimination, false},
                                     UnboundedAlgorithm{Mutation::kempe, true},
                                     UnboundedAlgorithm{Mutation::elimination, true}}) {
            UnboundedRunState s(g, start, Rng(round));
            s.local_search_all();
            REQUIRE(ref_is_grundy(g, s.colors()));
            const Color delta = static_cast<Color>(g.max_degree());
            for (int t = 0; t < 1500; ++t) {
                const Coloring parent = s.coloring();
                if (a.tailored && s.max_color() <= 2 && s.conflict_count() == 0) {
                    CHECK(error_code([&] { unbounded_step(a, s); }) == Errc::no_max_color_vertex);
                    break;
                }
                unbounded_step(a, s);
                const Coloring child = s.coloring();
                REQUIRE(ref_is_grundy(g, child.values()));
                REQUIRE(compare(evaluate(g, child), evaluate(g, parent)) != Preference::second_better);
                REQUIRE(count_at_least(child, delta) <= count_at_least(parent, delta));
                if (t % 100 == 0) {
                    const Recount r = recount_all(g, child);
                    REQUIRE(r.conflicts == s.conflict_count());
                    REQUIRE(r.occurrence == s.occurrence());
                    for (Color k = 1; k <= child.max_color(); ++k)
                        REQUIRE(s.buckets().size(k) == count_equal(child, k));
                }
            }
        }
    }
}

TEST_CASE("selection rules")
{
    // Swapping both colors along a proper path gives an equivalent offspring.
    const Graph g = path(6);
    UnboundedRunState s(g, colors({1, 2, 1, 2, 1, 2}), Rng(1));
    const Coloring parent = s.coloring();

    s.begin_step();
    s.mutate_kempe(0, 2);
    s.local_search_changed();
    CHECK(s.offspring_preference() == Preference::equivalent);
    CHECK_FALSE(s.select(Selection::strict));
    CHECK(s.coloring() == parent);

    s.begin_step();
    s.mutate_kempe(0, 2);
    s.local_search_changed();
    CHECK(s.select(Selection::standard));
    CHECK(s.coloring() == colors({2, 1, 2, 1, 2, 1}));

    // The inverted rule (fault injection) keeps anything not strictly better.
    s.begin_step();
    s.mutate_kempe(1, 2);
    s.local_search_changed();
    CHECK(s.offspring_preference() == Preference::equivalent);
    CHECK(s.select(Selection::inverted));
}

TEST_CASE("ils on a single inserted path edge")
{
    Rng rng(6);
    ScenarioSpec spec;
    spec.base = {Family::path, 64, ColoringMode::worst_case, {}};
    spec.insertion = Insertion::path_join;
    const Scenario sc = make_scenario(spec, rng);
    for (UnboundedAlgorithm a : {UnboundedAlgorithm{Mutation::kempe, false}, UnboundedAlgorithm{Mutation::elimination, false},
                                 UnboundedAlgorithm{Mutation::kempe, true}, UnboundedAlgorithm{Mutation::elimination, true}}) {
        const RunOutcome out = run_unbounded(a, sc.graph, sc.coloring, 2, StopRule{0, 1'000'000}, Rng(4));
        CHECK(out.success);
        CHECK(out.final_max_color == 2);
        CHECK(is_proper(sc.graph, out.final_coloring));
        const RunOutcome again = run_unbounded(a, sc.graph, sc.coloring, 2, StopRule{0, 1'000'000}, Rng(4));
        CHECK(again.iterations == out.iterations);
    }
    // Already optimal: zero iterations.
    const RunOutcome none = run_unbounded({Mutation::kempe, false}, path(5), colors({1, 2, 1, 2, 1}), 2, {}, Rng(1));
    CHECK(none.success);
    CHECK(none.iterations == 0);
}
