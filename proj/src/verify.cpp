#include "dyncolor/verify.hpp"

#include "dyncolor/dynamics.hpp"
#include "dyncolor/error.hpp"
#include "dyncolor/oracles.hpp"
#include "dyncolor/unbounded.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <functional>
#include <utility>

namespace dyncolor {

namespace {

constexpr std::array fault_names{
    std::pair{Fault::none, "none"},
    std::pair{Fault::accept_all, "accept_all"},
    std::pair{Fault::inverted, "inverted"},
    std::pair{Fault::keep_unsearched, "keep_unsearched"},
    std::pair{Fault::eager_repair, "eager_repair"},
};

constexpr std::array<std::string_view, 3> suites{"delta_increase", "delta_monotone", "insertion_repair"};

/// Trajectory length before a fresh instance is drawn.
constexpr std::uint64_t trajectory_length = 200;

struct Start {
    Graph graph;
    Coloring coloring;
    std::string family;
};

/// Instance pool: sparse random bipartite graphs, worst-case trees after the
/// root edge, and planar grids after their gadget edges.
std::vector<Start> make_pool(Rng& rng)
{
    std::vector<Start> pool;
    for (int i = 0; i < 6; ++i) {
        ScenarioSpec spec;
        spec.base = {Family::random_bipartite, 30, ColoringMode::proper_canonical, {}};
        spec.base.params.edge_probability = 0.07 + 0.01 * i;
        spec.insertion = Insertion::random_bipartite;
        spec.T = 1 + static_cast<std::size_t>(i);
        try {
            Scenario s = make_scenario(spec, rng);
            pool.push_back({std::move(s.graph), std::move(s.coloring), "random_bipartite"});
        } catch (const Error& e) {
            if (e.code() != Errc::insufficient_components)
                throw;
        }
    }
    for (std::size_t n : {15u, 31u}) {
        ScenarioSpec spec;
        spec.base = {Family::complete_binary_tree, n, ColoringMode::worst_case, {}};
        spec.insertion = Insertion::tree_root_edge;
        Scenario s = make_scenario(spec, rng);
        pool.push_back({std::move(s.graph), std::move(s.coloring), "complete_binary_tree"});
    }
    for (std::size_t T : {1u, 2u, 4u}) {
        ScenarioSpec spec;
        spec.base = {Family::planar_grid, 144, ColoringMode::worst_case, {}};
        spec.base.params.T = T;
        spec.insertion = Insertion::planar_gadgets;
        Scenario s = make_scenario(spec, rng);
        pool.push_back({std::move(s.graph), std::move(s.coloring), "planar_grid"});
    }
    return pool;
}

Coloring unbounded_copy(std::span<const Color> c)
{
    return Coloring(std::vector<Color>(c.begin(), c.end()), Palette::unbounded());
}

/// Pool instance with either its own coloring or a random 4-coloring.
Coloring start_coloring(const Start& st, Rng& rng)
{
    if (rng.coin())
        return unbounded_copy(st.coloring.values());
    std::vector<Color> c(st.graph.vertex_count());
    for (auto& x : c)
        x = static_cast<Color>(rng.between(1, 4));
    return Coloring(std::move(c), Palette::unbounded());
}

std::string serialize(const std::string& header, const Graph& g, std::span<const Color> before,
                      std::span<const Color> after)
{
    std::string out = header + "\n" + write_edge_list(g, nullptr);
    out += "before";
    for (Color c : before)
        out += fmt::format(" {}", c);
    out += "\nafter";
    for (Color c : after)
        out += fmt::format(" {}", c);
    out += "\n";
    return out;
}

void record(InvariantResult& inv, bool ok, const std::function<std::string()>& describe)
{
    ++inv.checks;
    if (ok)
        return;
    if (inv.violations++ == 0)
        inv.counterexample = describe();
}

std::pair<Color, Color> draw_color_pair(Rng& rng, Color c)
{
    const auto i = static_cast<Color>(rng.between(1, c - 1));
    auto j = static_cast<Color>(rng.between(1, c - 2));
    if (j >= i)
        ++j;
    return {i, j};
}

struct Move {
    std::string text;
};

/// The mutation half of one ILS iteration, drawn exactly as the algorithms do.
Move mutate(UnboundedRunState& s, UnboundedAlgorithm a)
{
    Rng& rng = s.rng();
    const Graph& g = s.graph();
    Vertex v;
    if (a.tailored) {
        const Color top = s.max_color();
        if (top <= 2 && s.conflict_count() == 0)
            throw Error(Errc::no_max_color_vertex, "largest color is at most 2 on a proper coloring");
        s.begin_step();
        const Vertex w = s.buckets().sample(top, rng);
        if (a.mutation == Mutation::kempe) {
            if (g.degree(w) == 0)
                return {fmt::format("tailored kempe at isolated {} (no-op)", w)};
            const auto nb = g.neighbors(w);
            v = nb[rng.below(nb.size())];
        } else {
            v = w;
        }
    } else {
        s.begin_step();
        v = static_cast<Vertex>(rng.below(g.vertex_count()));
    }
    if (a.mutation == Mutation::kempe) {
        const auto j = static_cast<Color>(rng.between(1, g.degree(v) + 1));
        s.mutate_kempe(v, j);
        return {fmt::format("kempe_chain v={} j={}", v, j)};
    }
    const Color c = s.color(v);
    if (c < 3)
        return {fmt::format("color_elimination v={} (no-op, color {})", v, c)};
    const auto [i, j] = draw_color_pair(rng, c);
    s.mutate_elimination(v, i, j);
    return {fmt::format("color_elimination v={} i={} j={}", v, i, j)};
}

Selection selection_for(Fault f)
{
    switch (f) {
    case Fault::accept_all: return Selection::accept_all;
    case Fault::inverted: return Selection::inverted;
    default: return Selection::standard;
    }
}

constexpr std::array<UnboundedAlgorithm, 4> ils_algorithms{
    UnboundedAlgorithm{Mutation::kempe, false},
    UnboundedAlgorithm{Mutation::elimination, false},
    UnboundedAlgorithm{Mutation::kempe, true},
    UnboundedAlgorithm{Mutation::elimination, true},
};

std::size_t count_from(const ColorOccurrence& occ, Color lo, Color hi)
{
    std::size_t k = 0;
    for (Color c = lo; c <= hi; ++c)
        k += occ.count(c);
    return k;
}

/// Shared driver for the two ILS suites. `check` sees the parent coloring
/// and Delta-counts before the mutation, after the mutation and after the
/// full iteration.
SuiteReport ils_suite(std::string_view id, std::uint64_t budget, std::uint64_t seed, Fault fault, bool monotone)
{
    SuiteReport rep;
    rep.suite = std::string(id);
    rep.fault = fault;
    rep.invariants.push_back({monotone ? "count(Delta) + count(Delta+1) never increases"
                                       : "single move adds at most one Delta-colored vertex",
                              0, 0, {}, true});
    rep.invariants.push_back({"incremental state matches recount", 0, 0, {}, true});
    if (budget == 0)
        return rep;

    Rng rng(mix64(seed ^ fnv1a64(id)));
    const std::vector<Start> pool = make_pool(rng);
    const Selection rule = selection_for(fault);

    while (rep.cases < budget) {
        const Start& st = pool[rng.below(pool.size())];
        const UnboundedAlgorithm a = ils_algorithms[rng.below(ils_algorithms.size())];
        UnboundedRunState s(st.graph, start_coloring(st, rng), Rng(rng.next_u64()));
        s.local_search_all();
        const auto D = static_cast<Color>(st.graph.max_degree());

        for (std::uint64_t step = 0; step < trajectory_length && rep.cases < budget; ++step) {
            const std::vector<Color> parent(s.colors().begin(), s.colors().end());
            const std::size_t before_delta = s.occurrence().count(D);
            const std::size_t before_top = count_from(s.occurrence(), D, D + 1);
            Move mv;
            try {
                mv = mutate(s, a);
            } catch (const Error& e) {
                if (e.code() != Errc::no_max_color_vertex)
                    throw;
                break;
            }
            const std::size_t mutated_delta = s.occurrence().count(D);
            const std::vector<Color> mutant(s.colors().begin(), s.colors().end());
            if (fault == Fault::keep_unsearched) {
                s.select(Selection::accept_all);
            } else {
                s.local_search_changed();
                s.select(rule);
            }
            s.finish_iteration();
            ++rep.cases;

            const auto header = [&](std::string_view what) {
                return fmt::format("{} on {} with {} ({}), Delta={}, iteration {}: {}", rep.suite, st.family,
                                   to_string(a), mv.text, D, s.iteration(), what);
            };
            if (monotone) {
                const std::size_t after_top = count_from(s.occurrence(), D, D + 1);
                record(rep.invariants[0], after_top <= before_top, [&] {
                    return serialize(header(fmt::format("count {} -> {}", before_top, after_top)), st.graph,
                                     parent, s.colors());
                });
            } else {
                record(rep.invariants[0], mutated_delta <= before_delta + 1, [&] {
                    return serialize(header(fmt::format("Delta-count {} -> {}", before_delta, mutated_delta)),
                                     st.graph, parent, mutant);
                });
            }
            const Recount rc = recount_all(st.graph, s.coloring());
            record(rep.invariants[1], rc.conflicts == s.conflict_count() && rc.occurrence == s.occurrence(), [&] {
                return serialize(header("incremental counters disagree with a recount"), st.graph, parent,
                                 s.colors());
            });
        }
    }
    return rep;
}

/// Grundy search preceded, under the eager_repair fault, by recoloring every
/// conflicting vertex simultaneously with its minimum free color.
Coloring repair(const Graph& g, const Coloring& c, Fault fault)
{
    if (fault != Fault::eager_repair)
        return grundy_local_search(g, c);
    std::vector<Color> snap(c.values().begin(), c.values().end());
    std::vector<Color> next = snap;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (Vertex w : g.neighbors(v))
            if (snap[w] == snap[v]) {
                next[v] = min_free_color(g, snap, v);
                break;
            }
    return grundy_local_search(g, Coloring(std::move(next), Palette::unbounded()));
}

SuiteReport insertion_suite(std::string_view id, std::uint64_t budget, std::uint64_t seed, Fault fault)
{
    SuiteReport rep;
    rep.suite = std::string(id);
    rep.fault = fault;
    rep.invariants.push_back({"at most T vertices end above their old color", 0, 0, {}, true});
    // Reported only: fails on two disjoint conflicts that share a repair (see
    // the counting argument in the README).
    rep.invariants.push_back({"at most T vertices change color", 0, 0, {}, false});
    rep.invariants.push_back({"repair ends proper and Grundy", 0, 0, {}, true});
    if (budget == 0)
        return rep;

    Rng rng(mix64(seed ^ fnv1a64(id)));
    const std::vector<Start> pool = make_pool(rng);

    while (rep.cases < budget) {
        const Start& st = pool[rng.below(pool.size())];
        const UnboundedAlgorithm a = ils_algorithms[rng.below(ils_algorithms.size())];
        // A Grundy coloring somewhere along an ILS trajectory.
        UnboundedRunState s(st.graph, start_coloring(st, rng), Rng(rng.next_u64()));
        s.local_search_all();
        const std::uint64_t walk = rng.below(20);
        try {
            for (std::uint64_t k = 0; k < walk; ++k)
                unbounded_step(a, s);
        } catch (const Error& e) {
            if (e.code() != Errc::no_max_color_vertex)
                throw;
        }
        const std::vector<Color> old(s.colors().begin(), s.colors().end());

        // Up to T new edges, conflicting under the current coloring.
        const std::size_t T = 1 + rng.below(8);
        Graph g = st.graph;
        const std::size_t n = g.vertex_count();
        std::size_t inserted = 0;
        for (std::size_t tries = 0; inserted < T && tries < 200 * T; ++tries) {
            const auto u = static_cast<Vertex>(rng.below(n));
            const auto v = static_cast<Vertex>(rng.below(n));
            if (u == v || old[u] != old[v] || g.has_edge(u, v))
                continue;
            g.insert_edge(u, v);
            ++inserted;
        }
        if (inserted == 0)
            continue;
        ++rep.cases;

        const Coloring fixed = repair(g, unbounded_copy(old), fault);
        std::size_t raised = 0, changed = 0;
        for (Vertex v = 0; v < n; ++v) {
            raised += fixed[v] > old[v];
            changed += fixed[v] != old[v];
        }
        const auto header = [&](std::string_view what) {
            return fmt::format("{} on {} after {} ILS iterations of {}, T={}: {}", rep.suite, st.family, walk,
                               to_string(a), inserted, what);
        };
        record(rep.invariants[0], raised <= inserted, [&] {
            return serialize(header(fmt::format("{} vertices raised", raised)), g, old, fixed.values());
        });
        record(rep.invariants[1], changed <= inserted, [&] {
            return serialize(header(fmt::format("{} vertices changed", changed)), g, old, fixed.values());
        });
        record(rep.invariants[2], is_grundy_coloring(g, fixed), [&] {
            return serialize(header("result is not a proper Grundy coloring"), g, old, fixed.values());
        });
    }
    return rep;
}

} // namespace

std::string_view to_string(Fault f) noexcept
{
    for (const auto& [k, name] : fault_names)
        if (k == f)
            return name;
    return "?";
}

std::optional<Fault> parse_fault(std::string_view name) noexcept
{
    for (const auto& [k, n] : fault_names)
        if (n == name)
            return k;
    return std::nullopt;
}

bool SuiteReport::passed() const noexcept
{
    return std::all_of(invariants.begin(), invariants.end(),
                       [](const InvariantResult& i) { return !i.gating || i.violations == 0; });
}

std::vector<std::string_view> suite_ids()
{
    return {suites.begin(), suites.end()};
}

Fault sensitivity_fault(std::string_view suite)
{
    if (suite == "delta_increase")
        return Fault::keep_unsearched;
    if (suite == "delta_monotone")
        return Fault::accept_all;
    if (suite == "insertion_repair")
        return Fault::eager_repair;
    throw Error(Errc::unknown_suite, fmt::format("no suite named '{}'", suite));
}

SuiteReport verify_invariant_suite(std::string_view suite, std::uint64_t budget, std::uint64_t seed, Fault fault)
{
    if (suite == "delta_increase")
        return ils_suite(suite, budget, seed, fault, false);
    if (suite == "delta_monotone")
        return ils_suite(suite, budget, seed, fault, true);
    if (suite == "insertion_repair")
        return insertion_suite(suite, budget, seed, fault);
    throw Error(Errc::unknown_suite, fmt::format("no suite named '{}'", suite));
}

std::string format_report(const SuiteReport& r)
{
    std::string out = fmt::format("suite {} (fault: {}): {}", r.suite, to_string(r.fault),
                                  r.passed() ? "PASS" : "FAIL");
    if (r.vacuous())
        out += " [vacuous: 0 cases executed]";
    else
        out += fmt::format(", {} cases", r.cases);
    out += "\n";
    for (const auto& inv : r.invariants) {
        out += fmt::format("  {} {}: {} checks, {} violations\n", inv.gating ? "*" : "-", inv.name, inv.checks,
                           inv.violations);
        if (!inv.counterexample.empty())
            out += "    first counterexample:\n    " + inv.counterexample + "\n";
    }
    return out;
}

} // namespace dyncolor
