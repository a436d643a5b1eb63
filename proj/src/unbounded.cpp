#include "dyncolor/unbounded.hpp"

#include "dyncolor/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dyncolor {

namespace {

struct PlainStore {
    std::vector<Color> colors;
    WorkCounters counters;
    std::size_t changes = 0;

    Color color(Vertex v) const { return colors[v]; }
    void recolor(Vertex v, Color c)
    {
        colors[v] = c;
        ++counters.vertices_touched;
        ++changes;
    }
    WorkCounters& work() { return counters; }
};

PlainStore make_store(const Graph& g, const Coloring& c)
{
    if (c.size() != g.vertex_count())
        throw Error(Errc::incompatible_size, "coloring size differs from vertex count");
    return PlainStore{{c.values().begin(), c.values().end()}, {}, 0};
}

void check_vertex(const Graph& g, Vertex v)
{
    if (v >= g.vertex_count())
        throw Error(Errc::vertex_out_of_range, "vertex " + std::to_string(v));
}

std::vector<Vertex> all_vertices(std::size_t n)
{
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{0});
    return all;
}

} // namespace

GrundyResult grundy_local_search_stats(const Graph& g, const Coloring& c, QueuePolicy policy)
{
    PlainStore store = make_store(g, c);
    ops::Scratch scratch;
    scratch.reserve(g.vertex_count());
    const auto all = all_vertices(g.vertex_count());
    GrundyResult r;
    r.recolorings = ops::grundy_search(g, store, all, policy, scratch);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (store.colors[v] != c[v])
            ++r.changed_vertices;
    r.work = store.counters;
    r.coloring = Coloring(std::move(store.colors), Palette::unbounded());
    return r;
}

Coloring grundy_local_search(const Graph& g, const Coloring& c, QueuePolicy policy)
{
    return grundy_local_search_stats(g, c, policy).coloring;
}

KempeResult kempe_chain(const Graph& g, const Coloring& c, Vertex v, Color j)
{
    PlainStore store = make_store(g, c);
    check_vertex(g, v);
    if (j < 1 || j > g.degree(v) + 1)
        throw Error(Errc::precondition_violated, "kempe color must lie in 1..deg(v)+1");
    ops::Scratch scratch;
    scratch.reserve(g.vertex_count());
    const Color i = c[v];
    const auto comp = ops::kempe_chain(g, store, v, j, scratch);
    KempeResult r;
    r.component = KempeComponent{{comp.begin(), comp.end()}, i, j};
    std::sort(r.component.vertices.begin(), r.component.vertices.end());
    r.coloring = Coloring(std::move(store.colors), Palette::unbounded());
    return r;
}

Coloring color_elimination(const Graph& g, const Coloring& c, Vertex v, Color i, Color j)
{
    PlainStore store = make_store(g, c);
    check_vertex(g, v);
    if (c[v] < 3)
        return Coloring(std::move(store.colors), Palette::unbounded());
    if (i == j || i < 1 || j < 1 || i >= c[v] || j >= c[v])
        throw Error(Errc::precondition_violated, "elimination colors must be distinct and below c(v)");
    ops::Scratch scratch;
    scratch.reserve(g.vertex_count());
    ops::color_elimination(g, store, v, i, j, scratch);
    return Coloring(std::move(store.colors), Palette::unbounded());
}

Color max_color_after_insertions_bound(std::uint64_t T)
{
    // Integer square root of 2T, corrected for floating-point rounding.
    const std::uint64_t x = 2 * T;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    while (r * r > x)
        --r;
    while ((r + 1) * (r + 1) <= x)
        ++r;
    return static_cast<Color>(r + 3);
}

std::string_view to_string(UnboundedAlgorithm a) noexcept
{
    if (a.mutation == Mutation::kempe)
        return a.tailored ? "tailored_ils_kempe" : "ils_kempe";
    return a.tailored ? "tailored_ils_ce" : "ils_ce";
}

std::optional<UnboundedAlgorithm> parse_unbounded_algorithm(std::string_view name) noexcept
{
    for (Mutation m : {Mutation::kempe, Mutation::elimination})
        for (bool t : {false, true})
            if (to_string(UnboundedAlgorithm{m, t}) == name)
                return UnboundedAlgorithm{m, t};
    return std::nullopt;
}

UnboundedRunState::UnboundedRunState(Graph graph, const Coloring& initial, Rng rng)
    : graph_(std::move(graph)), colors_(initial.values().begin(), initial.values().end()), rng_(rng)
{
    if (colors_.size() != graph_.vertex_count())
        throw Error(Errc::incompatible_size, "coloring size differs from vertex count");
    occurrence_ = ColorOccurrence::from_colors(colors_);
    conflicts_ = ConflictSet::rebuild(graph_, colors_);
    buckets_ = ColorBuckets::build(colors_);
    scratch_.reserve(graph_.vertex_count());
}

void UnboundedRunState::recolor(Vertex v, Color c)
{
    const Color old = colors_[v];
    if (old == c)
        return;
    colors_[v] = c;
    work_.edges_scanned += conflicts_.on_recolor(graph_, colors_, v, old);
    work_.vertices_touched += 1 + graph_.degree(v);
    occurrence_.on_recolor(old, c);
    buckets_.move(v, old, c);
    if (logging_) {
        log_.emplace_back(v, old);
        delta_.record(old, c);
    }
}

std::size_t UnboundedRunState::local_search_all(QueuePolicy policy)
{
    const auto all = all_vertices(graph_.vertex_count());
    return ops::grundy_search(graph_, *this, all, policy, scratch_);
}

void UnboundedRunState::begin_step()
{
    log_.clear();
    delta_.clear();
    parent_conflicts_ = conflict_count();
    logging_ = true;
}

std::span<const Vertex> UnboundedRunState::mutate_kempe(Vertex v, Color j)
{
    return ops::kempe_chain(graph_, *this, v, j, scratch_);
}

std::span<const Vertex> UnboundedRunState::mutate_elimination(Vertex v, Color i, Color j)
{
    return ops::color_elimination(graph_, *this, v, i, j, scratch_);
}

std::size_t UnboundedRunState::local_search_changed(QueuePolicy policy)
{
    seeds_.clear();
    for (const auto& [v, old] : log_) {
        seeds_.push_back(v);
        for (Vertex u : graph_.neighbors(v))
            seeds_.push_back(u);
    }
    std::sort(seeds_.begin(), seeds_.end());
    seeds_.erase(std::unique(seeds_.begin(), seeds_.end()), seeds_.end());
    return ops::grundy_search(graph_, *this, seeds_, policy, scratch_);
}

Preference UnboundedRunState::offspring_preference() const
{
    return compare_offspring(conflict_count(), parent_conflicts_, delta_);
}

bool UnboundedRunState::select(Selection rule)
{
    const Preference p = offspring_preference();
    bool keep = false;
    switch (rule) {
    case Selection::standard: keep = p != Preference::second_better; break;
    case Selection::strict: keep = p == Preference::first_better; break;
    case Selection::accept_all: keep = true; break;
    case Selection::inverted: keep = p != Preference::first_better; break;
    }
    logging_ = false;
    if (!keep)
        for (auto it = log_.rbegin(); it != log_.rend(); ++it)
            recolor(it->first, it->second);
    return keep;
}

namespace {

bool finish_step(UnboundedRunState& s, const IlsOptions& options)
{
    s.local_search_changed(options.queue);
    const bool kept = s.select(options.selection);
    s.finish_iteration();
    return kept;
}

/// Uniform ordered pair (i, j), i != j, from 1..c-1; equivalent to a uniform
/// unordered pair followed by a uniform orientation.
std::pair<Color, Color> draw_color_pair(Rng& rng, Color c)
{
    const auto i = static_cast<Color>(rng.between(1, c - 1));
    auto j = static_cast<Color>(rng.between(1, c - 2));
    if (j >= i)
        ++j;
    return {i, j};
}

void apply_elimination_at(UnboundedRunState& s, Vertex v)
{
    const Color c = s.color(v);
    if (c < 3)
        return;
    const auto [i, j] = draw_color_pair(s.rng(), c);
    s.mutate_elimination(v, i, j);
}

void apply_kempe_at(UnboundedRunState& s, Vertex v)
{
    const auto j = static_cast<Color>(s.rng().between(1, s.graph().degree(v) + 1));
    s.mutate_kempe(v, j);
}

} // namespace

bool ils_step(UnboundedRunState& s, Mutation op, const IlsOptions& options)
{
    s.begin_step();
    const auto v = static_cast<Vertex>(s.rng().below(s.graph().vertex_count()));
    if (op == Mutation::kempe)
        apply_kempe_at(s, v);
    else
        apply_elimination_at(s, v);
    return finish_step(s, options);
}

bool tailored_ils_step(UnboundedRunState& s, Mutation op, const IlsOptions& options)
{
    const Color top = s.max_color();
    if (top <= 2 && s.conflict_count() == 0)
        throw Error(Errc::no_max_color_vertex, "largest color is at most 2 on a proper coloring");
    s.begin_step();
    const Vertex w = s.buckets().sample(top, s.rng());
    if (op == Mutation::elimination) {
        apply_elimination_at(s, w);
    } else if (s.graph().degree(w) > 0) {
        const auto nb = s.graph().neighbors(w);
        apply_kempe_at(s, nb[s.rng().below(nb.size())]);
    }
    return finish_step(s, options);
}

bool unbounded_step(UnboundedAlgorithm a, UnboundedRunState& s, const IlsOptions& options)
{
    return a.tailored ? tailored_ils_step(s, a.mutation, options) : ils_step(s, a.mutation, options);
}

RunOutcome run_unbounded(UnboundedAlgorithm a, const Graph& g, const Coloring& initial, Color target_max_color,
                         const StopRule& stop, Rng rng, const IlsOptions& options,
                         const UnboundedObserver& observer)
{
    UnboundedRunState s(g, initial, rng);
    s.local_search_all(options.queue);
    auto done = [&] {
        return s.conflict_count() <= stop.target_conflicts && s.max_color() <= target_max_color;
    };
    RunOutcome out;
    while (!done() && s.iteration() < stop.max_iterations) {
        const std::uint64_t before = s.work().total();
        unbounded_step(a, s, options);
        out.max_iteration_work = std::max(out.max_iteration_work, s.work().total() - before);
        if (observer)
            observer(s);
    }
    out.iterations = s.iteration();
    out.success = done();
    out.final_conflicts = s.conflict_count();
    out.final_max_color = s.max_color();
    out.work = s.work();
    out.final_coloring = s.coloring();
    return out;
}

} // namespace dyncolor
