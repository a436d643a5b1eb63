#include "dyncolor/bounded.hpp"

#include "dyncolor/error.hpp"

#include <algorithm>

namespace dyncolor {

std::string_view to_string(BoundedAlgorithm a) noexcept
{
    switch (a) {
    case BoundedAlgorithm::rls: return "rls";
    case BoundedAlgorithm::ea: return "ea";
    case BoundedAlgorithm::tailored_rls: return "tailored_rls";
    case BoundedAlgorithm::tailored_ea: return "tailored_ea";
    }
    return "?";
}

std::optional<BoundedAlgorithm> parse_bounded_algorithm(std::string_view name) noexcept
{
    for (auto a : {BoundedAlgorithm::rls, BoundedAlgorithm::ea, BoundedAlgorithm::tailored_rls,
                   BoundedAlgorithm::tailored_ea})
        if (to_string(a) == name)
            return a;
    return std::nullopt;
}

BoundedRunState::BoundedRunState(Graph graph, const Coloring& initial, Rng rng)
    : graph_(std::move(graph)), colors_(initial.values().begin(), initial.values().end()),
      k_(initial.palette().k), rng_(rng), mark_(graph_.vertex_count(), 0)
{
    if (!initial.palette().bounded || k_ < 2)
        throw Error(Errc::precondition_violated, "bounded run needs a palette of size k >= 2");
    if (colors_.size() != graph_.vertex_count())
        throw Error(Errc::incompatible_size, "coloring size differs from vertex count");
    conflicts_ = ConflictSet::rebuild(graph_, colors_);
}

Color BoundedRunState::draw_new_color(Color current)
{
    auto c = static_cast<Color>(rng_.between(1, k_ - 1));
    if (c >= current)
        ++c;
    return c;
}

std::int64_t BoundedRunState::recolor_delta(Vertex v, Color c)
{
    const Color old = colors_[v];
    std::int64_t delta = 0;
    for (Vertex u : graph_.neighbors(v)) {
        if (colors_[u] == c)
            ++delta;
        else if (colors_[u] == old)
            --delta;
    }
    work_.vertices_touched += 1 + graph_.degree(v);
    work_.edges_scanned += graph_.degree(v);
    return delta;
}

void BoundedRunState::recolor(Vertex v, Color c)
{
    const Color old = colors_[v];
    if (old == c)
        return;
    colors_[v] = c;
    work_.edges_scanned += conflicts_.on_recolor(graph_, colors_, v, old);
    work_.vertices_touched += 1 + graph_.degree(v);
}

std::uint32_t BoundedRunState::next_epoch()
{
    if (++epoch_ == 0) {
        std::fill(mark_.begin(), mark_.end(), 0);
        epoch_ = 1;
    }
    return epoch_;
}

void BoundedRunState::sample_distinct(std::size_t m, std::vector<Vertex>& out)
{
    // Floyd's algorithm: m draws for m distinct vertices.
    const std::size_t n = graph_.vertex_count();
    const std::uint32_t e = next_epoch();
    for (std::size_t j = n - m; j < n; ++j) {
        auto t = static_cast<Vertex>(rng_.below(j + 1));
        if (mark_[t] == e)
            t = static_cast<Vertex>(j);
        mark_[t] = e;
        out.push_back(t);
    }
    work_.vertices_touched += m;
}

bool BoundedRunState::mutate_and_select(std::span<const Vertex> chosen)
{
    const std::size_t before = conflict_count();
    undo_.clear();
    for (Vertex v : chosen) {
        const Color old = colors_[v];
        undo_.emplace_back(v, old);
        recolor(v, draw_new_color(old));
    }
    if (conflict_count() <= before)
        return true;
    for (auto it = undo_.rbegin(); it != undo_.rend(); ++it)
        recolor(it->first, it->second);
    return false;
}

namespace {

bool single_vertex_step(BoundedRunState& s, Vertex v)
{
    const Color c = s.draw_new_color(s.colors()[v]);
    const bool accept = s.recolor_delta(v, c) <= 0;
    if (accept)
        s.recolor(v, c);
    s.finish_iteration();
    return accept;
}

} // namespace

bool rls_step(BoundedRunState& s)
{
    const auto v = static_cast<Vertex>(s.rng().below(s.graph().vertex_count()));
    return single_vertex_step(s, v);
}

bool tailored_rls_step(BoundedRunState& s)
{
    Vertex v;
    if (!s.conflicts().empty() && s.rng().coin())
        v = s.conflicts().sample(s.rng());
    else
        v = static_cast<Vertex>(s.rng().below(s.graph().vertex_count()));
    return single_vertex_step(s, v);
}

bool ea_step(BoundedRunState& s)
{
    const std::size_t n = s.graph().vertex_count();
    const auto m = static_cast<std::size_t>(s.rng().binomial(n, 1.0 / static_cast<double>(n)));
    std::vector<Vertex> chosen;
    chosen.reserve(m);
    s.sample_distinct(m, chosen);
    const bool accept = s.mutate_and_select(chosen);
    s.finish_iteration();
    return accept;
}

bool tailored_ea_step(BoundedRunState& s)
{
    const ConflictSet& cs = s.conflicts();
    if (cs.empty())
        return ea_step(s);

    const std::size_t n = s.graph().vertex_count();
    const std::size_t b = cs.size();
    Rng& rng = s.rng();

    // The mutation set is decided from the parent's conflict flags before
    // anything is recolored.
    std::vector<Vertex> chosen;
    for (Vertex v : cs.members())
        if (rng.coin())
            chosen.push_back(v);

    const std::size_t rest = n - b;
    const auto m = static_cast<std::size_t>(rng.binomial(rest, 1.0 / static_cast<double>(n)));
    if (m > 0) {
        if (2 * b <= n && 2 * m <= rest) {
            // Rejection sampling over non-conflicting vertices; at least half
            // of all draws succeed.
            std::vector<Vertex> picked;
            while (picked.size() < m) {
                const auto v = static_cast<Vertex>(rng.below(n));
                if (cs.flagged(v) || std::find(picked.begin(), picked.end(), v) != picked.end())
                    continue;
                picked.push_back(v);
            }
            chosen.insert(chosen.end(), picked.begin(), picked.end());
        } else {
            std::vector<Vertex> pool;
            pool.reserve(rest);
            for (Vertex v = 0; v < n; ++v)
                if (!cs.flagged(v))
                    pool.push_back(v);
            for (std::size_t i = 0; i < m; ++i) {
                const std::size_t j = i + rng.below(pool.size() - i);
                std::swap(pool[i], pool[j]);
                chosen.push_back(pool[i]);
            }
        }
    }
    const bool accept = s.mutate_and_select(chosen);
    s.finish_iteration();
    return accept;
}

bool bounded_step(BoundedAlgorithm a, BoundedRunState& s)
{
    switch (a) {
    case BoundedAlgorithm::rls: return rls_step(s);
    case BoundedAlgorithm::ea: return ea_step(s);
    case BoundedAlgorithm::tailored_rls: return tailored_rls_step(s);
    case BoundedAlgorithm::tailored_ea: return tailored_ea_step(s);
    }
    return false;
}

RunOutcome run_bounded(BoundedAlgorithm a, const Graph& g, const Coloring& initial, const StopRule& stop,
                       Rng rng, const BoundedObserver& observer)
{
    BoundedRunState s(g, initial, rng);
    RunOutcome out;
    while (s.conflict_count() > stop.target_conflicts && s.iteration() < stop.max_iterations) {
        const std::uint64_t before = s.work().total();
        bounded_step(a, s);
        out.max_iteration_work = std::max(out.max_iteration_work, s.work().total() - before);
        if (observer)
            observer(s);
    }
    out.iterations = s.iteration();
    out.success = s.conflict_count() <= stop.target_conflicts;
    out.final_conflicts = s.conflict_count();
    out.work = s.work();
    out.final_coloring = s.coloring();
    out.final_max_color = out.final_coloring.max_color();
    return out;
}

} // namespace dyncolor
