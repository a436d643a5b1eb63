#pragma once

#include "dyncolor/coloring.hpp"
#include "dyncolor/conflict_set.hpp"
#include "dyncolor/graph.hpp"
#include "dyncolor/rng.hpp"
#include "dyncolor/run_outcome.hpp"
#include "dyncolor/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace dyncolor {

enum class BoundedAlgorithm { rls, ea, tailored_rls, tailored_ea };

std::string_view to_string(BoundedAlgorithm a) noexcept;
std::optional<BoundedAlgorithm> parse_bounded_algorithm(std::string_view name) noexcept;

/// Search state for the bounded palette {1..k}; fitness is the number of
/// conflicting edges.
class BoundedRunState {
public:
    /// Throws Error{precondition_violated} unless the palette is bounded with
    /// k >= 2, and Error{incompatible_size} if sizes disagree.
    BoundedRunState(Graph graph, const Coloring& initial, Rng rng);

    const Graph& graph() const noexcept { return graph_; }
    std::span<const Color> colors() const noexcept { return colors_; }
    Coloring coloring() const { return Coloring(colors_, Palette::of_size(k_)); }
    Color palette_size() const noexcept { return k_; }
    const ConflictSet& conflicts() const noexcept { return conflicts_; }
    std::size_t conflict_count() const noexcept { return conflicts_.conflict_edge_count(); }
    std::uint64_t iteration() const noexcept { return iteration_; }
    const WorkCounters& work() const noexcept { return work_; }
    Rng& rng() noexcept { return rng_; }

    /// Uniform color from {1..k} \ {current}.
    Color draw_new_color(Color current);

    /// Change in conflict count if v were recolored to c.
    std::int64_t recolor_delta(Vertex v, Color c);

    /// Recolor one vertex, keeping the conflict set consistent.
    void recolor(Vertex v, Color c);

    /// Draws m distinct vertices uniformly, writing them to `out`.
    void sample_distinct(std::size_t m, std::vector<Vertex>& out);

    /// Mutates every vertex in `chosen` to a fresh color, then keeps the
    /// result iff conflicts did not increase. Returns true if accepted.
    bool mutate_and_select(std::span<const Vertex> chosen);

    void finish_iteration() noexcept { ++iteration_; }

private:
    std::uint32_t next_epoch();

    Graph graph_;
    std::vector<Color> colors_;
    Color k_;
    ConflictSet conflicts_;
    Rng rng_;
    std::uint64_t iteration_ = 0;
    WorkCounters work_;

    std::vector<std::uint32_t> mark_;
    std::uint32_t epoch_ = 0;
    std::vector<std::pair<Vertex, Color>> undo_;
    std::vector<Vertex> scratch_;
    std::vector<Vertex> chosen_;
};

/// Returns true if the offspring was accepted.
bool rls_step(BoundedRunState& s);
bool ea_step(BoundedRunState& s);
bool tailored_rls_step(BoundedRunState& s);
bool tailored_ea_step(BoundedRunState& s);

bool bounded_step(BoundedAlgorithm a, BoundedRunState& s);

using BoundedObserver = std::function<void(const BoundedRunState&)>;

/// Runs until the conflict count reaches stop.target_conflicts or the budget
/// is exhausted. The observer, if set, sees the state after every iteration.
RunOutcome run_bounded(BoundedAlgorithm a, const Graph& g, const Coloring& initial, const StopRule& stop,
                       Rng rng, const BoundedObserver& observer = {});

} // namespace dyncolor
