#pragma once

#include "dyncolor/color_buckets.hpp"
#include "dyncolor/coloring.hpp"
#include "dyncolor/conflict_set.hpp"
#include "dyncolor/graph.hpp"
#include "dyncolor/occurrence.hpp"
#include "dyncolor/recolor_ops.hpp"
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

struct KempeComponent {
    std::vector<Vertex> vertices;
    Color i = 0;
    Color j = 0;
};

struct KempeResult {
    Coloring coloring;
    KempeComponent component;
};

struct GrundyResult {
    Coloring coloring;
    std::size_t recolorings = 0;
    /// Distinct vertices whose final color differs from the input.
    std::size_t changed_vertices = 0;
    WorkCounters work;
};

/// Returns a Grundy coloring reached by repeatedly recoloring non-Grundy
/// vertices with their minimum free color.
Coloring grundy_local_search(const Graph& g, const Coloring& c, QueuePolicy policy = {});
GrundyResult grundy_local_search_stats(const Graph& g, const Coloring& c, QueuePolicy policy = {});

/// Throws Error{precondition_violated} unless 1 <= j <= deg(v)+1.
KempeResult kempe_chain(const Graph& g, const Coloring& c, Vertex v, Color j);

/// No-op when c(v) < 3. Throws Error{precondition_violated} for i == j or
/// i, j outside 1..c(v)-1.
Coloring color_elimination(const Graph& g, const Coloring& c, Vertex v, Color i, Color j);

/// floor(sqrt(2T)) + 3: bound on the largest color after Grundy local search
/// following T insertions into a properly 2-colored bipartite graph.
Color max_color_after_insertions_bound(std::uint64_t T);

enum class Mutation { kempe, elimination };

/// Selection rule. `standard` accepts offspring that are at least as good;
/// the remaining rules exist for fault injection and comparison runs.
enum class Selection { standard, strict, accept_all, inverted };

struct UnboundedAlgorithm {
    Mutation mutation = Mutation::kempe;
    bool tailored = false;

    friend bool operator==(const UnboundedAlgorithm&, const UnboundedAlgorithm&) = default;
};

std::string_view to_string(UnboundedAlgorithm a) noexcept;
std::optional<UnboundedAlgorithm> parse_unbounded_algorithm(std::string_view name) noexcept;

/// ILS state with incrementally maintained conflicts, color occurrences and
/// per-color buckets. Every recoloring inside a step is logged so that a
/// rejected offspring is undone in time proportional to its changes.
class UnboundedRunState {
public:
    /// Throws Error{incompatible_size}.
    UnboundedRunState(Graph graph, const Coloring& initial, Rng rng);

    const Graph& graph() const noexcept { return graph_; }
    std::span<const Color> colors() const noexcept { return colors_; }
    Coloring coloring() const { return Coloring(colors_, Palette::unbounded()); }
    const ColorOccurrence& occurrence() const noexcept { return occurrence_; }
    const ConflictSet& conflicts() const noexcept { return conflicts_; }
    std::size_t conflict_count() const noexcept { return conflicts_.conflict_edge_count(); }
    const ColorBuckets& buckets() const noexcept { return buckets_; }
    Color max_color() const noexcept { return occurrence_.max_color(); }
    std::uint64_t iteration() const noexcept { return iteration_; }
    Rng& rng() noexcept { return rng_; }

    // Store interface used by the traversal code.
    Color color(Vertex v) const { return colors_[v]; }
    void recolor(Vertex v, Color c);
    WorkCounters& work() noexcept { return work_; }
    const WorkCounters& work() const noexcept { return work_; }

    /// Grundy local search over every vertex. Returns the recoloring count.
    std::size_t local_search_all(QueuePolicy policy = {});

    /// Starts a logged step against the current (parent) coloring.
    void begin_step();
    std::span<const Vertex> mutate_kempe(Vertex v, Color j);
    std::span<const Vertex> mutate_elimination(Vertex v, Color i, Color j);
    /// Grundy local search seeded with the vertices changed so far in this
    /// step and their neighbors.
    std::size_t local_search_changed(QueuePolicy policy = {});
    /// Offspring vs. parent under the conflict/occurrence order.
    Preference offspring_preference() const;
    /// Keeps or undoes the step. Returns true if the offspring was kept.
    bool select(Selection rule = Selection::standard);
    void finish_iteration() noexcept { ++iteration_; }

    /// (vertex, color before the step) for every recoloring of this step.
    std::span<const std::pair<Vertex, Color>> step_log() const noexcept { return log_; }

private:
    Graph graph_;
    std::vector<Color> colors_;
    ColorOccurrence occurrence_;
    ConflictSet conflicts_;
    ColorBuckets buckets_;
    Rng rng_;
    std::uint64_t iteration_ = 0;
    WorkCounters work_;

    bool logging_ = false;
    std::vector<std::pair<Vertex, Color>> log_;
    OccurrenceDelta delta_;
    std::size_t parent_conflicts_ = 0;
    std::vector<Vertex> seeds_;
    ops::Scratch scratch_;
};

struct IlsOptions {
    Selection selection = Selection::standard;
    QueuePolicy queue;
};

/// One ILS iteration with a uniformly chosen vertex. Precondition: the
/// current coloring is Grundy. Returns true if the offspring was kept.
bool ils_step(UnboundedRunState& s, Mutation op, const IlsOptions& options = {});

/// One ILS iteration focused on a uniform vertex of the largest color.
/// Throws Error{no_max_color_vertex} when the largest color is at most 2 and
/// the coloring is proper.
bool tailored_ils_step(UnboundedRunState& s, Mutation op, const IlsOptions& options = {});

bool unbounded_step(UnboundedAlgorithm a, UnboundedRunState& s, const IlsOptions& options = {});

using UnboundedObserver = std::function<void(const UnboundedRunState&)>;

/// Mandatory Grundy local search, then ILS iterations until the coloring is
/// proper with largest color <= target_max_color, or the budget runs out.
RunOutcome run_unbounded(UnboundedAlgorithm a, const Graph& g, const Coloring& initial, Color target_max_color,
                         const StopRule& stop, Rng rng, const IlsOptions& options = {},
                         const UnboundedObserver& observer = {});

} // namespace dyncolor
