#pragma once

#include "dyncolor/bounded.hpp"
#include "dyncolor/dynamics.hpp"
#include "dyncolor/instances.hpp"
#include "dyncolor/types.hpp"
#include "dyncolor/unbounded.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dyncolor {

/// Either palette family's algorithm, addressed by its canonical name.
struct AlgorithmId {
    std::variant<BoundedAlgorithm, UnboundedAlgorithm> value;

    bool bounded() const noexcept { return std::holds_alternative<BoundedAlgorithm>(value); }
    std::string_view name() const noexcept;
};

std::optional<AlgorithmId> parse_algorithm(std::string_view name) noexcept;

struct RunRecord {
    std::string scenario;
    std::string algorithm;
    std::size_t n = 0;
    std::size_t T = 0;
    std::uint64_t seed = 0;
    /// Iterations to success, or the budget when censored.
    std::uint64_t iterations = 0;
    bool censored = false;
    std::uint64_t wall_ns = 0;
    std::size_t final_conflicts = 0;
    Color final_max_color = 0;
    WorkCounters work;
    std::uint64_t max_iteration_work = 0;
    std::size_t edges = 0;
    /// Edges actually inserted; can be below T when the class allows fewer.
    std::size_t inserted = 0;
};

struct ScenarioConfig {
    std::string id;
    Family family = Family::path;
    ColoringMode mode = ColoringMode::worst_case;
    Insertion insertion = Insertion::none;
    /// Vertex counts. When empty, n = size_per_T[0] * T + size_per_T[1].
    std::vector<std::size_t> sizes;
    std::optional<std::pair<std::size_t, std::size_t>> size_per_T;
    std::vector<std::size_t> Ts{1};
    std::vector<AlgorithmId> algorithms;
    std::size_t trials = 0;
    /// 0 selects the default budget.
    std::uint64_t budget = 0;
    InstanceParams params;
    bool independent_endpoints = false;
    std::vector<Edge> edges;
    /// Palette size of the bounded algorithms.
    Color palette = 2;
    /// Overrides the instance's target for unbounded algorithms.
    std::optional<Color> target_max_color;
};

struct ExperimentConfig {
    std::uint64_t seed = 1;
    std::vector<ScenarioConfig> scenarios;
};

/// Parses the YAML experiment description. Throws Error{config_invalid}.
ExperimentConfig parse_config(std::string_view text);
/// Throws Error{config_invalid} also when the file cannot be read.
ExperimentConfig load_config(const std::string& path);

inline constexpr std::uint64_t default_budget = 100'000'000;

/// Per-run seed: splitmix64 chain over master seed, FNV-1a of the scenario id,
/// n, T and the trial index. The algorithm is deliberately not mixed in, so
/// all algorithms of one trial face the same instance.
std::uint64_t run_seed(std::uint64_t master, std::string_view scenario, std::size_t n, std::size_t T,
                       std::size_t trial) noexcept;

struct RunOptions {
    /// Worker threads; 0 uses the hardware concurrency.
    std::size_t parallel = 1;
    /// Record wall-clock time; off by default so output is reproducible.
    bool wall_clock = false;
    /// Called in deterministic order as records become available.
    std::function<void(const RunRecord&)> on_record;
};

/// One run of `algorithm` on scenario `sc` with vertex count n and batch T.
/// A successful run is re-validated from scratch before it is returned.
RunRecord run_single(const ScenarioConfig& sc, const AlgorithmId& algorithm, std::size_t n, std::size_t T,
                     std::uint64_t seed, bool wall_clock = false);

/// Every (scenario, n, T, algorithm, trial) combination in this order.
/// Throws Error{config_invalid} or Error{scenario_generation_failed}.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

inline constexpr std::string_view csv_header =
    "scenario,algorithm,n,T,seed,iterations,censored,wall_ns,final_conflicts,final_max_color";

std::string csv_row(const RunRecord& r);
/// Throws Error{parse_error} on a header mismatch or malformed row.
std::vector<RunRecord> read_csv(std::string_view text);

} // namespace dyncolor
