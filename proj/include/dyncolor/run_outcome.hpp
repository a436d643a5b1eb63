#pragma once

#include "dyncolor/coloring.hpp"
#include "dyncolor/types.hpp"

#include <cstddef>
#include <cstdint>

namespace dyncolor {

/// Stop condition shared by every run loop; budget exhaustion is a regular
/// outcome, not an error.
struct StopRule {
    std::size_t target_conflicts = 0;
    std::uint64_t max_iterations = 100'000'000;
};

struct RunOutcome {
    std::uint64_t iterations = 0;
    bool success = false;
    std::size_t final_conflicts = 0;
    Color final_max_color = 0;
    WorkCounters work;
    /// Largest work spent in a single iteration.
    std::uint64_t max_iteration_work = 0;
    Coloring final_coloring;
};

} // namespace dyncolor
