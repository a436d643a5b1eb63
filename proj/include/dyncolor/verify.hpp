#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dyncolor {

/// Deliberate defects used to check that a suite can fail at all.
enum class Fault {
    none,
    /// ILS keeps every offspring, including worse ones.
    accept_all,
    /// ILS keeps exactly the offspring the correct rule would reject.
    inverted,
    /// ILS keeps the raw mutant without its Grundy local search.
    keep_unsearched,
    /// Repair recolors every conflicting vertex at once before the search.
    eager_repair,
};

std::string_view to_string(Fault f) noexcept;
std::optional<Fault> parse_fault(std::string_view name) noexcept;

struct InvariantResult {
    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
    /// Serialized state of the first violation; empty when there is none.
    std::string counterexample;
    /// Non-gating invariants are reported but do not decide pass/fail.
    bool gating = true;
};

struct SuiteReport {
    std::string suite;
    Fault fault = Fault::none;
    std::uint64_t cases = 0;
    std::vector<InvariantResult> invariants;

    bool vacuous() const noexcept { return cases == 0; }
    bool passed() const noexcept;
};

/// Registered suites:
///   delta_increase   - a single Kempe or elimination move on a Grundy
///                      coloring adds at most one vertex of color Delta;
///   delta_monotone   - one ILS iteration never increases the number of
///                      vertices colored Delta or Delta+1;
///   insertion_repair - after inserting T edges into a Grundy coloring, the
///                      local search raises the color of at most T vertices.
/// A case is one ILS iteration, or one inserted batch for insertion_repair.
/// Instances rotate over random bipartite graphs, complete binary trees and
/// planar grids. Throws Error{unknown_suite}.
SuiteReport verify_invariant_suite(std::string_view suite, std::uint64_t budget, std::uint64_t seed = 1,
                                   Fault fault = Fault::none);

std::vector<std::string_view> suite_ids();

/// The fault each suite is expected to detect.
Fault sensitivity_fault(std::string_view suite);

std::string format_report(const SuiteReport& r);

} // namespace dyncolor
