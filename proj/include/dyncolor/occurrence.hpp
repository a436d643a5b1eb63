#pragma once

#include "dyncolor/types.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace dyncolor {

/// n_i(x): number of vertices holding color i, with the largest used color.
class ColorOccurrence {
public:
    ColorOccurrence() = default;

    static ColorOccurrence from_colors(std::span<const Color> colors);
    /// Pairs (color, count); colors not listed count as zero.
    static ColorOccurrence from_counts(std::initializer_list<std::pair<Color, std::size_t>> counts);

    std::size_t count(Color c) const noexcept { return c < counts_.size() ? counts_[c] : 0; }
    Color max_color() const noexcept { return max_color_; }
    std::size_t total() const noexcept { return total_; }

    void on_recolor(Color old_color, Color new_color);

    friend bool operator==(const ColorOccurrence& a, const ColorOccurrence& b);

private:
    void add(Color c, std::size_t k);

    std::vector<std::size_t> counts_;
    Color max_color_ = 0;
    std::size_t total_ = 0;
};

/// Fitness used by selection: conflicts first, then the occurrence vector
/// compared from the largest color downwards.
struct Evaluation {
    std::size_t conflicts = 0;
    ColorOccurrence occurrence;
};

enum class Preference { first_better, second_better, equivalent };

Preference compare(const Evaluation& x, const Evaluation& y);

/// Net per-color change between two colorings, accumulated from recolor
/// events. Lets selection compare parent and offspring without copying the
/// full occurrence vector.
class OccurrenceDelta {
public:
    void record(Color old_color, Color new_color);
    void clear() { net_.clear(); }

    /// Net change of n_i at the largest color with a nonzero net change; 0 if
    /// the two vectors are identical.
    std::int64_t leading_change() const;

private:
    std::vector<std::pair<Color, std::int64_t>> net_;
};

/// Same ordering as compare(), for an offspring described by its conflict
/// count and its occurrence delta relative to the parent.
Preference compare_offspring(std::size_t offspring_conflicts, std::size_t parent_conflicts,
                             const OccurrenceDelta& delta);

} // namespace dyncolor
