#include "dyncolor/occurrence.hpp"

#include <algorithm>

namespace dyncolor {

ColorOccurrence ColorOccurrence::from_colors(std::span<const Color> colors)
{
    ColorOccurrence occ;
    for (Color c : colors)
        occ.add(c, 1);
    return occ;
}

ColorOccurrence ColorOccurrence::from_counts(
    std::initializer_list<std::pair<Color, std::size_t>> counts)
{
    ColorOccurrence occ;
    for (const auto& [c, k] : counts)
        occ.add(c, k);
    return occ;
}

void ColorOccurrence::add(Color c, std::size_t k)
{
    if (k == 0)
        return;
    if (c >= counts_.size())
        counts_.resize(c + 1, 0);
    counts_[c] += k;
    total_ += k;
    max_color_ = std::max(max_color_, c);
}

void ColorOccurrence::on_recolor(Color old_color, Color new_color)
{
    if (old_color == new_color)
        return;
    --counts_[old_color];
    --total_;
    add(new_color, 1);
    while (max_color_ > 0 && counts_[max_color_] == 0)
        --max_color_;
}

bool operator==(const ColorOccurrence& a, const ColorOccurrence& b)
{
    if (a.max_color_ != b.max_color_)
        return false;
    for (Color c = 1; c <= a.max_color_; ++c)
        if (a.count(c) != b.count(c))
            return false;
    return true;
}

Preference compare(const Evaluation& x, const Evaluation& y)
{
    if (x.conflicts != y.conflicts)
        return x.conflicts < y.conflicts ? Preference::first_better : Preference::second_better;
    const Color top = std::max(x.occurrence.max_color(), y.occurrence.max_color());
    for (Color c = top; c >= 1; --c) {
        const std::size_t a = x.occurrence.count(c);
        const std::size_t b = y.occurrence.count(c);
        if (a != b)
            return a < b ? Preference::first_better : Preference::second_better;
    }
    return Preference::equivalent;
}

void OccurrenceDelta::record(Color old_color, Color new_color)
{
    if (old_color == new_color)
        return;
    auto bump = [this](Color c, std::int64_t by) {
        for (auto& [color, net] : net_)
            if (color == c) {
                net += by;
                return;
            }
        net_.emplace_back(c, by);
    };
    bump(old_color, -1);
    bump(new_color, +1);
}

std::int64_t OccurrenceDelta::leading_change() const
{
    Color best = 0;
    std::int64_t change = 0;
    for (const auto& [color, net] : net_)
        if (net != 0 && color > best) {
            best = color;
            change = net;
        }
    return change;
}

Preference compare_offspring(std::size_t offspring_conflicts, std::size_t parent_conflicts,
                             const OccurrenceDelta& delta)
{
    if (offspring_conflicts != parent_conflicts)
        return offspring_conflicts < parent_conflicts ? Preference::first_better
                                                      : Preference::second_better;
    const std::int64_t lead = delta.leading_change();
    if (lead == 0)
        return Preference::equivalent;
    return lead < 0 ? Preference::first_better : Preference::second_better;
}

} // namespace dyncolor
