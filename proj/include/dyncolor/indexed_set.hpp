#pragma once

#include "dyncolor/rng.hpp"
#include "dyncolor/types.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace dyncolor {

/// Subset of 0..n-1 with O(1) insert, erase, membership and uniform sampling.
/// Members live compactly in members()[0..size()); erase swaps the last member
/// into the vacated slot.
class IndexedSet {
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    IndexedSet() = default;
    explicit IndexedSet(std::size_t universe) : position_(universe, npos) { members_.reserve(universe); }

    std::size_t universe() const noexcept { return position_.size(); }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(Vertex v) const { return position_[v] != npos; }
    std::size_t position(Vertex v) const { return position_[v]; }
    Vertex at(std::size_t i) const { return members_[i]; }
    std::span<const Vertex> members() const noexcept { return members_; }

    void grow(std::size_t universe)
    {
        if (universe > position_.size())
            position_.resize(universe, npos);
    }

    bool insert(Vertex v)
    {
        if (position_[v] != npos)
            return false;
        position_[v] = members_.size();
        members_.push_back(v);
        return true;
    }

    bool erase(Vertex v)
    {
        const std::size_t i = position_[v];
        if (i == npos)
            return false;
        const Vertex last = members_.back();
        members_[i] = last;
        position_[last] = i;
        members_.pop_back();
        position_[v] = npos;
        return true;
    }

    void clear()
    {
        for (Vertex v : members_)
            position_[v] = npos;
        members_.clear();
    }

    /// Precondition: !empty().
    Vertex sample(Rng& rng) const { return members_[rng.below(members_.size())]; }

private:
    std::vector<Vertex> members_;
    std::vector<std::size_t> position_;
};

} // namespace dyncolor
