#pragma once

#include "dyncolor/indexed_set.hpp"
#include "dyncolor/rng.hpp"
#include "dyncolor/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace dyncolor {

/// One compact vertex array per color value. Every vertex lives in exactly
/// one bucket, so a single position array serves all of them.
class ColorBuckets {
public:
    ColorBuckets() = default;

    static ColorBuckets build(std::span<const Color> colors)
    {
        ColorBuckets b;
        b.position_.assign(colors.size(), IndexedSet::npos);
        for (Vertex v = 0; v < colors.size(); ++v)
            b.insert(v, colors[v]);
        return b;
    }

    std::size_t size(Color c) const noexcept { return c < buckets_.size() ? buckets_[c].size() : 0; }
    std::span<const Vertex> members(Color c) const noexcept
    {
        if (c >= buckets_.size())
            return {};
        return buckets_[c];
    }
    std::size_t position(Vertex v) const { return position_[v]; }

    /// Precondition: size(c) > 0.
    Vertex sample(Color c, Rng& rng) const { return buckets_[c][rng.below(buckets_[c].size())]; }

    void move(Vertex v, Color from, Color to)
    {
        erase(v, from);
        insert(v, to);
    }

private:
    void insert(Vertex v, Color c)
    {
        if (c >= buckets_.size())
            buckets_.resize(c + 1);
        position_[v] = buckets_[c].size();
        buckets_[c].push_back(v);
    }

    void erase(Vertex v, Color c)
    {
        auto& bucket = buckets_[c];
        const std::size_t i = position_[v];
        const Vertex last = bucket.back();
        bucket[i] = last;
        position_[last] = i;
        bucket.pop_back();
        position_[v] = IndexedSet::npos;
    }

    std::vector<std::vector<Vertex>> buckets_;
    std::vector<std::size_t> position_;
};

} // namespace dyncolor
