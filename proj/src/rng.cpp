#include "dyncolor/rng.hpp"

#include <cmath>

namespace dyncolor {

std::uint64_t Rng::below(std::uint64_t bound)
{
    // Lemire's multiply-shift with rejection of the biased low region.
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(engine_()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t Rng::binomial(std::uint64_t trials, double p)
{
    if (trials == 0 || p <= 0.0)
        return 0;
    if (p >= 1.0)
        return trials;
    const double q = 1.0 - p;
    const double ratio = p / q;
    double pk = std::pow(q, static_cast<double>(trials));
    double u = unit();
    std::uint64_t k = 0;
    // Underflow of pk only happens for trials * p far beyond the regimes used
    // here; the cap keeps the loop finite regardless.
    while (u >= pk && k < trials) {
        u -= pk;
        pk *= ratio * static_cast<double>(trials - k) / static_cast<double>(k + 1);
        ++k;
        if (pk <= 0.0)
            break;
    }
    return k;
}

} // namespace dyncolor
