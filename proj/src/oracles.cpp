#include "dyncolor/oracles.hpp"

#include "dyncolor/error.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <deque>
#include <optional>

namespace dyncolor {

BipartiteCheck is_bipartite(const Graph& g)
{
    const std::size_t n = g.vertex_count();
    BipartiteCheck out;
    std::vector<int> side(n, -1);
    std::vector<std::size_t> depth(n, 0);
    std::vector<Vertex> parent(n, 0);
    std::deque<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        if (side[s] >= 0)
            continue;
        side[s] = 0;
        parent[s] = s;
        queue.push_back(s);
        while (!queue.empty()) {
            const Vertex x = queue.front();
            queue.pop_front();
            for (Vertex y : g.neighbors(x)) {
                if (side[y] < 0) {
                    side[y] = 1 - side[x];
                    depth[y] = depth[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if (side[y] == side[x]) {
                    // Same BFS depth parity: both tree paths meet at a common
                    // ancestor and close an odd cycle with edge {x, y}.
                    std::vector<Vertex> left{x}, right{y};
                    Vertex a = x, b = y;
                    while (depth[a] > depth[b]) {
                        a = parent[a];
                        left.push_back(a);
                    }
                    while (depth[b] > depth[a]) {
                        b = parent[b];
                        right.push_back(b);
                    }
                    while (a != b) {
                        a = parent[a];
                        b = parent[b];
                        left.push_back(a);
                        right.push_back(b);
                    }
                    right.pop_back();
                    out.odd_cycle = left;
                    out.odd_cycle.insert(out.odd_cycle.end(), right.rbegin(), right.rend());
                    return out;
                }
            }
        }
    }
    out.bipartite = true;
    out.two_coloring.resize(n);
    for (Vertex v = 0; v < n; ++v)
        out.two_coloring[v] = static_cast<Color>(side[v] + 1);
    return out;
}

Color grundy_number_bruteforce(const Graph& g)
{
    const std::size_t n = g.vertex_count();
    if (n > grundy_bruteforce_limit)
        throw Error(Errc::too_large, "grundy brute force is limited to " +
                                         std::to_string(grundy_bruteforce_limit) + " vertices");
    const std::uint32_t full = (1u << n) - 1;
    std::vector<std::uint32_t> nbr(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex u : g.neighbors(v))
            nbr[v] |= 1u << u;

    auto independent = [&](std::uint32_t set) {
        for (std::uint32_t rest = set; rest; rest &= rest - 1) {
            const int v = __builtin_ctz(rest);
            if (nbr[v] & set)
                return false;
        }
        return true;
    };
    // Maximal within `within`: every other vertex of `within` has a neighbor in it.
    auto maximal = [&](std::uint32_t set, std::uint32_t within) {
        for (std::uint32_t rest = within & ~set; rest; rest &= rest - 1) {
            const int v = __builtin_ctz(rest);
            if (!(nbr[v] & set))
                return false;
        }
        return true;
    };

    std::vector<std::int16_t> memo(std::size_t{1} << n, -1);
    memo[0] = 0;
    // Subsets in increasing numeric order guarantee that proper subsets are done.
    for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
        std::int16_t best = 0;
        for (std::uint32_t i = s; i; i = (i - 1) & s)
            if (independent(i) && maximal(i, s))
                best = std::max<std::int16_t>(best, static_cast<std::int16_t>(1 + memo[s & ~i]));
        memo[s] = best;
        if (s == full)
            break;
    }
    return static_cast<Color>(memo[full]);
}

TreeClass classify_tree_conflict(const Graph& g, const Coloring& c)
{
    const std::size_t n = g.vertex_count();
    std::size_t h = 0;
    while ((std::size_t{1} << h) - 1 < n)
        ++h;
    if (n < 3 || (std::size_t{1} << h) - 1 != n || g.edge_count() != n - 1 || c.size() != n)
        throw Error(Errc::not_tree_instance, "not a complete binary tree");

    std::optional<Vertex> root;
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) == 2) {
            if (root)
                throw Error(Errc::not_tree_instance, "several candidate roots");
            root = v;
        }
    if (!root)
        throw Error(Errc::not_tree_instance, "no vertex of degree 2");

    const std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> depth(n, unset);
    std::deque<Vertex> queue{*root};
    depth[*root] = 0;
    std::size_t seen = 1;
    while (!queue.empty()) {
        const Vertex x = queue.front();
        queue.pop_front();
        std::size_t children = 0;
        for (Vertex y : g.neighbors(x)) {
            if (depth[y] == unset) {
                depth[y] = depth[x] + 1;
                queue.push_back(y);
                ++children;
                ++seen;
            } else if (depth[y] + 1 != depth[x]) {
                throw Error(Errc::not_tree_instance, "edge between non-adjacent levels");
            }
        }
        const bool leaf_level = depth[x] + 1 == h;
        if (children != (leaf_level ? 0u : 2u))
            throw Error(Errc::not_tree_instance, "vertex without exactly two children");
    }
    if (seen != n)
        throw Error(Errc::not_tree_instance, "disconnected");

    std::size_t conflicts = 0;
    std::size_t parent_depth = 0;
    for (const Edge& e : g.edges())
        if (c[e.u] == c[e.v]) {
            ++conflicts;
            parent_depth = std::min(depth[e.u], depth[e.v]);
        }
    if (conflicts == 0)
        return {TreeClassKind::opt, 0};
    if (conflicts == 1)
        return {TreeClassKind::a_i, parent_depth};
    return {TreeClassKind::other, 0};
}

namespace {

using Rational = boost::multiprecision::cpp_rational;
using Quad = boost::multiprecision::cpp_bin_float_quad;

/// Solves A x = b in place by Gaussian elimination; returns false if singular.
template <class T>
bool solve_dense(std::vector<std::vector<T>>& a, std::vector<T>& b)
{
    const std::size_t m = b.size();
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col; r < m; ++r) {
            if constexpr (std::is_same_v<T, Rational>) {
                if (a[r][col] != 0) {
                    pivot = r;
                    break;
                }
            } else if (abs(a[r][col]) > abs(a[pivot][col])) {
                pivot = r;
            }
        }
        if (a[pivot][col] == 0)
            return false;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col || a[r][col] == 0)
                continue;
            const T f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < m; ++k)
                a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t r = 0; r < m; ++r)
        b[r] /= a[r][r];
    return true;
}

template <class T>
T solve_passage(std::size_t N, std::size_t start, const std::vector<bool>& target, const std::vector<bool>& forbidden)
{
    const std::size_t states = N + 1;
    auto prob = [&](std::size_t s, std::size_t t) -> T {
        if (t == s + 1)
            return T(N - s) / T(N);
        if (s > 0 && t == s - 1)
            return T(s) / T(N);
        return T(0);
    };
    std::vector<std::size_t> free_states, index(states, states);
    for (std::size_t s = 0; s < states; ++s)
        if (!target[s] && !forbidden[s]) {
            index[s] = free_states.size();
            free_states.push_back(s);
        }
    const std::size_t m = free_states.size();
    auto singular = [] { return Error(Errc::singular_system, "targets are unreachable"); };

    // q(s): probability of entering the targets before the forbidden states.
    std::vector<T> q(states, T(0));
    for (std::size_t s = 0; s < states; ++s)
        if (target[s])
            q[s] = 1;
    if (m > 0) {
        std::vector<std::vector<T>> a(m, std::vector<T>(m, T(0)));
        std::vector<T> b(m, T(0));
        for (std::size_t r = 0; r < m; ++r) {
            const std::size_t s = free_states[r];
            a[r][r] = 1;
            for (std::size_t t : {s + 1, s - 1}) {
                if (t >= states || (s == 0 && t == s - 1))
                    continue;
                if (target[t])
                    b[r] += prob(s, t);
                else if (index[t] < states)
                    a[r][index[t]] -= prob(s, t);
            }
        }
        if (!solve_dense(a, b))
            throw singular();
        for (std::size_t r = 0; r < m; ++r)
            q[free_states[r]] = b[r];
    }

    // g(s) = q(s) h(s), where h is the conditioned expected hitting time:
    // g = q + P g over the free states.
    std::vector<T> g(states, T(0));
    if (m > 0) {
        std::vector<std::vector<T>> a(m, std::vector<T>(m, T(0)));
        std::vector<T> b(m, T(0));
        for (std::size_t r = 0; r < m; ++r) {
            const std::size_t s = free_states[r];
            a[r][r] = 1;
            b[r] = q[s];
            for (std::size_t t : {s + 1, s - 1}) {
                if (t >= states || (s == 0 && t == s - 1))
                    continue;
                if (index[t] < states)
                    a[r][index[t]] -= prob(s, t);
            }
        }
        if (!solve_dense(a, b))
            throw singular();
        for (std::size_t r = 0; r < m; ++r)
            g[free_states[r]] = b[r];
    }

    // The first step is taken unconditionally from `start`.
    T reach(0), weighted(0);
    for (std::size_t t : {start + 1, start - 1}) {
        if (t >= states || (start == 0 && t == start - 1))
            continue;
        reach += prob(start, t) * q[t];
        weighted += prob(start, t) * g[t];
    }
    if (reach == 0)
        throw singular();
    return T(1) + weighted / reach;
}

} // namespace

PassageTime ehrenfest_first_passage(std::size_t N, std::size_t start, const std::vector<std::size_t>& targets,
                                    const std::vector<std::size_t>& forbidden)
{
    if (N < 2 || N % 2 != 0)
        throw Error(Errc::precondition_violated, "ball count must be even and at least 2");
    std::vector<bool> is_target(N + 1, false), is_forbidden(N + 1, false);
    auto check = [&](std::size_t s) {
        if (s > N)
            throw Error(Errc::precondition_violated, "state outside 0..N");
    };
    check(start);
    for (std::size_t s : targets) {
        check(s);
        is_target[s] = true;
    }
    for (std::size_t s : forbidden) {
        check(s);
        if (!is_target[s])
            is_forbidden[s] = true;
    }
    if (targets.empty())
        throw Error(Errc::singular_system, "no target states");

    PassageTime out;
    if (N <= ehrenfest_exact_limit) {
        const Rational r = solve_passage<Rational>(N, start, is_target, is_forbidden);
        out.exact_arithmetic = true;
        out.exact = numerator(r).str() + "/" + denominator(r).str();
        out.value = r.convert_to<double>();
    } else {
        out.value = solve_passage<Quad>(N, start, is_target, is_forbidden).convert_to<double>();
    }
    return out;
}

Recount recount_all(const Graph& g, const Coloring& c)
{
    Recount r;
    r.conflicts = count_conflicts(g, c);
    r.occurrence = ColorOccurrence::from_colors(c.values());
    r.grundy = is_grundy_coloring(g, c);
    return r;
}

} // namespace dyncolor
