#pragma once

// Exhaustive reference deciders. Nothing here goes through rho or the
// backtracking engine: switch assignments and vertex maps are enumerated
// directly and switched types are recomputed from raw permutation images.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "typeset.hpp"

namespace switchhom::oracle {

inline constexpr std::size_t default_cap = 50'000'000;

namespace detail {

inline int raw_bar(int arc_colors, int t) { return t > 2 * arc_colors ? t : (t % 2 ? t + 1 : t - 1); }

inline std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap, const char *what)
{
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base)
            throw resource_error(std::string(what) + ": enumeration exceeds cap");
        r *= base;
    }
    return r;
}

// Adjacency matrix of g after switching every vertex v by perms[a[v]].
inline std::vector<int> switched_matrix(
    const nm_graph &g, const std::vector<std::vector<int>> &perms, const std::vector<std::size_t> &a)
{
    const int n = g.types().arc_colors();
    const std::size_t p = g.order();
    std::vector<int> m(p * p, 0);
    for (std::size_t u = 0; u < p; ++u)
        for (std::size_t v = 0; v < p; ++v)
            if (int t = g.adjacency(u, v)) {
                // u's switch acts on u's view, v's switch on v's view.
                int after_u = perms[a[u]][t - 1];
                int seen_by_v = raw_bar(n, after_u);
                int after_v = perms[a[v]][seen_by_v - 1];
                m[u * p + v] = raw_bar(n, after_v);
            }
    return m;
}

inline std::vector<std::vector<int>> raw_perms(const switch_group &group)
{
    std::vector<std::vector<int>> out;
    for (const auto &e : group.elements())
        out.push_back(e.image());
    return out;
}

inline bool next_tuple(std::vector<std::size_t> &a, std::size_t base)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (++a[i] < base)
            return true;
        a[i] = 0;
    }
    return false;
}

inline bool maps_into(const std::vector<int> &gm, std::size_t p, const nm_graph &h, const std::vector<std::size_t> &f)
{
    for (std::size_t u = 0; u < p; ++u)
        for (std::size_t v = 0; v < p; ++v)
            if (int t = gm[u * p + v]; t && h.adjacency(f[u], f[v]) != t)
                return false;
    return true;
}

inline bool maps_onto_exactly(const std::vector<int> &gm, std::size_t p, const nm_graph &h, const std::vector<std::size_t> &f)
{
    for (std::size_t u = 0; u < p; ++u)
        for (std::size_t v = 0; v < p; ++v)
            if (u != v && h.adjacency(f[u], f[v]) != gm[u * p + v])
                return false;
    return true;
}

}

// Some assignment in Gamma^V(G) and some map V(G) -> V(H) give a plain homomorphism.
inline bool gamma_hom_exists(const nm_graph &g, const nm_graph &h, const switch_group &group, std::size_t cap = default_cap)
{
    const std::size_t p = g.order();
    const std::size_t work = detail::checked_power(group.order(), p, cap, "oracle")
        * std::max<std::size_t>(1, detail::checked_power(h.order(), p, cap, "oracle"));
    if (work > cap)
        throw resource_error("oracle: enumeration exceeds cap");
    if (p == 0)
        return true;
    if (h.order() == 0)
        return false;
    auto perms = detail::raw_perms(group);
    std::vector<std::size_t> a(p, 0);
    do {
        auto gm = detail::switched_matrix(g, perms, a);
        std::vector<std::size_t> f(p, 0);
        do {
            if (detail::maps_into(gm, p, h, f))
                return true;
        } while (detail::next_tuple(f, h.order()));
    } while (detail::next_tuple(a, group.order()));
    return false;
}

// Some assignment and some bijection give an exact isomorphism.
inline bool gamma_iso_exists(const nm_graph &g, const nm_graph &h, const switch_group &group, std::size_t cap = default_cap)
{
    const std::size_t p = g.order();
    if (p != h.order())
        return false;
    std::size_t fact = 1;
    for (std::size_t i = 2; i <= p; ++i)
        fact *= i;
    if (detail::checked_power(group.order(), p, cap, "oracle") > cap / std::max<std::size_t>(1, fact))
        throw resource_error("oracle: enumeration exceeds cap");
    if (p == 0)
        return true;
    auto perms = detail::raw_perms(group);
    std::vector<std::size_t> a(p, 0);
    do {
        auto gm = detail::switched_matrix(g, perms, a);
        std::vector<std::size_t> f(p);
        std::iota(f.begin(), f.end(), 0);
        do {
            if (detail::maps_onto_exactly(gm, p, h, f))
                return true;
        } while (std::next_permutation(f.begin(), f.end()));
    } while (detail::next_tuple(a, group.order()));
    return false;
}

}
