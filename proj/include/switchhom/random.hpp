#pragma once

// Seeded generators for random (n,m)-graphs, forests and shuffled copies.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "graph.hpp"
#include "switching.hpp"
#include "typeset.hpp"

namespace switchhom {

using rng_type = std::mt19937_64;

inline std::size_t uniform_index(rng_type &rng, std::size_t bound)
{
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

inline int random_type(rng_type &rng, const alphabet &a)
{
    return static_cast<int>(uniform_index(rng, static_cast<std::size_t>(a.size()))) + 1;
}

// Each unordered pair is adjacent with probability `density`, with a uniform type.
inline nm_graph random_graph(const alphabet &a, std::size_t vertices, double density, rng_type &rng)
{
    auto g = nm_graph::edgeless(a, vertices);
    std::bernoulli_distribution coin(density);
    for (std::size_t u = 0; u < vertices; ++u)
        for (std::size_t v = u + 1; v < vertices; ++v)
            if (coin(rng))
                g.connect(u, v, random_type(rng, a));
    return g;
}

// Random recursive forest: vertex i > 0 attaches to a uniform earlier vertex
// with probability `attach`, otherwise starts a new tree.
inline nm_graph random_forest(const alphabet &a, std::size_t vertices, rng_type &rng, double attach = 0.85)
{
    auto g = nm_graph::edgeless(a, vertices);
    std::bernoulli_distribution coin(attach);
    for (std::size_t v = 1; v < vertices; ++v)
        if (coin(rng)) {
            auto p = uniform_index(rng, v);
            // Random orientation of the stored pair.
            if (coin(rng))
                g.connect(p, v, random_type(rng, a));
            else
                g.connect(v, p, random_type(rng, a));
        }
    return g;
}

inline switch_assignment random_assignment(std::size_t vertices, const switch_group &group, rng_type &rng)
{
    switch_assignment s;
    for (std::size_t v = 0; v < vertices; ++v)
        s.element.push_back(uniform_index(rng, group.order()));
    return s;
}

// Same graph with vertices permuted; returns perm with new index perm[v] for old v.
inline nm_graph shuffled(const nm_graph &g, rng_type &rng, std::vector<std::size_t> *perm_out = nullptr)
{
    std::vector<std::size_t> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> labels(g.order());
    for (std::size_t v = 0; v < g.order(); ++v)
        labels[perm[v]] = g.label(v);
    nm_graph h(g.types(), std::move(labels));
    for (std::size_t u = 0; u < g.order(); ++u)
        for (std::size_t v = u + 1; v < g.order(); ++v)
            if (int t = g.adjacency(u, v))
                h.connect(perm[u], perm[v], t);
    if (perm_out)
        *perm_out = perm;
    return h;
}

}
