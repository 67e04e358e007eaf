#pragma once

// <e>-homomorphisms by backtracking, Gamma-homomorphisms through the
// reduction G ->_Gamma H  iff  G ->_<e> rho_Gamma(H), Gamma-isomorphisms and
// Gamma-cores.

#include <optional>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "search.hpp"
#include "switching.hpp"
#include "typeset.hpp"

namespace switchhom {

// Switching the source by `assignment` turns `vertex_map` into a plain
// type-preserving homomorphism.
struct hom_witness {
    std::vector<std::size_t> vertex_map;
    switch_assignment assignment;

    bool operator==(const hom_witness &) const = default;
};

// Bijective vertex_map that is an exact isomorphism after switching the
// source by `assignment`.
struct iso_witness {
    std::vector<std::size_t> vertex_map;
    switch_assignment assignment;

    bool operator==(const iso_witness &) const = default;
};

inline void require_same_alphabet(const nm_graph &g, const nm_graph &h, const char *what)
{
    if (!(g.types() == h.types()))
        throw domain_error(std::string(what) + ": alphabet mismatch");
}

inline bool is_plain_hom(const nm_graph &g, const nm_graph &h, const std::vector<std::size_t> &f)
{
    if (f.size() != g.order())
        return false;
    for (auto x : f)
        if (x >= h.order())
            return false;
    for (std::size_t u = 0; u < g.order(); ++u)
        for (std::size_t v = u + 1; v < g.order(); ++v)
            if (int t = g.adjacency(u, v); t && h.adjacency(f[u], f[v]) != t)
                return false;
    return true;
}

inline bool is_plain_iso(const nm_graph &g, const nm_graph &h, const std::vector<std::size_t> &f)
{
    if (g.order() != h.order() || f.size() != g.order())
        return false;
    std::vector<char> hit(h.order(), 0);
    for (auto x : f) {
        if (x >= h.order() || hit[x])
            return false;
        hit[x] = 1;
    }
    for (std::size_t u = 0; u < g.order(); ++u)
        for (std::size_t v = u + 1; v < g.order(); ++v)
            if (h.adjacency(f[u], f[v]) != g.adjacency(u, v))
                return false;
    return true;
}

inline bool verify_hom(const nm_graph &g, const nm_graph &h, const switch_group &group, const hom_witness &w)
{
    if (w.assignment.size() != g.order())
        return false;
    return is_plain_hom(apply_assignment(g, w.assignment, group), h, w.vertex_map);
}

inline bool verify_iso(const nm_graph &g, const nm_graph &h, const switch_group &group, const iso_witness &w)
{
    if (w.assignment.size() != g.order())
        return false;
    return is_plain_iso(apply_assignment(g, w.assignment, group), h, w.vertex_map);
}

// The inverse of an iso witness G -> H as a witness H -> G.
inline iso_witness invert(const switch_group &group, const iso_witness &w)
{
    iso_witness r;
    r.vertex_map.resize(w.vertex_map.size());
    r.assignment.element.resize(w.vertex_map.size());
    for (std::size_t x = 0; x < w.vertex_map.size(); ++x) {
        r.vertex_map[w.vertex_map[x]] = x;
        r.assignment.element[w.vertex_map[x]] = group.inverse(w.assignment[x]);
    }
    return r;
}

// Witness of g -> k from witnesses of g -> h (first) and h -> k (second).
inline hom_witness compose(const switch_group &group, const hom_witness &first, const hom_witness &second)
{
    hom_witness r;
    r.vertex_map.resize(first.vertex_map.size());
    r.assignment.element.resize(first.vertex_map.size());
    for (std::size_t x = 0; x < first.vertex_map.size(); ++x) {
        auto y = first.vertex_map[x];
        r.vertex_map[x] = second.vertex_map[y];
        r.assignment.element[x] = group.multiply(second.assignment[y], first.assignment[x]);
    }
    return r;
}

inline std::optional<hom_witness> plain_hom(const nm_graph &g, const nm_graph &h, const search_options &opts = {})
{
    require_same_alphabet(g, h, "plain_hom");
    map_problem p;
    p.pattern = &g;
    p.target = &h;
    auto f = find_map(p, opts);
    if (!f)
        return std::nullopt;
    return hom_witness{std::move(*f), switch_assignment::identity(g.order())};
}

namespace detail {

inline std::vector<std::vector<char>> color_domains(
    const std::vector<std::size_t> &gc, const std::vector<std::size_t> &hc, std::size_t copies)
{
    std::vector<std::vector<char>> allowed(gc.size(), std::vector<char>(hc.size() * copies, 0));
    for (std::size_t x = 0; x < gc.size(); ++x)
        for (std::size_t b = 0; b < hc.size() * copies; ++b)
            allowed[x][b] = gc[x] == hc[b / copies];
    return allowed;
}

inline bool same_color_histogram(std::vector<std::size_t> a, std::vector<std::size_t> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

}

inline std::optional<std::vector<std::size_t>> plain_iso(const nm_graph &g, const nm_graph &h, const search_options &opts = {})
{
    require_same_alphabet(g, h, "plain_iso");
    if (g.order() != h.order() || g.adjacency_count() != h.adjacency_count())
        return std::nullopt;
    auto colors = refine_colors({&g, &h}, true);
    if (!detail::same_color_histogram(colors[0], colors[1]))
        return std::nullopt;
    map_problem p;
    p.pattern = &g;
    p.target = &h;
    p.exact = true;
    p.target_class.resize(h.order());
    for (std::size_t i = 0; i < h.order(); ++i)
        p.target_class[i] = i;
    p.allowed = detail::color_domains(colors[0], colors[1], 1);
    return find_map(p, opts);
}

// G ->_Gamma H via a plain homomorphism G -> rho_Gamma(H). A map x -> (v, s)
// yields vertex_map x -> v and switch s^-1 at x.
inline std::optional<hom_witness> gamma_hom(
    const nm_graph &g, const nm_graph &h, const switch_group &group, const search_options &opts = {})
{
    require_switch_commutative(group, "gamma_hom");
    require_same_alphabet(g, h, "gamma_hom");
    auto r = rho(h, group);
    map_problem p;
    p.pattern = &g;
    p.target = &r.graph;
    auto f = find_map(p, opts);
    if (!f)
        return std::nullopt;
    hom_witness w;
    w.vertex_map.resize(g.order());
    w.assignment.element.resize(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) {
        w.vertex_map[x] = r.base_vertex((*f)[x]);
        w.assignment.element[x] = group.inverse(r.element((*f)[x]));
    }
    if (!verify_hom(g, h, group, w))
        throw contract_error("gamma_hom: produced witness failed verification");
    return w;
}

// Joint search over (vertex, switch) pairs: x -> (v, s) in rho(H), exact on
// adjacency and non-adjacency, injective on base vertices.
inline std::optional<iso_witness> gamma_iso(
    const nm_graph &g, const nm_graph &h, const switch_group &group, const search_options &opts = {})
{
    require_switch_commutative(group, "gamma_iso");
    require_same_alphabet(g, h, "gamma_iso");
    if (g.order() != h.order() || g.adjacency_count() != h.adjacency_count())
        return std::nullopt;
    // Switching never changes the underlying graph, so its colour classes must agree.
    auto colors = refine_colors({&g, &h}, false);
    if (!detail::same_color_histogram(colors[0], colors[1]))
        return std::nullopt;

    auto r = rho(h, group);
    map_problem p;
    p.pattern = &g;
    p.target = &r.graph;
    p.exact = true;
    p.target_class.resize(r.graph.order());
    for (std::size_t b = 0; b < r.graph.order(); ++b)
        p.target_class[b] = r.base_vertex(b);
    p.allowed = detail::color_domains(colors[0], colors[1], group.order());
    auto f = find_map(p, opts);
    if (!f)
        return std::nullopt;
    iso_witness w;
    w.vertex_map.resize(g.order());
    w.assignment.element.resize(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) {
        w.vertex_map[x] = r.base_vertex((*f)[x]);
        w.assignment.element[x] = group.inverse(r.element((*f)[x]));
    }
    if (!verify_iso(g, h, group, w) || !verify_iso(h, g, group, invert(group, w)))
        throw contract_error("gamma_iso: produced witness failed verification");
    return w;
}

// Cross-check route: G and H are Gamma-isomorphic iff rho(G) and rho(H) are
// <e>-isomorphic.
inline bool gamma_iso_via_rho(const nm_graph &g, const nm_graph &h, const switch_group &group, const search_options &opts = {})
{
    require_switch_commutative(group, "gamma_iso_via_rho");
    require_same_alphabet(g, h, "gamma_iso_via_rho");
    if (g.order() != h.order())
        return false;
    return plain_iso(rho(g, group).graph, rho(h, group).graph, opts).has_value();
}

struct core_result {
    nm_graph core;
    // Indices into the input graph of the surviving vertices, ascending.
    std::vector<std::size_t> kept;
    // Gamma-homomorphism of the input onto the core.
    hom_witness retraction;
};

// Greedy vertex deletion: repeatedly drop the first vertex v (in
// `deletion_order`) with current ->_Gamma current - v, until no vertex can go.
inline core_result gamma_core(const nm_graph &g, const switch_group &group,
    std::vector<std::size_t> deletion_order = {}, const search_options &opts = {})
{
    require_switch_commutative(group, "gamma_core");
    if (deletion_order.empty())
        for (std::size_t v = 0; v < g.order(); ++v)
            deletion_order.push_back(v);
    if (deletion_order.size() != g.order())
        throw domain_error("gamma_core: deletion order must list every vertex once");
    {
        auto sorted = deletion_order;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != i)
                throw domain_error("gamma_core: deletion order must list every vertex once");
    }

    std::vector<char> alive(g.order(), 1);
    auto current_vertices = [&]() {
        std::vector<std::size_t> keep;
        for (std::size_t v = 0; v < g.order(); ++v)
            if (alive[v])
                keep.push_back(v);
        return keep;
    };

    bool progress = true;
    while (progress) {
        progress = false;
        auto current = induced_subgraph(g, current_vertices());
        for (auto v : deletion_order) {
            if (!alive[v] || current.order() <= 1)
                continue;
            alive[v] = 0;
            auto smaller = induced_subgraph(g, current_vertices());
            if (gamma_hom(current, smaller, group, opts)) {
                progress = true;
                break;
            }
            alive[v] = 1;
        }
    }

    auto kept = current_vertices();
    auto core = induced_subgraph(g, kept);
    auto retraction = gamma_hom(g, core, group, opts);
    if (!retraction)
        throw contract_error("gamma_core: input does not map onto its computed core");
    return core_result{std::move(core), std::move(kept), std::move(*retraction)};
}

// Checks rho_{Gamma1}(G) against rho_L(rho_{Gamma2}(G)) for a complement L of
// Gamma2 in Gamma1.
inline bool rho_factorization_check(const nm_graph &g, const switch_group &g1, std::span<const type_perm> g2_elements,
    const search_options &opts = {})
{
    require_switch_commutative(g1, "rho_factorization_check");
    auto split = subgroup_and_complement(g1, g2_elements);
    if (!split.complement)
        throw contract_error("rho_factorization_check: subgroup has no complement in the group");
    auto direct = rho(g, g1).graph;
    auto nested = rho(rho(g, split.subgroup).graph, *split.complement).graph;
    return plain_iso(direct, nested, opts).has_value();
}

}
