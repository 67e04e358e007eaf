#pragma once

// Switching: sigma-switches at single vertices, per-vertex switch
// assignments, Gamma-equivalence classes and the switched graph rho.

#include <cstddef>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "typeset.hpp"

namespace switchhom {

// Per-vertex group element (by index into the group). A switch sequence on
// a switch-commutative group collapses to one of these.
struct switch_assignment {
    std::vector<std::size_t> element;

    static switch_assignment identity(std::size_t vertices) { return {std::vector<std::size_t>(vertices, 0)}; }

    std::size_t size() const { return element.size(); }
    std::size_t operator[](std::size_t v) const { return element[v]; }
    bool operator==(const switch_assignment &) const = default;
};

inline void require_switch_commutative(const switch_group &group, const char *what)
{
    if (!group.is_switch_commutative())
        throw contract_error(std::string(what) + ": group is not switch-commutative");
}

// Type of v as seen from u after switching u by su and v by sv, where v was
// a t-neighbour of u: bar(sv(bar(su(t)))).
inline int switched_type(const switch_group &group, std::size_t su, std::size_t sv, int t)
{
    const auto &a = group.types();
    return a.bar(group.apply(sv, a.bar(group.apply(su, t))));
}

inline nm_graph sigma_switch(const nm_graph &g, std::size_t v, const type_perm &sigma)
{
    if (v >= g.order())
        throw domain_error("sigma_switch: vertex index out of range");
    if (sigma.size() != g.types().size())
        throw domain_error("sigma_switch: permutation is on a different alphabet");
    nm_graph h = g;
    for (std::size_t u = 0; u < g.order(); ++u)
        if (int t = g.adjacency(v, u))
            h.retype(v, u, sigma(t));
    return h;
}

inline nm_graph sigma_switch(const nm_graph &g, const std::string &v, const type_perm &sigma)
{
    return sigma_switch(g, g.index_of(v), sigma);
}

inline nm_graph apply_assignment(const nm_graph &g, const switch_assignment &a, const switch_group &group)
{
    require_switch_commutative(group, "apply_assignment");
    if (!(g.types() == group.types()))
        throw domain_error("apply_assignment: alphabet mismatch");
    if (a.size() != g.order())
        throw domain_error("apply_assignment: assignment size does not match the graph");
    for (auto e : a.element)
        if (e >= group.order())
            throw domain_error("apply_assignment: element index out of range");
    nm_graph h = g;
    for (std::size_t u = 0; u < g.order(); ++u)
        for (std::size_t v = u + 1; v < g.order(); ++v)
            if (int t = g.adjacency(u, v))
                h.retype(u, v, switched_type(group, a[u], a[v], t));
    return h;
}

// Elementwise product: result[v] = outer[v] * inner[v].
inline switch_assignment compose(const switch_group &group, const switch_assignment &outer, const switch_assignment &inner)
{
    switch_assignment r;
    r.element.resize(inner.size());
    for (std::size_t v = 0; v < inner.size(); ++v)
        r.element[v] = group.multiply(outer[v], inner[v]);
    return r;
}

inline switch_assignment inverse(const switch_group &group, const switch_assignment &a)
{
    switch_assignment r = a;
    for (auto &e : r.element)
        e = group.inverse(e);
    return r;
}

inline constexpr std::size_t default_equivalence_cap = 10'000'000;

// Calls visit(graph, assignment) once per distinct Gamma-equivalent graph, in
// order of first appearance when assignments are enumerated lexicographically.
inline void for_each_equivalent(const nm_graph &g, const switch_group &group,
    const std::function<void(const nm_graph &, const switch_assignment &)> &visit,
    std::size_t cap = default_equivalence_cap)
{
    require_switch_commutative(group, "equivalence_class");
    const std::size_t q = group.order();
    std::size_t total = 1;
    for (std::size_t i = 0; i < g.order(); ++i) {
        if (total > cap / q)
            throw resource_error("equivalence_class: |Gamma|^|V| exceeds cap of " + std::to_string(cap));
        total *= q;
    }

    std::unordered_set<std::string> seen;
    auto a = switch_assignment::identity(g.order());
    while (true) {
        auto h = apply_assignment(g, a, group);
        if (seen.insert(h.adjacency_key()).second)
            visit(h, a);
        std::size_t i = 0;
        while (i < a.size() && ++a.element[i] == q)
            a.element[i++] = 0;
        if (i == a.size())
            break;
    }
}

inline std::vector<nm_graph> equivalence_class(const nm_graph &g, const switch_group &group,
    std::size_t cap = default_equivalence_cap)
{
    std::vector<nm_graph> out;
    for_each_equivalent(g, group, [&](const nm_graph &h, const switch_assignment &) { out.push_back(h); }, cap);
    return out;
}

// rho_Gamma(G): vertex (v, s) has index v * |Gamma| + s and label "v^s".
struct rho_graph {
    nm_graph graph;
    std::size_t base_order;
    std::size_t group_order;

    std::size_t index(std::size_t v, std::size_t s) const { return v * group_order + s; }
    std::size_t base_vertex(std::size_t x) const { return x / group_order; }
    std::size_t element(std::size_t x) const { return x % group_order; }
};

inline rho_graph rho(const nm_graph &g, const switch_group &group)
{
    require_switch_commutative(group, "rho");
    if (!(g.types() == group.types()))
        throw domain_error("rho: alphabet mismatch");
    const std::size_t q = group.order();
    std::vector<std::string> labels;
    labels.reserve(g.order() * q);
    for (std::size_t v = 0; v < g.order(); ++v)
        for (std::size_t s = 0; s < q; ++s)
            labels.push_back(g.label(v) + "^" + std::to_string(s));
    rho_graph r{nm_graph(g.types(), std::move(labels)), g.order(), q};
    for (std::size_t u = 0; u < g.order(); ++u)
        for (std::size_t v = u + 1; v < g.order(); ++v)
            if (int t = g.adjacency(u, v))
                for (std::size_t su = 0; su < q; ++su)
                    for (std::size_t sv = 0; sv < q; ++sv)
                        r.graph.connect(r.index(u, su), r.index(v, sv), switched_type(group, su, sv, t));
    return r;
}

}
