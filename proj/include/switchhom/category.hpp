#pragma once

// Categorical product and coproduct of (n,m)-graphs under Gamma-homomorphisms.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "hom.hpp"
#include "search.hpp"
#include "switching.hpp"
#include "typeset.hpp"

namespace switchhom {

// Tensor-style product: (u,v) is a t-neighbour of (u',v') iff u' is a
// t-neighbour of u and v' is a t-neighbour of v. Vertex (u,v) has index
// u * |H| + v and label "(u,v)".
inline nm_graph product_e(const nm_graph &g, const nm_graph &h)
{
    require_same_alphabet(g, h, "product_e");
    std::vector<std::string> labels;
    for (std::size_t u = 0; u < g.order(); ++u)
        for (std::size_t v = 0; v < h.order(); ++v)
            labels.push_back("(" + g.label(u) + "," + h.label(v) + ")");
    nm_graph p(g.types(), std::move(labels));
    const std::size_t q = h.order();
    for (std::size_t u = 0; u < g.order(); ++u)
        for (std::size_t u2 = 0; u2 < g.order(); ++u2) {
            int t = g.adjacency(u, u2);
            if (!t)
                continue;
            for (std::size_t v = 0; v < q; ++v)
                for (std::size_t v2 = 0; v2 < q; ++v2) {
                    std::size_t a = u * q + v, b = u2 * q + v2;
                    if (a < b && h.adjacency(v, v2) == t)
                        p.connect(a, b, t);
                }
        }
    return p;
}

struct product_graph {
    nm_graph graph;
    hom_witness to_g;
    hom_witness to_h;
    std::size_t g_order;
    std::size_t h_order;
    std::size_t group_order;

    // Vertex (u^k, v^k).
    std::size_t index(std::size_t u, std::size_t v, std::size_t k) const { return (u * h_order + v) * group_order + k; }
};

// Subgraph of rho(G) x_<e> rho(H) induced by the diagonal pairs (u^k, v^k),
// labelled "(u,v)^k". Projections send (u,v)^k to u (resp. v) after switching
// it by k^-1.
inline product_graph product_gamma(const nm_graph &g, const nm_graph &h, const switch_group &group)
{
    require_switch_commutative(group, "product_gamma");
    require_same_alphabet(g, h, "product_gamma");
    if (!(g.types() == group.types()))
        throw domain_error("product_gamma: group acts on a different alphabet");
    const std::size_t q = group.order();
    product_graph p{nm_graph(g.types()), {}, {}, g.order(), h.order(), q};

    std::vector<std::string> labels;
    for (std::size_t u = 0; u < g.order(); ++u)
        for (std::size_t v = 0; v < h.order(); ++v)
            for (std::size_t k = 0; k < q; ++k)
                labels.push_back("(" + g.label(u) + "," + h.label(v) + ")^" + std::to_string(k));
    p.graph = nm_graph(g.types(), std::move(labels));

    for (std::size_t u = 0; u < g.order(); ++u)
        for (std::size_t u2 = 0; u2 < g.order(); ++u2) {
            int tg = g.adjacency(u, u2);
            if (!tg)
                continue;
            for (std::size_t v = 0; v < h.order(); ++v)
                for (std::size_t v2 = 0; v2 < h.order(); ++v2) {
                    int th = h.adjacency(v, v2);
                    if (!th)
                        continue;
                    for (std::size_t k = 0; k < q; ++k)
                        for (std::size_t k2 = 0; k2 < q; ++k2) {
                            std::size_t a = p.index(u, v, k), b = p.index(u2, v2, k2);
                            if (a >= b)
                                continue;
                            int t = switched_type(group, k, k2, tg);
                            if (t == switched_type(group, k, k2, th))
                                p.graph.connect(a, b, t);
                        }
                }
        }

    const std::size_t n = p.graph.order();
    p.to_g.vertex_map.resize(n);
    p.to_h.vertex_map.resize(n);
    p.to_g.assignment.element.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        p.to_g.vertex_map[x] = x / q / h.order();
        p.to_h.vertex_map[x] = x / q % h.order();
        p.to_g.assignment.element[x] = group.inverse(x % q);
    }
    p.to_h.assignment = p.to_g.assignment;
    return p;
}

struct universal_report {
    bool projections_ok = false;
    // A Gamma-homomorphism trial -> product whose vertex map composes with
    // both projections to the given vertex maps.
    bool exists = false;
    bool commutes = false;
    // Distinct commuting mediating vertex maps (saturates at the enumeration cap).
    std::size_t mediating_count = 0;
    bool unique = false;
    std::optional<hom_witness> mediating;

    bool holds() const { return projections_ok && exists && commutes && unique; }
};

inline constexpr std::size_t default_mediating_cap = 1u << 16;

// Checks the product's universal property against `trial` with homomorphisms
// phi_g : trial -> g and phi_h : trial -> h (found by search when not given).
// Mediating maps must send x to some (phi_g(x), phi_h(x))^k; every choice of
// k per vertex is tried and those admitting a switch assignment are counted.
inline universal_report universal_property_check(const product_graph &p, const nm_graph &g, const nm_graph &h,
    const nm_graph &trial, const switch_group &group, std::optional<hom_witness> phi_g = std::nullopt,
    std::optional<hom_witness> phi_h = std::nullopt, const search_options &opts = {},
    std::size_t cap = default_mediating_cap)
{
    require_switch_commutative(group, "universal_property_check");
    if (p.g_order != g.order() || p.h_order != h.order() || p.group_order != group.order())
        throw domain_error("universal_property_check: product does not match its factors");
    if (!phi_g)
        phi_g = gamma_hom(trial, g, group, opts);
    if (!phi_h)
        phi_h = gamma_hom(trial, h, group, opts);
    if (!phi_g || !phi_h)
        throw contract_error("universal_property_check: trial graph does not map to both factors");
    if (!verify_hom(trial, g, group, *phi_g) || !verify_hom(trial, h, group, *phi_h))
        throw contract_error("universal_property_check: supplied factor homomorphisms do not verify");

    universal_report r;
    r.projections_ok = verify_hom(p.graph, g, group, p.to_g) && verify_hom(p.graph, h, group, p.to_h);

    const std::size_t q = group.order();
    const std::size_t t = trial.order();
    auto r_p = rho(p.graph, group);

    // Does the vertex map x -> base[x] admit an assignment making it a Gamma-hom?
    auto admits = [&](const std::vector<std::size_t> &base) -> std::optional<hom_witness> {
        map_problem mp;
        mp.pattern = &trial;
        mp.target = &r_p.graph;
        mp.allowed.assign(t, std::vector<char>(r_p.graph.order(), 0));
        for (std::size_t x = 0; x < t; ++x)
            for (std::size_t s = 0; s < q; ++s)
                mp.allowed[x][r_p.index(base[x], s)] = 1;
        auto f = find_map(mp, opts);
        if (!f)
            return std::nullopt;
        hom_witness w;
        w.vertex_map = base;
        w.assignment.element.resize(t);
        for (std::size_t x = 0; x < t; ++x)
            w.assignment.element[x] = group.inverse(r_p.element((*f)[x]));
        return w;
    };

    std::vector<std::size_t> k(t, 0);
    while (true) {
        std::vector<std::size_t> base(t);
        for (std::size_t x = 0; x < t; ++x)
            base[x] = p.index(phi_g->vertex_map[x], phi_h->vertex_map[x], k[x]);
        if (auto w = admits(base)) {
            if (!r.mediating)
                r.mediating = w;
            if (++r.mediating_count >= cap)
                break;
        }
        std::size_t i = 0;
        while (i < t && ++k[i] == q)
            k[i++] = 0;
        if (i == t)
            break;
    }

    r.exists = r.mediating.has_value() && verify_hom(trial, p.graph, group, *r.mediating);
    if (r.exists) {
        auto via_g = compose(group, *r.mediating, p.to_g);
        auto via_h = compose(group, *r.mediating, p.to_h);
        r.commutes = via_g.vertex_map == phi_g->vertex_map && via_h.vertex_map == phi_h->vertex_map
            && verify_hom(trial, g, group, via_g) && verify_hom(trial, h, group, via_h);
    }
    r.unique = r.mediating_count == 1;
    return r;
}

struct coproduct_graph {
    nm_graph graph;
    hom_witness from_g;
    hom_witness from_h;
};

inline coproduct_graph coproduct(const nm_graph &g, const nm_graph &h)
{
    require_same_alphabet(g, h, "coproduct");
    coproduct_graph c{disjoint_union(g, h), {}, {}};
    for (std::size_t x = 0; x < g.order(); ++x)
        c.from_g.vertex_map.push_back(x);
    for (std::size_t x = 0; x < h.order(); ++x)
        c.from_h.vertex_map.push_back(g.order() + x);
    c.from_g.assignment = switch_assignment::identity(g.order());
    c.from_h.assignment = switch_assignment::identity(h.order());
    return c;
}

// The map out of G + H that agrees with phi_g on G and with phi_h on H.
inline hom_witness coproduct_mediating(const hom_witness &phi_g, const hom_witness &phi_h)
{
    hom_witness w = phi_g;
    w.vertex_map.insert(w.vertex_map.end(), phi_h.vertex_map.begin(), phi_h.vertex_map.end());
    w.assignment.element.insert(w.assignment.element.end(), phi_h.assignment.element.begin(), phi_h.assignment.element.end());
    return w;
}

struct algebra_report {
    bool commutative = false;
    bool associative = false;
    bool distributive = false;
    bool rho_product = false;
    bool rho_coproduct = false;

    bool all() const { return commutative && associative && distributive && rho_product && rho_coproduct; }
};

inline algebra_report algebra_checks(
    const nm_graph &g, const nm_graph &h, const nm_graph &k, const switch_group &group, const search_options &opts = {})
{
    require_switch_commutative(group, "algebra_checks");
    auto times = [&](const nm_graph &a, const nm_graph &b) { return product_gamma(a, b, group).graph; };
    auto plus = [&](const nm_graph &a, const nm_graph &b) { return coproduct(a, b).graph; };
    auto iso = [&](const nm_graph &a, const nm_graph &b) { return gamma_iso(a, b, group, opts).has_value(); };

    algebra_report r;
    auto gh = times(g, h);
    r.commutative = iso(gh, times(h, g));
    r.associative = iso(times(gh, k), times(g, times(h, k)));
    r.distributive = iso(times(g, plus(h, k)), plus(gh, times(g, k)));
    r.rho_product = plain_iso(rho(gh, group).graph, product_e(rho(g, group).graph, rho(h, group).graph), opts).has_value();
    r.rho_coproduct = plain_iso(rho(plus(g, h), group).graph, plus(rho(g, group).graph, rho(h, group).graph), opts).has_value();
    return r;
}

}
