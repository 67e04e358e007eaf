#pragma once

// Gamma-chromatic numbers by quotient search, and the forest bound machinery:
// Hamiltonian decomposition of K_{2r}, the typed target, a greedy forest
// homomorphism and lower-bound witnesses.

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "hom.hpp"
#include "random.hpp"
#include "search.hpp"
#include "switching.hpp"
#include "typeset.hpp"

namespace switchhom {

struct orbit_system {
    orbit_partition partition;
    // Least element of each orbit, in orbit order.
    std::vector<int> representatives;
    int k = 0;
    bool consistent = false;
};

inline orbit_system orbit_system_of(const switch_group &group)
{
    orbit_system s;
    s.partition = orbits(group);
    for (const auto &o : s.partition.orbits)
        s.representatives.push_back(o.front());
    s.k = static_cast<int>(s.partition.orbits.size());
    s.consistent = is_consistent(group);
    return s;
}

struct chromatic_result {
    std::size_t value = 0;
    nm_graph witness_target;
    hom_witness witness_hom;
};

inline constexpr std::size_t chromatic_vertex_cap = 16;

namespace detail {

// Assigns (class, switch) to vertices in a fixed order. Classes appear in
// restricted-growth order and the first member of a class is left unswitched:
// switching a whole class by tau is the same as switching its target vertex.
class quotient_search {
public:
    quotient_search(const nm_graph &g, const switch_group &group, std::size_t k, const search_options &opts) :
        g_(g), group_(group), k_(k), p_(g.order()), deadline_(std::chrono::steady_clock::now() + opts.timeout)
    {
        cls_.assign(p_, 0);
        sw_.assign(p_, 0);
        table_.assign(k_ * k_, 0);
        order_ = bfs_order();
    }

    std::optional<chromatic_result> run()
    {
        if (!place(0, 0))
            return std::nullopt;
        chromatic_result r{k_, nm_graph::edgeless(g_.types(), k_), {}};
        for (std::size_t a = 0; a < k_; ++a)
            for (std::size_t b = a + 1; b < k_; ++b)
                if (int t = table_[a * k_ + b])
                    r.witness_target.connect(a, b, t);
        r.witness_hom.vertex_map = cls_;
        r.witness_hom.assignment.element = sw_;
        return r;
    }

private:
    std::vector<std::size_t> bfs_order() const
    {
        std::vector<std::size_t> out;
        std::vector<char> seen(p_, 0);
        for (std::size_t s = 0; s < p_; ++s) {
            if (seen[s])
                continue;
            seen[s] = 1;
            std::size_t head = out.size();
            out.push_back(s);
            while (head < out.size()) {
                auto v = out[head++];
                for (auto u : g_.neighbors(v))
                    if (!seen[u]) {
                        seen[u] = 1;
                        out.push_back(u);
                    }
            }
        }
        return out;
    }

    bool place(std::size_t i, std::size_t used)
    {
        if ((++nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > deadline_)
            throw search_timeout();
        if (i == p_)
            return true;
        const auto x = order_[i];
        for (std::size_t c = 0; c < std::min(used + 1, k_); ++c) {
            const bool fresh = c == used;
            for (std::size_t s = 0; s < (fresh ? 1 : group_.order()); ++s) {
                std::vector<std::size_t> touched;
                if (fits(i, x, c, s, touched)) {
                    cls_[x] = c;
                    sw_[x] = s;
                    if (place(i + 1, fresh ? used + 1 : used))
                        return true;
                }
                for (auto e : touched)
                    table_[e] = 0;
            }
        }
        return false;
    }

    // Records new class-pair types in `touched` so they can be undone.
    bool fits(std::size_t i, std::size_t x, std::size_t c, std::size_t s, std::vector<std::size_t> &touched)
    {
        const auto &a = g_.types();
        for (std::size_t j = 0; j < i; ++j) {
            auto y = order_[j];
            int t = g_.adjacency(x, y);
            if (!t)
                continue;
            if (cls_[y] == c)
                return false;
            int st = switched_type(group_, s, sw_[y], t);
            auto e = c * k_ + cls_[y];
            if (table_[e] == 0) {
                table_[e] = st;
                table_[cls_[y] * k_ + c] = a.bar(st);
                touched.push_back(e);
                touched.push_back(cls_[y] * k_ + c);
            } else if (table_[e] != st) {
                return false;
            }
        }
        return true;
    }

    const nm_graph &g_;
    const switch_group &group_;
    std::size_t k_;
    std::size_t p_;
    std::chrono::steady_clock::time_point deadline_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> cls_;
    std::vector<std::size_t> sw_;
    std::vector<int> table_;
    std::size_t nodes_ = 0;
};

}

// Least k such that some switched copy of g has a k-class quotient with no
// adjacent pair inside a class and one type per ordered class pair.
inline chromatic_result gamma_chromatic(const nm_graph &g, const switch_group &group, const search_options &opts = {},
    std::size_t vertex_cap = chromatic_vertex_cap)
{
    require_switch_commutative(group, "gamma_chromatic");
    if (!(g.types() == group.types()))
        throw domain_error("gamma_chromatic: alphabet mismatch");
    if (g.order() > vertex_cap)
        throw resource_error("gamma_chromatic: graph has more than " + std::to_string(vertex_cap) + " vertices");
    if (g.order() == 0)
        return chromatic_result{0, nm_graph(g.types()), hom_witness{}};
    for (std::size_t k = 1; k <= g.order(); ++k) {
        detail::quotient_search q(g, group, k, opts);
        if (auto r = q.run()) {
            if (!verify_hom(g, r->witness_target, group, r->witness_hom))
                throw contract_error("gamma_chromatic: quotient witness failed verification");
            return std::move(*r);
        }
    }
    throw contract_error("gamma_chromatic: no quotient found with one class per vertex");
}

// Hamiltonian decomposition of K_{2r} on vertices 0..2r-1 (2r-1 plays the
// point at infinity): r-1 cycles and a perfect matching.
struct hamiltonian_decomposition {
    std::size_t order = 0;
    std::vector<std::vector<std::size_t>> cycles;
    std::vector<std::pair<std::size_t, std::size_t>> matching;
};

inline hamiltonian_decomposition walecki(std::size_t order)
{
    if (order < 2 || order % 2)
        throw domain_error("walecki: order must be even and at least 2");
    hamiltonian_decomposition d;
    d.order = order;
    const std::size_t r = order / 2;
    const std::size_t mod = order - 1;
    const std::size_t inf = order - 1;
    for (std::size_t j = 0; j + 1 < r; ++j) {
        std::vector<std::size_t> cyc{inf, j};
        for (std::size_t s = 1; s < r; ++s) {
            cyc.push_back((j + s) % mod);
            cyc.push_back((j + mod - s) % mod);
        }
        d.cycles.push_back(std::move(cyc));
    }
    std::vector<char> used(order * order, 0);
    for (const auto &c : d.cycles)
        for (std::size_t i = 0; i < c.size(); ++i) {
            auto a = c[i], b = c[(i + 1) % c.size()];
            used[a * order + b] = used[b * order + a] = 1;
        }
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = a + 1; b < order; ++b)
            if (!used[a * order + b])
                d.matching.emplace_back(a, b);
    return d;
}

// Cycles are spanning and pairwise edge-disjoint, the leftover is a perfect
// matching and together they cover every pair exactly once.
inline bool valid_decomposition(const hamiltonian_decomposition &d)
{
    const std::size_t n = d.order;
    std::vector<int> cover(n * n, 0);
    auto mark = [&](std::size_t a, std::size_t b) {
        if (a == b || a >= n || b >= n)
            return false;
        ++cover[a * n + b];
        ++cover[b * n + a];
        return true;
    };
    for (const auto &c : d.cycles) {
        if (c.size() != n)
            return false;
        auto sorted = c;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < n; ++i)
            if (sorted[i] != i)
                return false;
        for (std::size_t i = 0; i < n; ++i)
            if (!mark(c[i], c[(i + 1) % n]))
                return false;
    }
    std::vector<int> deg(n, 0);
    for (auto [a, b] : d.matching) {
        if (!mark(a, b))
            return false;
        ++deg[a];
        ++deg[b];
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (deg[a] != 1)
            return false;
        for (std::size_t b = 0; b < n; ++b)
            if (a != b && cover[a * n + b] != 1)
                return false;
    }
    return true;
}

struct forest_target {
    nm_graph graph;
    orbit_system orbits;
    // Odd orbit count used for the construction (k, or k + 1 with a dummy orbit).
    int k_prime = 0;
    hamiltonian_decomposition decomposition;
    // Types placed along each cycle (two per cycle, equal for constant cycles) and on the matching.
    std::vector<std::pair<int, int>> cycle_types;
    int matching_type = 0;
};

// Every vertex x meets every orbit: some w has adjacency(x, w) in the orbit.
inline bool covers_all_orbits(const nm_graph &t, const orbit_partition &orbits)
{
    for (std::size_t x = 0; x < t.order(); ++x)
        for (const auto &o : orbits.orbits) {
            bool hit = false;
            for (std::size_t w = 0; w < t.order() && !hit; ++w)
                if (int ty = t.adjacency(x, w))
                    hit = std::binary_search(o.begin(), o.end(), ty);
            if (!hit)
                return false;
        }
    return true;
}

// K_{k'+1} typed along a Hamiltonian decomposition. Bar-closed orbits are
// paired on alternating cycles (alpha_{2i-1}, alpha_{2i}) and the last one
// goes on the matching. An orbit that is not bar-closed gets a cycle of one
// constant type alpha, which shows alpha one way and bar(alpha) the other.
inline forest_target build_forest_target(const switch_group &group)
{
    require_switch_commutative(group, "build_forest_target");
    const auto &a = group.types();
    forest_target ft{nm_graph(a), orbit_system_of(group), 0, {}, {}, 0};
    const auto &os = ft.orbits;
    ft.k_prime = os.k % 2 ? os.k : os.k + 1;
    ft.decomposition = walecki(static_cast<std::size_t>(ft.k_prime) + 1);
    if (!valid_decomposition(ft.decomposition))
        throw contract_error("build_forest_target: Hamiltonian decomposition failed validation");

    const auto &parts = os.partition;
    std::vector<char> covered(parts.orbits.size(), 0);
    auto closed = [&](std::size_t i) {
        for (int t : parts.orbits[i])
            if (parts.orbit_of(a.bar(t)) != i)
                return false;
        return true;
    };

    std::size_t cycles = ft.decomposition.cycles.size();
    for (std::size_t i = 0; i < parts.orbits.size() && ft.cycle_types.size() < cycles; ++i) {
        if (covered[i] || closed(i))
            continue;
        // Prefer an alpha whose bar lands in an orbit not yet covered.
        int alpha = 0;
        for (int t : parts.orbits[i]) {
            auto j = parts.orbit_of(a.bar(t));
            if (j != i && (!alpha || (covered[parts.orbit_of(a.bar(alpha))] && !covered[j])))
                alpha = t;
        }
        covered[i] = 1;
        covered[parts.orbit_of(a.bar(alpha))] = 1;
        ft.cycle_types.emplace_back(alpha, alpha);
    }
    std::vector<int> pending;
    for (std::size_t i = 0; i < parts.orbits.size(); ++i)
        if (!covered[i])
            pending.push_back(os.representatives[i]);
    std::size_t next = 0;
    while (ft.cycle_types.size() < cycles && next < pending.size()) {
        int x = pending[next++];
        int y = next < pending.size() ? pending[next++] : os.representatives.back();
        ft.cycle_types.emplace_back(x, y);
    }
    ft.matching_type = next < pending.size() ? pending[next++] : os.representatives.back();
    while (ft.cycle_types.size() < cycles)
        ft.cycle_types.emplace_back(os.representatives.back(), os.representatives.back());

    ft.graph = nm_graph::edgeless(a, ft.decomposition.order);
    for (std::size_t c = 0; c < cycles; ++c) {
        const auto &cyc = ft.decomposition.cycles[c];
        for (std::size_t i = 0; i < cyc.size(); ++i)
            ft.graph.connect(cyc[i], cyc[(i + 1) % cyc.size()], i % 2 ? ft.cycle_types[c].second : ft.cycle_types[c].first);
    }
    for (auto [u, v] : ft.decomposition.matching)
        ft.graph.connect(u, v, ft.matching_type);
    return ft;
}

inline bool is_forest(const nm_graph &g)
{
    std::vector<std::size_t> parent(g.order());
    for (std::size_t v = 0; v < g.order(); ++v)
        parent[v] = v;
    auto find = [&](std::size_t v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::size_t u = 0; u < g.order(); ++u)
        for (std::size_t v = u + 1; v < g.order(); ++v)
            if (g.adjacent(u, v)) {
                auto a = find(u), b = find(v);
                if (a == b)
                    return false;
                parent[a] = b;
            }
    return true;
}

struct forest_hom_result {
    hom_witness witness;
    // False when the greedy pass got stuck and a full search was used.
    bool greedy = true;
};

// Roots every tree at its least vertex, sends roots to target vertex 0 and
// walks down, switching each child so that its edge to the parent matches
// some edge at the parent's image.
inline forest_hom_result forest_hom(const nm_graph &f, const forest_target &target, const switch_group &group,
    const search_options &opts = {})
{
    require_switch_commutative(group, "forest_hom");
    if (!(f.types() == group.types()))
        throw domain_error("forest_hom: alphabet mismatch");
    if (!is_forest(f))
        throw domain_error("forest_hom: input is not a forest");
    const auto &t = target.graph;
    forest_hom_result r;
    r.witness.vertex_map.assign(f.order(), 0);
    r.witness.assignment = switch_assignment::identity(f.order());
    std::vector<char> seen(f.order(), 0);
    for (std::size_t root = 0; root < f.order() && r.greedy; ++root) {
        if (seen[root])
            continue;
        seen[root] = 1;
        std::vector<std::size_t> queue{root};
        for (std::size_t head = 0; head < queue.size() && r.greedy; ++head) {
            auto p = queue[head];
            auto x = r.witness.vertex_map[p];
            for (auto c : f.neighbors(p)) {
                if (seen[c])
                    continue;
                seen[c] = 1;
                queue.push_back(c);
                bool placed = false;
                for (std::size_t s = 0; s < group.order() && !placed; ++s) {
                    int want = switched_type(group, r.witness.assignment[p], s, f.adjacency(p, c));
                    for (std::size_t w = 0; w < t.order() && !placed; ++w)
                        if (t.adjacency(x, w) == want) {
                            r.witness.vertex_map[c] = w;
                            r.witness.assignment.element[c] = s;
                            placed = true;
                        }
                }
                if (!placed) {
                    r.greedy = false;
                    break;
                }
            }
        }
    }
    if (!r.greedy) {
        auto w = gamma_hom(f, t, group, opts);
        if (!w)
            throw contract_error("forest_hom: forest does not map into the target");
        r.witness = std::move(*w);
    }
    if (!verify_hom(f, t, group, r.witness))
        throw contract_error("forest_hom: witness failed verification");
    return r;
}

// Star with centre "v" and leaves "v<i>", adjacency(v, v_i) = types[i-1].
inline nm_graph star_witness(const alphabet &a, const std::vector<int> &types)
{
    std::vector<std::string> labels{"v"};
    for (std::size_t i = 1; i <= types.size(); ++i)
        labels.push_back("v" + std::to_string(i));
    nm_graph g(a, std::move(labels));
    for (std::size_t i = 0; i < types.size(); ++i)
        g.connect(0, i + 1, types[i]);
    return g;
}

// Root "r" with children "c<i>" (adjacency(r, c_i) = types[i-1]), each child
// with children "c<i>.<j>" (adjacency(c_i, c_i.j) = types[j-1]).
inline nm_graph height_two_tree(const alphabet &a, const std::vector<int> &types)
{
    const std::size_t k = types.size();
    std::vector<std::string> labels{"r"};
    for (std::size_t i = 1; i <= k; ++i)
        labels.push_back("c" + std::to_string(i));
    for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; j <= k; ++j)
            labels.push_back("c" + std::to_string(i) + "." + std::to_string(j));
    nm_graph g(a, std::move(labels));
    for (std::size_t i = 0; i < k; ++i) {
        g.connect(0, 1 + i, types[i]);
        for (std::size_t j = 0; j < k; ++j)
            g.connect(1 + i, 1 + k + i * k + j, types[j]);
    }
    return g;
}

// Star on the representatives for odd k, height-two tree for even k.
inline nm_graph lower_bound_witness(const switch_group &group)
{
    require_switch_commutative(group, "lower_bound_witness");
    auto os = orbit_system_of(group);
    if (!os.consistent)
        throw contract_error("lower_bound_witness: group is not consistent");
    return os.k % 2 ? star_witness(group.types(), os.representatives) : height_two_tree(group.types(), os.representatives);
}

struct forest_report {
    int k = 0;
    int k_prime = 0;
    // k + 1 for odd k, k + 2 for even k.
    std::size_t bound = 0;
    bool consistent = false;
    bool decomposition_ok = false;
    bool coverage_ok = false;
    std::size_t trials = 0;
    std::size_t mapped = 0;
    std::size_t greedy_fallbacks = 0;
    // Chromatic number of the lower-bound witness (consistent groups only).
    std::optional<std::size_t> witness_chromatic;

    bool upper_ok() const { return decomposition_ok && coverage_ok && mapped == trials; }
    bool lower_ok() const
    {
        if (!witness_chromatic)
            return !consistent;
        return k % 2 ? *witness_chromatic == bound : *witness_chromatic > static_cast<std::size_t>(k) + 1;
    }
};

inline forest_report forest_theorem_check(const switch_group &group, std::size_t trials, std::uint64_t seed,
    std::size_t max_vertices = 10, const search_options &opts = {})
{
    auto ft = build_forest_target(group);
    forest_report r;
    r.k = ft.orbits.k;
    r.k_prime = ft.k_prime;
    r.bound = static_cast<std::size_t>(ft.k_prime) + 1;
    r.consistent = ft.orbits.consistent;
    r.decomposition_ok = valid_decomposition(ft.decomposition);
    r.coverage_ok = covers_all_orbits(ft.graph, ft.orbits.partition);
    rng_type rng(seed);
    for (std::size_t i = 0; i < trials; ++i) {
        auto f = random_forest(group.types(), 1 + uniform_index(rng, max_vertices), rng);
        ++r.trials;
        try {
            auto h = forest_hom(f, ft, group, opts);
            ++r.mapped;
            if (!h.greedy)
                ++r.greedy_fallbacks;
        } catch (const contract_error &) {
        }
    }
    if (r.consistent)
        r.witness_chromatic = gamma_chromatic(lower_bound_witness(group), group, opts).value;
    return r;
}

}
