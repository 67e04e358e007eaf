#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "switchhom/switchhom.hpp"

using namespace switchhom;

namespace {

// Pinned tolerances: every comparison below is exact, so the allowed number
// of disagreements is zero throughout.
constexpr std::size_t allowed_failures = 0;
constexpr double limit_reduction_secs = 600;
constexpr double limit_iso_secs = 300;
constexpr double limit_forest_secs = 900;

constexpr std::size_t iso_pairs = 500;
constexpr std::size_t product_triples = 200;
constexpr std::size_t product_max_vertices = 64;
constexpr std::size_t algebra_triples = 100;
constexpr std::size_t sandwich_instances = 200;
constexpr std::size_t core_instances = 100;
constexpr std::size_t factor_instances = 50;

using clock_type = std::chrono::steady_clock;

double since(clock_type::time_point t0) { return std::chrono::duration<double>(clock_type::now() - t0).count(); }

int failed = 0;

void report(int n, bool ok, const std::string &detail, double secs)
{
    std::printf("criterion %d: %s  %s  [%.1fs]\n", n, ok ? "PASS" : "FAIL", detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok)
        ++failed;
}

std::string ratio(std::size_t good, std::size_t total) { return std::to_string(good) + "/" + std::to_string(total); }

std::vector<switch_group> commutative_subgroups(const alphabet &a)
{
    std::vector<switch_group> out;
    for (auto &g : subgroups(switch_group::symmetric(a)))
        if (g.is_switch_commutative())
            out.push_back(std::move(g));
    return out;
}

// Switch-commutative groups of order at most max_order over small alphabets,
// plus two cyclic groups of order 6.
std::vector<switch_group> group_pool(std::size_t max_order)
{
    std::vector<switch_group> pool;
    for (auto [n, m] : {std::pair{0, 1}, {0, 2}, {1, 0}, {0, 3}, {1, 1}, {0, 4}, {1, 2}, {2, 0}})
        for (auto &g : commutative_subgroups(alphabet(n, m)))
            if (g.order() <= max_order)
                pool.push_back(std::move(g));
    for (auto &g : {switch_group::closure(alphabet(0, 5), {type_perm({2, 1, 4, 5, 3})}),
             switch_group::closure(alphabet(1, 3), {type_perm({2, 1, 4, 5, 3})})})
        if (g.is_switch_commutative() && g.order() <= max_order)
            pool.push_back(g);
    return pool;
}

const switch_group &pick(const std::vector<switch_group> &pool, rng_type &rng)
{
    return pool[uniform_index(rng, pool.size())];
}

double density(rng_type &rng) { return 0.3 + 0.6 * std::uniform_real_distribution<double>(0, 1)(rng); }

void reduction()
{
    auto t0 = clock_type::now();
    std::size_t groups = 0, pairs = 0, yes = 0, disagree = 0, bad_witness = 0;
    for (auto [n, m] : {std::pair{0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 1}}) {
        alphabet a(n, m);
        std::vector<nm_graph> graphs;
        for (std::size_t order = 0; order <= 3; ++order)
            oracles::for_each_graph(a, order, [&](const nm_graph &g) { graphs.push_back(g); });
        for (const auto &group : subgroups(switch_group::symmetric(a))) {
            if (!oracles::switch_commutative(group))
                continue;
            ++groups;
            for (const auto &g : graphs)
                for (const auto &h : graphs) {
                    auto w = gamma_hom(g, h, group);
                    bool truth = oracle::gamma_hom_exists(g, h, group);
                    ++pairs;
                    yes += truth;
                    disagree += w.has_value() != truth;
                    bad_witness += w && !verify_hom(g, h, group, *w);
                }
        }
    }
    double secs = since(t0);
    report(1, disagree + bad_witness <= allowed_failures && secs < limit_reduction_secs,
        std::to_string(groups) + " groups, " + std::to_string(pairs) + " pairs (" + std::to_string(yes) +
            " homomorphic), disagreements " + std::to_string(disagree) + ", bad witnesses " +
            std::to_string(bad_witness),
        secs);
}

void isomorphism()
{
    auto t0 = clock_type::now();
    auto pool = group_pool(6);
    rng_type rng(20);
    std::size_t positive = 0, disagree = 0, bad_witness = 0;
    for (std::size_t i = 0; i < iso_pairs; ++i) {
        const auto &group = pick(pool, rng);
        auto p = 1 + uniform_index(rng, 4);
        auto g = random_graph(group.types(), p, density(rng), rng);
        auto h = i % 2 ? shuffled(apply_assignment(g, random_assignment(p, group, rng), group), rng)
                       : random_graph(group.types(), 1 + uniform_index(rng, 4), density(rng), rng);
        auto w = gamma_iso(g, h, group);
        bool truth = plain_iso(rho(g, group).graph, rho(h, group).graph).has_value();
        positive += truth;
        disagree += w.has_value() != truth;
        bad_witness += w && !verify_iso(g, h, group, *w);
    }
    double secs = since(t0);
    report(2, disagree + bad_witness <= allowed_failures && secs < limit_iso_secs,
        std::to_string(iso_pairs) + " pairs over " + std::to_string(pool.size()) + " groups (" +
            std::to_string(positive) + " isomorphic), disagreements " + std::to_string(disagree) +
            ", bad witnesses " + std::to_string(bad_witness),
        secs);
}

void product_universal()
{
    auto t0 = clock_type::now();
    auto pool = group_pool(6);
    rng_type rng(30);
    std::size_t count_ok = 0, proj = 0, exists = 0, commutes = 0, unique = 0, max_mediating = 0, full_orbit = 0;
    for (std::size_t i = 0; i < product_triples; ++i) {
        const auto &group = pick(pool, rng);
        std::size_t budget = product_max_vertices / group.order();
        std::size_t p = 1 + uniform_index(rng, std::min<std::size_t>(4, budget));
        std::size_t q = 1 + uniform_index(rng, std::min<std::size_t>(4, budget / p));
        auto g = random_graph(group.types(), p, density(rng), rng);
        auto h = random_graph(group.types(), q, density(rng), rng);
        auto prod = product_gamma(g, h, group);
        count_ok += prod.graph.order() == group.order() * p * q;

        nm_graph trial = nm_graph::edgeless(group.types(), 1);
        for (int attempt = 0; attempt < 20; ++attempt) {
            auto t = random_graph(group.types(), 1 + uniform_index(rng, 3), density(rng), rng);
            if (gamma_hom(t, g, group) && gamma_hom(t, h, group)) {
                trial = std::move(t);
                break;
            }
        }
        auto r = universal_property_check(prod, g, h, trial, group);
        proj += r.projections_ok;
        exists += r.exists;
        commutes += r.commutes;
        unique += r.unique;
        max_mediating = std::max(max_mediating, r.mediating_count);
        std::size_t copies = 1;
        for (std::size_t v = 0; v < trial.order(); ++v)
            copies *= group.order();
        full_orbit += r.exists && r.mediating_count == copies;
    }
    double secs = since(t0);
    std::size_t n = product_triples;
    bool ok = count_ok == n && proj == n && exists == n && commutes == n && unique == n;
    report(3, ok,
        "vertex count " + ratio(count_ok, n) + ", projections " + ratio(proj, n) + ", exists " + ratio(exists, n) +
            ", commutes " + ratio(commutes, n) + ", unique " + ratio(unique, n) + " (largest mediating count " +
            std::to_string(max_mediating) + ", equal to |Gamma|^|T| in " + ratio(full_orbit, exists) + ")",
        secs);
}

void algebra()
{
    auto t0 = clock_type::now();
    auto pool = group_pool(4);
    rng_type rng(40);
    std::size_t comm = 0, assoc = 0, dist = 0, rho_prod = 0, rho_cop = 0;
    for (std::size_t i = 0; i < algebra_triples; ++i) {
        const auto &group = pick(pool, rng);
        auto g = random_graph(group.types(), 1 + uniform_index(rng, 2), density(rng), rng);
        auto h = random_graph(group.types(), 1 + uniform_index(rng, 2), density(rng), rng);
        auto k = random_graph(group.types(), 1 + uniform_index(rng, 2), density(rng), rng);
        auto r = algebra_checks(g, h, k, group);
        comm += r.commutative;
        assoc += r.associative;
        dist += r.distributive;
        rho_prod += r.rho_product;
        rho_cop += r.rho_coproduct;
    }
    double secs = since(t0);
    std::size_t n = algebra_triples;
    bool ok = comm == n && assoc == n && dist == n && rho_prod == n && rho_cop == n;
    report(4, ok,
        "commutative " + ratio(comm, n) + ", associative " + ratio(assoc, n) + ", distributive " + ratio(dist, n) +
            ", rho over product " + ratio(rho_prod, n) + ", rho over coproduct " + ratio(rho_cop, n),
        secs);
}

struct forest_case {
    std::string name;
    switch_group group;
    std::size_t expected_bound;
    nm_graph witness;
    std::size_t expected_witness;
};

void forest_numbers()
{
    auto t0 = clock_type::now();
    alphabet oriented(1, 0);
    auto push = switch_group::closure(oriented, {type_perm({2, 1})});
    auto swap02 = switch_group::closure(alphabet(0, 2), {type_perm({2, 1})});
    auto c3 = switch_group::closure(alphabet(1, 1), {type_perm({2, 3, 1})});
    auto e10 = switch_group::trivial(oriented);

    std::vector<forest_case> cases{
        {"push on (1,0)", push, 2, lower_bound_witness(push), 2},
        {"edge swap on (0,2)", swap02, 2, lower_bound_witness(swap02), 2},
        {"trivial on (1,0)", e10, 4, height_two_tree(oriented, {1, 2}), 4},
        {"C3 on (1,1)", c3, 2, lower_bound_witness(c3), 2},
    };

    bool ok = true;
    std::string detail;
    for (const auto &c : cases) {
        auto r = forest_theorem_check(c.group, 200, 50, 12);
        auto chi = gamma_chromatic(c.witness, c.group).value;
        // The same number from the definitional oracle, independent of the search.
        auto chi_oracle = oracles::chromatic(c.witness, c.group);
        bool good = r.bound == c.expected_bound && r.upper_ok() && chi == c.expected_witness && chi == chi_oracle;
        ok = ok && good;
        if (!detail.empty())
            detail += "; ";
        detail += c.name + ": bound " + std::to_string(r.bound) + " (forests " + ratio(r.mapped, r.trials) +
                  "), witness " + std::to_string(c.witness.order()) + " vertices chi " + std::to_string(chi) +
                  " oracle " + std::to_string(chi_oracle) + " expected " + std::to_string(c.expected_witness);
    }

    // Largest chromatic number over every oriented tree on at most 6 vertices.
    std::size_t tree_max = 0, trees = 0;
    for (std::size_t order = 1; order <= 6; ++order) {
        std::vector<std::size_t> code(order >= 2 ? order - 2 : 0, 0);
        while (true) {
            // Decode the Pruefer sequence.
            std::vector<std::size_t> degree(order, 1);
            for (auto x : code)
                ++degree[x];
            std::vector<std::pair<std::size_t, std::size_t>> edges;
            for (auto x : code)
                for (std::size_t leaf = 0; leaf < order; ++leaf)
                    if (degree[leaf] == 1) {
                        edges.emplace_back(leaf, x);
                        --degree[leaf];
                        --degree[x];
                        break;
                    }
            if (order >= 2) {
                std::vector<std::size_t> last;
                for (std::size_t v = 0; v < order; ++v)
                    if (degree[v] == 1)
                        last.push_back(v);
                edges.emplace_back(last[0], last[1]);
            }
            for (std::size_t dirs = 0; dirs < (std::size_t{1} << edges.size()); ++dirs) {
                auto t = nm_graph::edgeless(oriented, order);
                for (std::size_t i = 0; i < edges.size(); ++i)
                    t.connect(edges[i].first, edges[i].second, dirs >> i & 1 ? 2 : 1);
                tree_max = std::max(tree_max, gamma_chromatic(t, e10).value);
                ++trees;
            }
            std::size_t i = 0;
            while (i < code.size() && ++code[i] == order)
                code[i++] = 0;
            if (i == code.size())
                break;
        }
    }
    detail += "; trivial on (1,0) over " + std::to_string(trees) + " labelled oriented trees up to 6 vertices: max chi " +
              std::to_string(tree_max);

    double secs = since(t0);
    report(5, ok && secs < limit_forest_secs, detail, secs);
}

void sandwich()
{
    auto t0 = clock_type::now();
    auto pool = group_pool(6);
    rng_type rng(60);
    std::size_t lower = 0, upper = 0, tight_upper = 0;
    for (std::size_t i = 0; i < sandwich_instances; ++i) {
        const auto &group = pick(pool, rng);
        auto g = random_graph(group.types(), 1 + uniform_index(rng, 6), density(rng), rng);
        auto x = gamma_chromatic(g, group).value;
        auto y = gamma_chromatic(g, switch_group::trivial(group.types())).value;
        lower += x <= y;
        upper += y <= group.order() * x;
        tight_upper += y == group.order() * x && group.order() > 1;
    }
    double secs = since(t0);
    std::size_t n = sandwich_instances;
    report(6, n - lower + n - upper <= allowed_failures,
        "lower " + ratio(lower, n) + ", upper " + ratio(upper, n) + " (" + std::to_string(tight_upper) +
            " tight upper)",
        secs);
}

void cores()
{
    auto t0 = clock_type::now();
    auto pool = group_pool(6);
    rng_type rng(70);
    std::size_t iso = 0, hom = 0, proper = 0;
    for (std::size_t i = 0; i < core_instances; ++i) {
        const auto &group = pick(pool, rng);
        auto p = 1 + uniform_index(rng, 5);
        auto g = random_graph(group.types(), p, density(rng), rng);
        std::vector<std::size_t> order(p);
        for (std::size_t v = 0; v < p; ++v)
            order[v] = v;
        std::vector<std::size_t> other = order;
        std::shuffle(other.begin(), other.end(), rng);
        auto a = gamma_core(g, group, order);
        auto b = gamma_core(g, group, other);
        iso += gamma_iso(a.core, b.core, group).has_value();
        hom += gamma_hom(g, a.core, group).has_value() && gamma_hom(g, b.core, group).has_value();
        proper += a.core.order() < p;
    }
    double secs = since(t0);
    std::size_t n = core_instances;
    report(7, n - iso + n - hom <= allowed_failures,
        "isomorphic cores " + ratio(iso, n) + ", g -> core " + ratio(hom, n) + " (" + std::to_string(proper) +
            " proper cores)",
        secs);
}

void factorization()
{
    auto t0 = clock_type::now();
    struct setup {
        switch_group group;
        std::vector<type_perm> c2;
    };
    std::vector<setup> setups{
        {switch_group::closure(alphabet(0, 5), {type_perm({2, 1, 4, 5, 3})}), {type_perm({2, 1, 3, 4, 5})}},
        {switch_group::closure(alphabet(1, 3), {type_perm({2, 1, 4, 5, 3})}), {type_perm({2, 1, 3, 4, 5})}},
    };
    rng_type rng(80);
    std::size_t good = 0, total = 0, skipped = 0;
    for (const auto &s : setups) {
        if (!s.group.is_switch_commutative() || s.group.order() != 6) {
            ++skipped;
            continue;
        }
        for (std::size_t i = 0; i < factor_instances; ++i) {
            auto g = random_graph(s.group.types(), 1 + uniform_index(rng, 4), density(rng), rng);
            good += rho_factorization_check(g, s.group, s.c2);
            ++total;
        }
    }
    double secs = since(t0);
    report(8, total >= factor_instances && total - good <= allowed_failures,
        "C6 = C2 x C3 factorization " + ratio(good, total) + " (" + std::to_string(setups.size() - skipped) +
            " alphabets)",
        secs);
}

void lmw()
{
    auto t0 = clock_type::now();
    std::size_t abelian = 0, lmw_groups = 0, lmw_sc = 0;
    for (int k = 1; k <= 4; ++k)
        for (int n = 0; 2 * n <= k; ++n) {
            alphabet a(n, k - 2 * n);
            for (const auto &g : subgroups(switch_group::symmetric(a))) {
                if (!oracles::abelian(g))
                    continue;
                ++abelian;
                if (!is_lmw_style(g))
                    continue;
                ++lmw_groups;
                lmw_sc += oracles::switch_commutative(g) && g.is_switch_commutative();
            }
        }
    auto c3 = switch_group::closure(alphabet(1, 1), {type_perm({2, 3, 1})});
    bool example = c3.is_switch_commutative() && oracles::switch_commutative(c3) && !is_lmw_style(c3);
    double secs = since(t0);
    report(9, lmw_sc == lmw_groups && example,
        std::to_string(abelian) + " abelian subgroups, LMW and switch-commutative " + ratio(lmw_sc, lmw_groups) +
            ", C3 on (1,1) commutative but not LMW: " + (example ? "yes" : "no"),
        secs);
}

}

int main()
{
    reduction();
    isomorphism();
    product_universal();
    algebra();
    forest_numbers();
    sandwich();
    cores();
    factorization();
    lmw();
    std::printf("%d of 9 criteria failed\n", failed);
    return failed ? 1 : 0;
}
