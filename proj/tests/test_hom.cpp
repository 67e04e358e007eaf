#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "switchhom/hom.hpp"
#include "switchhom/random.hpp"

using namespace switchhom;

namespace {

switch_group push() { return switch_group::closure(alphabet(1, 0), {type_perm({2, 1})}); }
switch_group c3() { return switch_group::closure(alphabet(1, 1), {type_perm({2, 3, 1})}); }

nm_graph complete(const alphabet &a, std::size_t n, int t)
{
    auto g = nm_graph::edgeless(a, n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            g.connect(u, v, t);
    return g;
}

// Switch-commutative groups of assorted sizes up to 6.
std::vector<switch_group> sample_groups()
{
    std::vector<switch_group> out{push(), c3(), switch_group::trivial(alphabet(1, 1))};
    out.push_back(switch_group::closure(alphabet(0, 5), {type_perm({2, 1, 4, 5, 3})}));
    out.push_back(switch_group::closure(alphabet(0, 3), {type_perm({2, 3, 1})}));
    out.push_back(switch_group::closure(alphabet(2, 0), {type_perm({2, 1, 3, 4}), type_perm({1, 2, 4, 3})}));
    for (const auto &g : out)
        REQUIRE(g.is_switch_commutative());
    return out;
}

}

TEST_CASE("plain_hom examples")
{
    rng_type rng(1);
    auto g = random_graph(alphabet(1, 1), 5, 0.5, rng);
    auto w = plain_hom(g, g);
    REQUIRE(w);
    CHECK(verify_hom(g, g, switch_group::trivial(g.types()), *w));

    alphabet a(1, 1);
    auto arc = build_graph(a, {"u", "v"}, {{"u", "v", 2}});
    auto edge = build_graph(a, {"x", "y"}, {{"x", "y", 3}});
    CHECK_FALSE(plain_hom(arc, edge));
    CHECK_THROWS_AS(plain_hom(arc, nm_graph(alphabet(1, 0))), domain_error);
}

TEST_CASE("plain_hom of K_n into K_m exists iff n <= m")
{
    alphabet a(0, 1);
    for (std::size_t n = 1; n <= 5; ++n)
        for (std::size_t m = 1; m <= 5; ++m)
            CHECK(plain_hom(complete(a, n, 1), complete(a, m, 1)).has_value() == (n <= m));
}

TEST_CASE("gamma_hom over the trivial group agrees with plain_hom")
{
    rng_type rng(2);
    auto e = switch_group::trivial(alphabet(1, 1));
    for (int trial = 0; trial < 100; ++trial) {
        auto g = random_graph(e.types(), 1 + uniform_index(rng, 4), 0.6, rng);
        auto h = random_graph(e.types(), 1 + uniform_index(rng, 4), 0.6, rng);
        CHECK(gamma_hom(g, h, e).has_value() == plain_hom(g, h).has_value());
    }
}

TEST_CASE("gamma_hom switches one endpoint of an arc")
{
    auto g = build_graph(alphabet(1, 0), {"x", "y"}, {{"x", "y", 2}});
    auto h = build_graph(alphabet(1, 0), {"a", "b"}, {{"a", "b", 1}});
    auto w = gamma_hom(g, h, push());
    REQUIRE(w);
    CHECK(verify_hom(g, h, push(), *w));
}

TEST_CASE("gamma_hom agrees with the exhaustive oracle on random instances")
{
    rng_type rng(3);
    for (const auto &group : sample_groups()) {
        for (int trial = 0; trial < 40; ++trial) {
            auto g = random_graph(group.types(), 1 + uniform_index(rng, 4), 0.6, rng);
            auto h = random_graph(group.types(), 1 + uniform_index(rng, 3), 0.7, rng);
            auto w = gamma_hom(g, h, group);
            CHECK(w.has_value() == oracle::gamma_hom_exists(g, h, group));
            if (w)
                CHECK(verify_hom(g, h, group, *w));
        }
    }
}

TEST_CASE("gamma_hom is reflexive and transitive under witness composition")
{
    rng_type rng(4);
    for (const auto &group : sample_groups()) {
        for (int trial = 0; trial < 15; ++trial) {
            auto g = random_graph(group.types(), 4, 0.5, rng);
            auto h = random_graph(group.types(), 3, 0.8, rng);
            auto k = random_graph(group.types(), 3, 0.9, rng);
            auto self = gamma_hom(g, g, group);
            REQUIRE(self);
            auto gh = gamma_hom(g, h, group);
            auto hk = gamma_hom(h, k, group);
            if (gh && hk)
                CHECK(verify_hom(g, k, group, compose(group, *gh, *hk)));
        }
    }
}

TEST_CASE("gamma_hom is monotone in the group")
{
    alphabet a(2, 0);
    auto small = switch_group::closure(a, {type_perm({2, 1, 3, 4})});
    auto big = switch_group::closure(a, {type_perm({2, 1, 3, 4}), type_perm({1, 2, 4, 3})});
    rng_type rng(6);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = random_graph(a, 4, 0.6, rng);
        auto h = random_graph(a, 3, 0.7, rng);
        if (gamma_hom(g, h, small))
            CHECK(gamma_hom(g, h, big));
    }
}

TEST_CASE("gamma_hom requires a switch-commutative group")
{
    auto s3 = switch_group::symmetric(alphabet(0, 3));
    auto g = nm_graph::edgeless(alphabet(0, 3), 1);
    CHECK_THROWS_AS(gamma_hom(g, g, s3), contract_error);
    CHECK_THROWS_AS(gamma_iso(g, g, s3), contract_error);
    CHECK_THROWS_AS(gamma_core(g, s3), contract_error);
}

TEST_CASE("gamma_iso examples")
{
    rng_type rng(7);
    auto g = random_graph(alphabet(1, 1), 5, 0.5, rng);
    auto w = gamma_iso(g, g, c3());
    REQUIRE(w);
    CHECK(verify_iso(g, g, c3(), *w));

    auto arc = build_graph(alphabet(1, 0), {"x", "y", "z"}, {{"x", "y", 2}, {"y", "z", 2}});
    auto rev = build_graph(alphabet(1, 0), {"x", "y", "z"}, {{"x", "y", 2}, {"y", "z", 1}});
    CHECK(gamma_iso(arc, rev, push()));
    CHECK_FALSE(gamma_iso(arc, rev, switch_group::trivial(alphabet(1, 0))));
    CHECK_FALSE(gamma_iso(arc, nm_graph::edgeless(alphabet(1, 0), 2), push()));
}

TEST_CASE("gamma_iso matches plain isomorphism of rho graphs and the oracle")
{
    rng_type rng(8);
    for (const auto &group : sample_groups()) {
        for (int trial = 0; trial < 25; ++trial) {
            auto p = 1 + uniform_index(rng, 4);
            auto g = random_graph(group.types(), p, 0.6, rng);
            // Half the time compare against a switched, shuffled copy.
            auto h = trial % 2 ? shuffled(apply_assignment(g, random_assignment(p, group, rng), group), rng)
                               : random_graph(group.types(), p, 0.6, rng);
            auto w = gamma_iso(g, h, group);
            CHECK(w.has_value() == gamma_iso_via_rho(g, h, group));
            CHECK(w.has_value() == oracle::gamma_iso_exists(g, h, group));
            if (trial % 2)
                CHECK(w);
            if (w) {
                CHECK(verify_iso(g, h, group, *w));
                CHECK(verify_iso(h, g, group, invert(group, *w)));
            }
        }
    }
}

TEST_CASE("plain_iso agrees with permutation search")
{
    rng_type rng(10);
    for (int trial = 0; trial < 80; ++trial) {
        auto g = random_graph(alphabet(1, 1), 5, 0.5, rng);
        auto h = trial % 2 ? shuffled(g, rng) : random_graph(alphabet(1, 1), 5, 0.5, rng);
        auto f = plain_iso(g, h);
        CHECK(f.has_value() == oracles::plain_iso(g, h));
        if (f)
            CHECK(is_plain_iso(g, h, *f));
    }
}

TEST_CASE("gamma_core examples")
{
    auto e = switch_group::trivial(alphabet(1, 0));
    CHECK(gamma_core(nm_graph::edgeless(alphabet(1, 0), 4), e).core.order() == 1);

    auto two = build_graph(alphabet(1, 1), {"a", "b", "c", "d"}, {{"a", "b", 3}, {"c", "d", 3}});
    auto c = gamma_core(two, switch_group::trivial(alphabet(1, 1)));
    CHECK(c.core.order() == 2);
    CHECK(c.core.adjacency_count() == 1);
    CHECK(verify_hom(two, c.core, switch_group::trivial(alphabet(1, 1)), c.retraction));

    // A pushed arc folds onto the other one only with switching.
    auto arcs = build_graph(alphabet(1, 0), {"a", "b", "c"}, {{"a", "b", 2}, {"b", "c", 2}});
    CHECK(gamma_core(arcs, e).core.order() == 3);
    CHECK(gamma_core(arcs, push()).core.order() == 2);
    CHECK_THROWS_AS(gamma_core(arcs, push(), {0, 1}), domain_error);
    CHECK_THROWS_AS(gamma_core(arcs, push(), {0, 1, 1}), domain_error);
}

TEST_CASE("gamma_core is order independent up to isomorphism and idempotent")
{
    rng_type rng(12);
    for (const auto &group : sample_groups()) {
        for (int trial = 0; trial < 8; ++trial) {
            auto g = random_graph(group.types(), 5, 0.4, rng);
            std::vector<std::size_t> rev{4, 3, 2, 1, 0};
            auto a = gamma_core(g, group);
            auto b = gamma_core(g, group, rev);
            CHECK(gamma_iso(a.core, b.core, group));
            CHECK(gamma_core(a.core, group).core.order() == a.core.order());
            CHECK(verify_hom(g, a.core, group, a.retraction));
            // No vertex of the core can be dropped.
            for (std::size_t v = 0; v < a.core.order() && a.core.order() > 1; ++v) {
                std::vector<std::size_t> keep;
                for (std::size_t u = 0; u < a.core.order(); ++u)
                    if (u != v)
                        keep.push_back(u);
                CHECK_FALSE(gamma_hom(a.core, induced_subgraph(a.core, keep), group));
            }
        }
    }
}

TEST_CASE("rho factors through a complement subgroup")
{
    alphabet a(0, 5);
    auto c6 = switch_group::closure(a, {type_perm({2, 1, 4, 5, 3})});
    std::vector<type_perm> c2{type_perm({2, 1, 3, 4, 5})};
    rng_type rng(13);
    for (int trial = 0; trial < 5; ++trial)
        CHECK(rho_factorization_check(random_graph(a, 3, 0.6, rng), c6, c2));

    alphabet b(0, 4);
    auto c4 = switch_group::closure(b, {type_perm({2, 3, 4, 1})});
    CHECK_THROWS_AS(
        rho_factorization_check(nm_graph::edgeless(b, 1), c4, std::vector<type_perm>{type_perm({3, 4, 1, 2})}),
        contract_error);
}

TEST_CASE("search options do not change the answer")
{
    rng_type rng(14);
    auto group = c3();
    for (int trial = 0; trial < 30; ++trial) {
        auto g = random_graph(group.types(), 6, 0.5, rng);
        auto h = random_graph(group.types(), 3, 0.8, rng);
        search_options ac3;
        ac3.arc_consistency = true;
        search_options par;
        par.jobs = 3;
        auto base = gamma_hom(g, h, group);
        auto with_ac3 = gamma_hom(g, h, group, ac3);
        auto with_jobs = gamma_hom(g, h, group, par);
        CHECK(base.has_value() == with_ac3.has_value());
        // Parallel runs return the same witness as the sequential search.
        CHECK(base == with_jobs);
    }
}

TEST_CASE("exhausted budget is reported as a timeout, not as absence")
{
    alphabet a(0, 1);
    search_options tight;
    tight.timeout = std::chrono::milliseconds(1);
    CHECK_THROWS_AS(plain_hom(complete(a, 11, 1), complete(a, 10, 1), tight), search_timeout);
}
