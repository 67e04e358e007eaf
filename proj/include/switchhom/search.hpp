#pragma once

// Backtracking search for typed vertex maps between two (n,m)-graphs.
//
// One engine serves homomorphisms (adjacencies must be preserved exactly),
// isomorphisms (non-adjacency preserved too, images injective) and the
// Gamma-isomorphism search over rho(H) (injective on base vertices).

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <future>
#include <limits>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "error.hpp"
#include "graph.hpp"

namespace switchhom {

struct search_options {
    std::chrono::milliseconds timeout{60'000};
    // Full arc consistency after each assignment instead of forward checking only.
    bool arc_consistency = false;
    // Worker threads splitting the first branching variable.
    unsigned jobs = 1;
};

struct map_problem {
    const nm_graph *pattern = nullptr;
    const nm_graph *target = nullptr;
    // Non-adjacent pattern pairs must map to distinct non-adjacent target pairs.
    bool exact = false;
    // When non-empty, images of distinct pattern vertices lie in distinct classes.
    std::vector<std::size_t> target_class;
    // Optional initial domains, allowed[x][b] != 0 if x may map to b.
    std::vector<std::vector<char>> allowed;
};

namespace detail {

using word = std::uint64_t;

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

class map_searcher {
public:
    map_searcher(const map_problem &p, const search_options &o) :
        p_(p),
        opts_(o),
        np_(p.pattern->order()),
        nt_(p.target->order()),
        nw_(words_for(nt_)),
        types_(p.target->types().size()),
        deadline_(std::chrono::steady_clock::now() + o.timeout)
    {
        const auto &t = *p.target;
        rows_.assign(nt_ * (types_ + 1) * nw_, 0);
        for (std::size_t a = 0; a < nt_; ++a)
            for (std::size_t b = 0; b < nt_; ++b) {
                int ty = t.adjacency(a, b);
                if (ty == 0 && a == b)
                    continue;
                row(a, ty)[b / 64] |= word(1) << (b % 64);
            }

        if (!p.target_class.empty()) {
            class_free_.assign(nt_ * nw_, ~word(0));
            for (std::size_t a = 0; a < nt_; ++a)
                for (std::size_t b = 0; b < nt_; ++b)
                    if (p.target_class[a] == p.target_class[b])
                        class_free_[a * nw_ + b / 64] &= ~(word(1) << (b % 64));
        }

        const auto &g = *p.pattern;
        links_.resize(np_);
        degree_.resize(np_);
        for (std::size_t x = 0; x < np_; ++x)
            for (std::size_t y = 0; y < np_; ++y) {
                if (x == y)
                    continue;
                int ty = g.adjacency(x, y);
                if (ty != 0 || p.exact)
                    links_[x].push_back({y, ty});
                if (ty != 0)
                    ++degree_[x];
            }
    }

    std::optional<std::vector<std::size_t>> run()
    {
        std::vector<word> domains(np_ * nw_, 0);
        if (!initial_domains(domains))
            return std::nullopt;
        if (np_ == 0)
            return std::vector<std::size_t>{};
        std::vector<char> assigned(np_, 0);
        std::vector<std::size_t> image(np_, 0);
        if (opts_.arc_consistency && !propagate(domains, assigned))
            return std::nullopt;

        if (opts_.jobs <= 1) {
            if (search(domains, assigned, image))
                return image;
            return std::nullopt;
        }
        return parallel_root(domains, assigned, image);
    }

private:
    struct link {
        std::size_t other;
        int type;
    };

    word *row(std::size_t a, int ty) { return &rows_[(a * (types_ + 1) + ty) * nw_]; }
    const word *row(std::size_t a, int ty) const { return &rows_[(a * (types_ + 1) + ty) * nw_]; }

    bool initial_domains(std::vector<word> &domains) const
    {
        const auto &g = *p_.pattern;
        const auto &t = *p_.target;
        // Per-vertex multiset of incident types, for necessary-condition filtering.
        auto profile = [&](const nm_graph &h, std::size_t v) {
            std::vector<std::size_t> c(types_ + 1, 0);
            for (std::size_t u = 0; u < h.order(); ++u)
                if (int ty = h.adjacency(v, u))
                    ++c[ty];
            return c;
        };
        // Distinct neighbours land in distinct classes, so counts can only grow;
        // an exact bijection preserves them.
        const bool injective = !p_.target_class.empty();
        const bool bijective = injective && p_.exact && np_ == nt_;
        std::vector<std::vector<std::size_t>> tp(nt_);
        for (std::size_t b = 0; b < nt_; ++b)
            tp[b] = profile(t, b);
        for (std::size_t x = 0; x < np_; ++x) {
            auto xp = profile(g, x);
            bool any = false;
            for (std::size_t b = 0; b < nt_; ++b) {
                if (!p_.allowed.empty() && !p_.allowed[x][b])
                    continue;
                bool ok = true;
                for (std::size_t ty = 1; ty <= types_ && ok; ++ty) {
                    if (bijective)
                        ok = xp[ty] == tp[b][ty];
                    else if (injective)
                        ok = xp[ty] <= tp[b][ty];
                    else
                        ok = xp[ty] == 0 || tp[b][ty] > 0;
                }
                if (ok) {
                    domains[x * nw_ + b / 64] |= word(1) << (b % 64);
                    any = true;
                }
            }
            if (!any)
                return false;
        }
        return true;
    }

    std::size_t popcount(const word *d) const
    {
        std::size_t c = 0;
        for (std::size_t w = 0; w < nw_; ++w)
            c += static_cast<std::size_t>(std::popcount(d[w]));
        return c;
    }

    bool empty(const word *d) const
    {
        for (std::size_t w = 0; w < nw_; ++w)
            if (d[w])
                return false;
        return true;
    }

    void tick()
    {
        if ((++nodes_ & 255) == 0 && std::chrono::steady_clock::now() > deadline_)
            throw search_timeout();
    }

    // Smallest domain first, then larger degree, then lower index.
    std::optional<std::size_t> choose(const std::vector<word> &domains, const std::vector<char> &assigned) const
    {
        std::optional<std::size_t> best;
        std::size_t best_size = std::numeric_limits<std::size_t>::max();
        for (std::size_t x = 0; x < np_; ++x) {
            if (assigned[x])
                continue;
            auto s = popcount(&domains[x * nw_]);
            if (!best || s < best_size || (s == best_size && degree_[x] > degree_[*best])) {
                best = x;
                best_size = s;
            }
        }
        return best;
    }

    bool assign(std::vector<word> &domains, std::vector<char> &assigned, std::size_t x, std::size_t b) const
    {
        word *dx = &domains[x * nw_];
        std::fill(dx, dx + nw_, 0);
        dx[b / 64] = word(1) << (b % 64);
        assigned[x] = 1;
        for (const auto &l : links_[x]) {
            if (assigned[l.other])
                continue;
            word *dy = &domains[l.other * nw_];
            const word *r = row(b, l.type);
            for (std::size_t w = 0; w < nw_; ++w)
                dy[w] &= r[w];
        }
        if (!class_free_.empty()) {
            const word *free = &class_free_[b * nw_];
            for (std::size_t y = 0; y < np_; ++y) {
                if (assigned[y])
                    continue;
                word *dy = &domains[y * nw_];
                for (std::size_t w = 0; w < nw_; ++w)
                    dy[w] &= free[w];
            }
        }
        for (std::size_t y = 0; y < np_; ++y)
            if (!assigned[y] && empty(&domains[y * nw_]))
                return false;
        return true;
    }

    // AC-3 over pattern links between unassigned vertices.
    bool propagate(std::vector<word> &domains, const std::vector<char> &assigned) const
    {
        bool changed = true;
        std::vector<word> support(nw_);
        while (changed) {
            changed = false;
            for (std::size_t x = 0; x < np_; ++x) {
                if (assigned[x])
                    continue;
                for (const auto &l : links_[x]) {
                    if (assigned[l.other] || l.type == 0)
                        continue;
                    word *dx = &domains[x * nw_];
                    const word *dy = &domains[l.other * nw_];
                    for (std::size_t b = 0; b < nt_; ++b) {
                        if (!(dx[b / 64] >> (b % 64) & 1))
                            continue;
                        const word *r = row(b, l.type);
                        bool supported = false;
                        for (std::size_t w = 0; w < nw_ && !supported; ++w)
                            supported = (r[w] & dy[w]) != 0;
                        if (!supported) {
                            dx[b / 64] &= ~(word(1) << (b % 64));
                            changed = true;
                        }
                    }
                    if (empty(dx))
                        return false;
                }
            }
        }
        return true;
    }

    bool search(const std::vector<word> &domains, std::vector<char> &assigned, std::vector<std::size_t> &image)
    {
        tick();
        auto x = choose(domains, assigned);
        if (!x)
            return true;
        const word *dx = &domains[*x * nw_];
        for (std::size_t b = 0; b < nt_; ++b) {
            if (!(dx[b / 64] >> (b % 64) & 1))
                continue;
            if (try_value(domains, assigned, image, *x, b))
                return true;
        }
        return false;
    }

    bool try_value(const std::vector<word> &domains, std::vector<char> &assigned, std::vector<std::size_t> &image,
        std::size_t x, std::size_t b)
    {
        auto next = domains;
        auto next_assigned = assigned;
        if (!assign(next, next_assigned, x, b))
            return false;
        if (opts_.arc_consistency && !propagate(next, next_assigned))
            return false;
        image[x] = b;
        if (search(next, next_assigned, image)) {
            assigned = next_assigned;
            return true;
        }
        return false;
    }

    std::optional<std::vector<std::size_t>> parallel_root(
        const std::vector<word> &domains, const std::vector<char> &assigned, const std::vector<std::size_t> &image)
    {
        auto x = *choose(domains, assigned);
        std::vector<std::size_t> candidates;
        for (std::size_t b = 0; b < nt_; ++b)
            if (domains[x * nw_ + b / 64] >> (b % 64) & 1)
                candidates.push_back(b);

        // Lowest successful candidate wins, matching the sequential result.
        std::atomic<std::size_t> best{candidates.size()};
        std::atomic<std::size_t> next{0};
        std::vector<std::optional<std::vector<std::size_t>>> found(candidates.size());
        const unsigned jobs = std::min<unsigned>(opts_.jobs, static_cast<unsigned>(candidates.size()));

        auto worker = [&]() {
            map_searcher local(p_, opts_);
            local.deadline_ = deadline_;
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= candidates.size() || i > best.load())
                    return;
                auto local_assigned = assigned;
                auto local_image = image;
                if (local.try_value(domains, local_assigned, local_image, x, candidates[i])) {
                    found[i] = local_image;
                    std::size_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {
                    }
                }
            }
        };

        std::vector<std::future<void>> futures;
        for (unsigned j = 0; j < jobs; ++j)
            futures.push_back(std::async(std::launch::async, worker));
        for (auto &f : futures)
            f.get();
        auto b = best.load();
        if (b < candidates.size())
            return found[b];
        return std::nullopt;
    }

    const map_problem &p_;
    search_options opts_;
    std::size_t np_, nt_, nw_, types_;
    std::chrono::steady_clock::time_point deadline_;
    std::vector<word> rows_;
    std::vector<word> class_free_;
    std::vector<std::vector<link>> links_;
    std::vector<std::size_t> degree_;
    std::uint64_t nodes_ = 0;
};

}

inline std::optional<std::vector<std::size_t>> find_map(const map_problem &p, const search_options &opts = {})
{
    if (!p.pattern || !p.target)
        throw domain_error("find_map: pattern and target are required");
    if (!(p.pattern->types() == p.target->types()))
        throw domain_error("find_map: alphabet mismatch");
    if (!p.target_class.empty() && p.target_class.size() != p.target->order())
        throw domain_error("find_map: target class vector has the wrong size");
    if (!p.allowed.empty() && p.allowed.size() != p.pattern->order())
        throw domain_error("find_map: allowed-domain table has the wrong size");
    detail::map_searcher s(p, opts);
    return s.run();
}

// Colour refinement run jointly over several graphs so that colours are
// comparable between them. With typed = false the adjacency types are
// ignored (underlying simple graph).
inline std::vector<std::vector<std::size_t>> refine_colors(const std::vector<const nm_graph *> &graphs, bool typed)
{
    std::vector<std::vector<std::size_t>> colors;
    for (auto g : graphs)
        colors.emplace_back(g->order(), 0);
    std::size_t classes = 1;
    while (true) {
        using signature = std::pair<std::size_t, std::vector<std::pair<int, std::size_t>>>;
        std::map<signature, std::size_t> ids;
        std::vector<std::vector<signature>> sigs(graphs.size());
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            const auto &g = *graphs[i];
            for (std::size_t v = 0; v < g.order(); ++v) {
                signature s{colors[i][v], {}};
                for (std::size_t u = 0; u < g.order(); ++u)
                    if (int t = g.adjacency(v, u))
                        s.second.emplace_back(typed ? t : 1, colors[i][u]);
                std::sort(s.second.begin(), s.second.end());
                ids.emplace(s, 0);
                sigs[i].push_back(std::move(s));
            }
        }
        std::size_t next = 0;
        for (auto &[s, id] : ids)
            id = next++;
        for (std::size_t i = 0; i < graphs.size(); ++i)
            for (std::size_t v = 0; v < graphs[i]->order(); ++v)
                colors[i][v] = ids.at(sigs[i][v]);
        if (ids.size() == classes)
            break;
        classes = ids.size();
    }
    return colors;
}

}
