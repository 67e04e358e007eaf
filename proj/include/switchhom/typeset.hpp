#pragma once

// Type alphabet A_{n,m} = {1..2n+m}, permutations of it and the finite
// switch groups generated by such permutations.
//
// Type ids are 1-based everywhere in the public interface. For n arc
// colours, ids 1..2n are arc views (2c is the head view of colour c, 2c-1
// the tail view) and ids 2n+1..2n+m are edge colours.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace switchhom {

class alphabet {
public:
    alphabet(int arc_colors, int edge_colors) : n_(arc_colors), m_(edge_colors)
    {
        if (n_ < 0 || m_ < 0)
            throw domain_error("alphabet: colour counts must be non-negative");
        if (2 * n_ + m_ < 1)
            throw domain_error("alphabet: empty type alphabet (2n+m must be at least 1)");
        if (2 * n_ + m_ > 255)
            throw domain_error("alphabet: more than 255 types are not supported");
    }

    int arc_colors() const { return n_; }
    int edge_colors() const { return m_; }
    int size() const { return 2 * n_ + m_; }

    bool contains(int t) const { return t >= 1 && t <= size(); }
    bool is_arc_type(int t) const { return t >= 1 && t <= 2 * n_; }
    bool is_edge_type(int t) const { return t > 2 * n_ && t <= size(); }

    // The involution exchanging the two views of an arc and fixing edges.
    int bar(int t) const
    {
        if (!contains(t))
            throw domain_error("bar: type " + std::to_string(t) + " outside 1.." + std::to_string(size()));
        if (t > 2 * n_)
            return t;
        return (t % 2 == 0) ? t - 1 : t + 1;
    }

    bool operator==(const alphabet &) const = default;

private:
    int n_;
    int m_;
};

inline int bar(const alphabet &a, int t) { return a.bar(t); }

class type_perm {
public:
    type_perm() = default;

    // image[i] is the image of type i+1.
    explicit type_perm(std::vector<int> image) : image_(std::move(image))
    {
        std::vector<char> seen(image_.size() + 1, 0);
        for (int x : image_) {
            if (x < 1 || x > static_cast<int>(image_.size()) || seen[x])
                throw validation_error("permutation is not a bijection of 1.." + std::to_string(image_.size()));
            seen[x] = 1;
        }
    }

    static type_perm identity(int size)
    {
        std::vector<int> image(size);
        std::iota(image.begin(), image.end(), 1);
        return type_perm(std::move(image));
    }

    int size() const { return static_cast<int>(image_.size()); }
    int operator()(int t) const { return image_[t - 1]; }
    const std::vector<int> &image() const { return image_; }

    bool is_identity() const
    {
        for (int i = 0; i < size(); ++i)
            if (image_[i] != i + 1)
                return false;
        return true;
    }

    type_perm inverse() const
    {
        std::vector<int> inv(image_.size());
        for (int i = 0; i < size(); ++i)
            inv[image_[i] - 1] = i + 1;
        return type_perm(std::move(inv));
    }

    // (a * b)(t) = a(b(t))
    friend type_perm operator*(const type_perm &a, const type_perm &b)
    {
        std::vector<int> image(b.image_.size());
        for (int i = 0; i < b.size(); ++i)
            image[i] = a(b.image_[i]);
        return type_perm(std::move(image));
    }

    auto operator<=>(const type_perm &) const = default;
    bool operator==(const type_perm &) const = default;

    std::string to_string() const
    {
        std::string s = "[";
        for (int i = 0; i < size(); ++i) {
            if (i)
                s += ' ';
            s += std::to_string(image_[i]);
        }
        return s + "]";
    }

private:
    std::vector<int> image_;
};

struct orbit_partition {
    // Each orbit sorted ascending; orbits sorted by their least element.
    std::vector<std::vector<int>> orbits;

    std::size_t count() const { return orbits.size(); }

    std::size_t orbit_of(int t) const
    {
        for (std::size_t i = 0; i < orbits.size(); ++i)
            if (std::binary_search(orbits[i].begin(), orbits[i].end(), t))
                return i;
        throw domain_error("orbit_of: type " + std::to_string(t) + " not in any orbit");
    }

    std::string to_string() const
    {
        std::string s = "{";
        for (std::size_t i = 0; i < orbits.size(); ++i) {
            if (i)
                s += ',';
            s += '{';
            for (std::size_t j = 0; j < orbits[i].size(); ++j) {
                if (j)
                    s += ',';
                s += std::to_string(orbits[i][j]);
            }
            s += '}';
        }
        return s + "}";
    }
};

// A finite group of type permutations, stored as its full element list.
//
// Elements are sorted lexicographically by image array, so the identity is
// always element 0 and two groups with the same elements compare equal.
class switch_group {
public:
    static constexpr std::size_t default_size_cap = 10080;

    static switch_group closure(const alphabet &a, std::span<const type_perm> generators,
        std::size_t size_cap = default_size_cap)
    {
        for (const auto &g : generators)
            if (g.size() != a.size())
                throw domain_error("group_closure: generator " + g.to_string() + " is not on an alphabet of size "
                    + std::to_string(a.size()));

        std::set<type_perm> found{type_perm::identity(a.size())};
        std::vector<type_perm> frontier{type_perm::identity(a.size())};
        while (!frontier.empty()) {
            std::vector<type_perm> next;
            for (const auto &x : frontier)
                for (const auto &g : generators) {
                    auto y = g * x;
                    if (found.insert(y).second) {
                        if (found.size() > size_cap)
                            throw resource_error("group_closure: group order exceeds cap of " + std::to_string(size_cap));
                        next.push_back(std::move(y));
                    }
                }
            frontier = std::move(next);
        }
        return switch_group(a, std::vector<type_perm>(found.begin(), found.end()));
    }

    static switch_group closure(const alphabet &a, std::initializer_list<type_perm> generators,
        std::size_t size_cap = default_size_cap)
    {
        std::vector<type_perm> gens(generators);
        return closure(a, std::span<const type_perm>(gens), size_cap);
    }

    static switch_group trivial(const alphabet &a) { return closure(a, std::span<const type_perm>{}); }

    // The full symmetric group S_{2n+m}.
    static switch_group symmetric(const alphabet &a, std::size_t size_cap = default_size_cap)
    {
        int k = a.size();
        std::vector<type_perm> gens;
        if (k >= 2) {
            std::vector<int> swap(k), cycle(k);
            std::iota(swap.begin(), swap.end(), 1);
            std::swap(swap[0], swap[1]);
            for (int i = 0; i < k; ++i)
                cycle[i] = (i + 1) % k + 1;
            gens.emplace_back(swap);
            gens.emplace_back(cycle);
        }
        return closure(a, gens, size_cap);
    }

    const alphabet &types() const { return alphabet_; }
    std::size_t order() const { return elements_.size(); }
    std::size_t identity_index() const { return 0; }
    const type_perm &element(std::size_t i) const { return elements_[i]; }
    const std::vector<type_perm> &elements() const { return elements_; }

    // Index of element(a) * element(b).
    std::size_t multiply(std::size_t a, std::size_t b) const { return product_[a * order() + b]; }
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    int apply(std::size_t a, int t) const { return elements_[a](t); }

    std::optional<std::size_t> index_of(const type_perm &p) const
    {
        auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
        if (it == elements_.end() || *it != p)
            return std::nullopt;
        return static_cast<std::size_t>(it - elements_.begin());
    }

    bool contains(const type_perm &p) const { return index_of(p).has_value(); }

    bool is_abelian() const { return abelian_; }
    bool is_switch_commutative() const { return switch_commutative_; }

    bool operator==(const switch_group &o) const { return alphabet_ == o.alphabet_ && elements_ == o.elements_; }

private:
    switch_group(const alphabet &a, std::vector<type_perm> sorted_elements) :
        alphabet_(a), elements_(std::move(sorted_elements))
    {
        std::size_t q = elements_.size();
        product_.resize(q * q);
        inverse_.resize(q);
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = 0; j < q; ++j) {
                auto idx = index_of(elements_[i] * elements_[j]);
                if (!idx)
                    throw validation_error("switch_group: element set is not closed under composition");
                product_[i * q + j] = *idx;
                if (*idx == 0)
                    inverse_[i] = j;
            }

        abelian_ = true;
        for (std::size_t i = 0; i < q && abelian_; ++i)
            for (std::size_t j = i + 1; j < q && abelian_; ++j)
                if (product_[i * q + j] != product_[j * q + i])
                    abelian_ = false;

        // bar(tau(bar(sigma(t)))) == sigma(bar(tau(bar(t)))) for all sigma, tau, t.
        switch_commutative_ = true;
        const int k = alphabet_.size();
        for (std::size_t i = 0; i < q && switch_commutative_; ++i)
            for (std::size_t j = 0; j < q && switch_commutative_; ++j)
                for (int t = 1; t <= k; ++t) {
                    const auto &s = elements_[i];
                    const auto &u = elements_[j];
                    if (alphabet_.bar(u(alphabet_.bar(s(t)))) != s(alphabet_.bar(u(alphabet_.bar(t))))) {
                        switch_commutative_ = false;
                        break;
                    }
                }
    }

    alphabet alphabet_;
    std::vector<type_perm> elements_;
    std::vector<std::size_t> product_;
    std::vector<std::size_t> inverse_;
    bool abelian_ = true;
    bool switch_commutative_ = true;
};

inline switch_group group_closure(const alphabet &a, std::span<const type_perm> generators,
    std::size_t size_cap = switch_group::default_size_cap)
{
    return switch_group::closure(a, generators, size_cap);
}

inline bool is_abelian(const switch_group &g) { return g.is_abelian(); }
inline bool is_switch_commutative(const switch_group &g) { return g.is_switch_commutative(); }

inline orbit_partition orbits(const switch_group &g)
{
    const int k = g.types().size();
    std::vector<char> seen(k + 1, 0);
    orbit_partition result;
    for (int t = 1; t <= k; ++t) {
        if (seen[t])
            continue;
        std::vector<int> orbit;
        for (const auto &s : g.elements()) {
            int x = s(t);
            if (!seen[x]) {
                seen[x] = 1;
                orbit.push_back(x);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        result.orbits.push_back(std::move(orbit));
    }
    return result;
}

// Every orbit is closed under bar.
inline bool is_consistent(const switch_group &g)
{
    const auto &a = g.types();
    auto parts = orbits(g);
    for (const auto &orbit : parts.orbits)
        for (int t : orbit)
            if (!std::binary_search(orbit.begin(), orbit.end(), a.bar(t)))
                return false;
    return true;
}

// Abelian, edges go to edges and every arc pair {2c-1, 2c} goes onto an arc
// pair (with or without reversal).
inline bool is_lmw_style(const switch_group &g)
{
    if (!g.is_abelian())
        return false;
    const auto &a = g.types();
    for (const auto &s : g.elements()) {
        for (int t = 1; t <= a.size(); ++t)
            if (a.is_edge_type(t) != a.is_edge_type(s(t)))
                return false;
        for (int c = 1; c <= a.arc_colors(); ++c) {
            int x = s(2 * c - 1), y = s(2 * c);
            if ((x + 1) / 2 != (y + 1) / 2)
                return false;
        }
    }
    return true;
}

// All subgroups of g, each listed once, ordered by their sorted element lists.
inline std::vector<switch_group> subgroups(const switch_group &g)
{
    struct entry {
        std::vector<type_perm> generators;
    };
    std::map<std::vector<type_perm>, entry> found;
    std::vector<std::vector<type_perm>> queue;

    auto trivial = switch_group::trivial(g.types());
    found.emplace(trivial.elements(), entry{});
    queue.push_back(trivial.elements());

    while (!queue.empty()) {
        auto elements = std::move(queue.back());
        queue.pop_back();
        auto gens = found.at(elements).generators;
        for (const auto &x : g.elements()) {
            if (std::binary_search(elements.begin(), elements.end(), x))
                continue;
            auto extended = gens;
            extended.push_back(x);
            auto h = switch_group::closure(g.types(), extended);
            if (found.emplace(h.elements(), entry{extended}).second)
                queue.push_back(h.elements());
        }
    }

    std::vector<switch_group> result;
    result.reserve(found.size());
    for (const auto &[elements, e] : found)
        result.push_back(switch_group::closure(g.types(), e.generators));
    return result;
}

struct subgroup_split {
    switch_group subgroup;
    std::optional<switch_group> complement;
};

inline bool is_squarefree(std::size_t x)
{
    for (std::size_t p = 2; p * p <= x; ++p)
        if (x % (p * p) == 0)
            return false;
    return true;
}

// Validates that `elements` is a subgroup of g1 and looks for a complement
// L with L * g2 = g1 and L and g2 meeting only in the identity. The
// complement stands in for the quotient g1/g2.
inline subgroup_split subgroup_and_complement(const switch_group &g1, std::span<const type_perm> elements)
{
    std::set<type_perm> given(elements.begin(), elements.end());
    for (const auto &x : given)
        if (!g1.contains(x))
            throw domain_error("subgroup_and_complement: " + x.to_string() + " is not an element of the group");
    auto g2 = switch_group::closure(g1.types(), std::vector<type_perm>(given.begin(), given.end()));
    given.insert(type_perm::identity(g1.types().size()));
    if (g2.order() != given.size())
        throw domain_error("subgroup_and_complement: element set is not closed under composition");

    subgroup_split split{g2, std::nullopt};
    if (g1.order() % g2.order() != 0)
        return split;
    const std::size_t wanted = g1.order() / g2.order();
    for (auto &candidate : subgroups(g1)) {
        if (candidate.order() != wanted)
            continue;
        bool trivial_meet = true;
        for (std::size_t i = 1; i < candidate.order() && trivial_meet; ++i)
            if (g2.contains(candidate.element(i)))
                trivial_meet = false;
        if (trivial_meet) {
            split.complement = std::move(candidate);
            break;
        }
    }
    return split;
}

}
