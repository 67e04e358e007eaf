#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "typeset.hpp"

namespace switchhom {

// (u, v, t): v is a t-neighbour of u.
struct typed_edge {
    std::string u;
    std::string v;
    int t;
};

// An (n,m)-graph on a dense vertex range 0..order()-1 with string labels.
//
// adjacency(u, v) == t != 0 means v is a t-neighbour of u. The mirror
// adjacency(v, u) == bar(t) is maintained by every mutator, there are no
// loops and at most one adjacency per unordered pair.
class nm_graph {
public:
    explicit nm_graph(const alphabet &a) : alphabet_(a) {}

    nm_graph(const alphabet &a, std::vector<std::string> labels) : alphabet_(a), labels_(std::move(labels))
    {
        adj_.assign(labels_.size() * labels_.size(), 0);
        index_.reserve(labels_.size());
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i].empty())
                throw validation_error("graph: empty vertex label");
            if (!index_.emplace(labels_[i], i).second)
                throw validation_error("graph: duplicate vertex label '" + labels_[i] + "'");
        }
    }

    // Edgeless graph on vertices labelled 0..count-1.
    static nm_graph edgeless(const alphabet &a, std::size_t count)
    {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < count; ++i)
            labels.push_back(std::to_string(i));
        return nm_graph(a, std::move(labels));
    }

    const alphabet &types() const { return alphabet_; }
    std::size_t order() const { return labels_.size(); }
    const std::string &label(std::size_t v) const { return labels_[v]; }
    const std::vector<std::string> &labels() const { return labels_; }

    std::size_t index_of(const std::string &label) const
    {
        auto it = index_.find(label);
        if (it == index_.end())
            throw domain_error("graph: unknown vertex '" + label + "'");
        return it->second;
    }

    bool has_vertex(const std::string &label) const { return index_.count(label) != 0; }

    int adjacency(std::size_t u, std::size_t v) const { return adj_[u * order() + v]; }
    bool adjacent(std::size_t u, std::size_t v) const { return adjacency(u, v) != 0; }

    void connect(std::size_t u, std::size_t v, int t)
    {
        check_vertex(u);
        check_vertex(v);
        if (u == v)
            throw validation_error("graph: loop at '" + labels_[u] + "'");
        if (!alphabet_.contains(t))
            throw validation_error("graph: type " + std::to_string(t) + " out of range for ("
                + labels_[u] + ", " + labels_[v] + ")");
        if (adjacent(u, v))
            throw validation_error("graph: duplicate adjacency between '" + labels_[u] + "' and '" + labels_[v] + "'");
        put(u, v, t);
    }

    // Replaces an existing adjacency (or creates one).
    void retype(std::size_t u, std::size_t v, int t)
    {
        check_vertex(u);
        check_vertex(v);
        if (u == v || !alphabet_.contains(t))
            throw domain_error("graph: invalid retype");
        put(u, v, t);
    }

    void disconnect(std::size_t u, std::size_t v)
    {
        check_vertex(u);
        check_vertex(v);
        adj_[u * order() + v] = 0;
        adj_[v * order() + u] = 0;
    }

    std::vector<std::size_t> t_neighbors(std::size_t v, int t) const
    {
        check_vertex(v);
        if (!alphabet_.contains(t))
            throw domain_error("t_neighbors: type " + std::to_string(t) + " out of range");
        std::vector<std::size_t> out;
        for (std::size_t u = 0; u < order(); ++u)
            if (adjacency(v, u) == t)
                out.push_back(u);
        return out;
    }

    std::vector<std::size_t> neighbors(std::size_t v) const
    {
        std::vector<std::size_t> out;
        for (std::size_t u = 0; u < order(); ++u)
            if (adjacent(v, u))
                out.push_back(u);
        return out;
    }

    std::size_t degree(std::size_t v) const
    {
        std::size_t d = 0;
        for (std::size_t u = 0; u < order(); ++u)
            d += adjacent(v, u) ? 1 : 0;
        return d;
    }

    std::size_t adjacency_count() const
    {
        std::size_t c = 0;
        for (std::size_t u = 0; u < order(); ++u)
            for (std::size_t v = u + 1; v < order(); ++v)
                c += adjacent(u, v) ? 1 : 0;
        return c;
    }

    // Row-major adjacency bytes; equal iff the adjacency structure is equal.
    std::string adjacency_key() const { return std::string(adj_.begin(), adj_.end()); }

    bool same_adjacency(const nm_graph &o) const { return alphabet_ == o.alphabet_ && adj_ == o.adj_; }

    bool operator==(const nm_graph &o) const
    {
        return alphabet_ == o.alphabet_ && labels_ == o.labels_ && adj_ == o.adj_;
    }

private:
    void check_vertex(std::size_t v) const
    {
        if (v >= order())
            throw domain_error("graph: vertex index " + std::to_string(v) + " out of range");
    }

    void put(std::size_t u, std::size_t v, int t)
    {
        adj_[u * order() + v] = static_cast<std::uint8_t>(t);
        adj_[v * order() + u] = static_cast<std::uint8_t>(alphabet_.bar(t));
    }

    alphabet alphabet_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::uint8_t> adj_;
};

inline nm_graph build_graph(const alphabet &a, std::vector<std::string> vertices, std::span<const typed_edge> edges)
{
    nm_graph g(a, std::move(vertices));
    for (const auto &e : edges) {
        if (!g.has_vertex(e.u) || !g.has_vertex(e.v))
            throw validation_error("graph: adjacency (" + e.u + ", " + e.v + ", " + std::to_string(e.t)
                + ") names an unknown vertex");
        g.connect(g.index_of(e.u), g.index_of(e.v), e.t);
    }
    return g;
}

inline nm_graph build_graph(const alphabet &a, std::vector<std::string> vertices, std::initializer_list<typed_edge> edges)
{
    std::vector<typed_edge> list(edges);
    return build_graph(a, std::move(vertices), std::span<const typed_edge>(list));
}

inline std::vector<std::size_t> t_neighbors(const nm_graph &g, const std::string &v, int t)
{
    return g.t_neighbors(g.index_of(v), t);
}

// Vertices are kept in ascending index order.
inline nm_graph induced_subgraph(const nm_graph &g, std::vector<std::size_t> keep)
{
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    std::vector<std::string> labels;
    for (auto v : keep) {
        if (v >= g.order())
            throw domain_error("induced_subgraph: vertex index " + std::to_string(v) + " out of range");
        labels.push_back(g.label(v));
    }
    nm_graph h(g.types(), std::move(labels));
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = i + 1; j < keep.size(); ++j)
            if (int t = g.adjacency(keep[i], keep[j]))
                h.connect(i, j, t);
    return h;
}

inline nm_graph induced_subgraph(const nm_graph &g, const std::vector<std::string> &keep)
{
    std::vector<std::size_t> idx;
    for (const auto &l : keep)
        idx.push_back(g.index_of(l));
    return induced_subgraph(g, std::move(idx));
}

// G's vertices come first, then H's. Labels are kept when the two label sets
// are disjoint; otherwise every label is tagged "0:" or "1:".
inline nm_graph disjoint_union(const nm_graph &g, const nm_graph &h)
{
    if (!(g.types() == h.types()))
        throw domain_error("disjoint_union: alphabet mismatch");
    bool clash = false;
    for (const auto &l : h.labels())
        if (g.has_vertex(l))
            clash = true;
    std::vector<std::string> labels;
    for (const auto &l : g.labels())
        labels.push_back(clash ? "0:" + l : l);
    for (const auto &l : h.labels())
        labels.push_back(clash ? "1:" + l : l);
    nm_graph u(g.types(), std::move(labels));
    const std::size_t off = g.order();
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = a + 1; b < g.order(); ++b)
            if (int t = g.adjacency(a, b))
                u.connect(a, b, t);
    for (std::size_t a = 0; a < h.order(); ++a)
        for (std::size_t b = a + 1; b < h.order(); ++b)
            if (int t = h.adjacency(a, b))
                u.connect(off + a, off + b, t);
    return u;
}

// Same graph with vertices renamed; relabel[i] is the new name of vertex i.
inline nm_graph relabeled(const nm_graph &g, std::vector<std::string> relabel)
{
    nm_graph h(g.types(), std::move(relabel));
    if (h.order() != g.order())
        throw domain_error("relabeled: label count mismatch");
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = a + 1; b < g.order(); ++b)
            if (int t = g.adjacency(a, b))
                h.connect(a, b, t);
    return h;
}

}
