#pragma once

// Plain-text formats for groups, graphs and witnesses, and a DOT emitter.
//
//   alphabet <n> <m>            nmgraph <n> <m>             witness <hom|iso>
//   perm <i1> ... <i_{2n+m}>    vertices <v1> <v2> ...      map <x> <y>
//                               adj <u> <v> <t>             switch <x> <k>
//                                                           end
//
// '#' starts a comment; blank lines are ignored.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "hom.hpp"
#include "switching.hpp"
#include "typeset.hpp"

namespace switchhom::io {

namespace detail {

struct line {
    std::size_t number;
    std::vector<std::string> words;
};

inline std::vector<line> tokenize(std::istream &in)
{
    std::vector<line> out;
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
        ++number;
        if (auto hash = text.find('#'); hash != std::string::npos)
            text.erase(hash);
        std::istringstream ss(text);
        line l{number, {}};
        for (std::string w; ss >> w;)
            l.words.push_back(w);
        if (!l.words.empty())
            out.push_back(std::move(l));
    }
    return out;
}

[[noreturn]] inline void fail(const std::string &what, std::size_t number, const std::string &msg)
{
    throw validation_error(what + ": line " + std::to_string(number) + ": " + msg);
}

inline int to_int(const std::string &what, const line &l, const std::string &word)
{
    try {
        std::size_t used = 0;
        long v = std::stol(word, &used);
        if (used != word.size() || v < -1'000'000 || v > 1'000'000)
            throw std::invalid_argument(word);
        return static_cast<int>(v);
    } catch (const std::logic_error &) {
        fail(what, l.number, "expected an integer, got '" + word + "'");
    }
}

inline alphabet header(const std::string &what, const std::vector<line> &lines, const char *keyword)
{
    if (lines.empty())
        throw validation_error(what + ": empty input");
    const auto &h = lines.front();
    if (h.words.size() != 3 || h.words[0] != keyword)
        fail(what, h.number, std::string("expected '") + keyword + " <n> <m>'");
    try {
        return alphabet(to_int(what, h, h.words[1]), to_int(what, h, h.words[2]));
    } catch (const validation_error &) {
        throw;
    } catch (const error &e) {
        fail(what, h.number, e.what());
    }
}

}

inline switch_group read_group(std::istream &in)
{
    const std::string what = "group";
    auto lines = detail::tokenize(in);
    auto a = detail::header(what, lines, "alphabet");
    std::vector<type_perm> gens;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto &l = lines[i];
        if (l.words[0] != "perm")
            detail::fail(what, l.number, "expected 'perm'");
        if (l.words.size() != static_cast<std::size_t>(a.size()) + 1)
            detail::fail(what, l.number, "perm needs " + std::to_string(a.size()) + " images");
        std::vector<int> image;
        for (std::size_t j = 1; j < l.words.size(); ++j)
            image.push_back(detail::to_int(what, l, l.words[j]));
        try {
            gens.emplace_back(std::move(image));
        } catch (const validation_error &e) {
            detail::fail(what, l.number, e.what());
        }
    }
    return switch_group::closure(a, gens);
}

// Every non-identity element as a generator line.
inline void write_group(std::ostream &out, const switch_group &g)
{
    out << "alphabet " << g.types().arc_colors() << ' ' << g.types().edge_colors() << '\n';
    for (std::size_t i = 0; i < g.order(); ++i) {
        const auto &e = g.element(i);
        if (e.is_identity())
            continue;
        out << "perm";
        for (int x : e.image())
            out << ' ' << x;
        out << '\n';
    }
}

inline nm_graph read_graph(std::istream &in)
{
    const std::string what = "graph";
    auto lines = detail::tokenize(in);
    auto a = detail::header(what, lines, "nmgraph");
    if (lines.size() < 2 || lines[1].words[0] != "vertices")
        detail::fail(what, lines.size() < 2 ? lines[0].number : lines[1].number, "expected 'vertices ...'");
    std::vector<std::string> labels(lines[1].words.begin() + 1, lines[1].words.end());
    nm_graph g = [&] {
        try {
            return nm_graph(a, labels);
        } catch (const validation_error &e) {
            detail::fail(what, lines[1].number, e.what());
        }
    }();
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto &l = lines[i];
        if (l.words[0] != "adj" || l.words.size() != 4)
            detail::fail(what, l.number, "expected 'adj <u> <v> <t>'");
        if (!g.has_vertex(l.words[1]) || !g.has_vertex(l.words[2]))
            detail::fail(what, l.number, "unknown vertex");
        try {
            g.connect(g.index_of(l.words[1]), g.index_of(l.words[2]), detail::to_int(what, l, l.words[3]));
        } catch (const validation_error &e) {
            detail::fail(what, l.number, e.what());
        }
    }
    return g;
}

// One line per adjacent pair u < v (by index).
inline void write_graph(std::ostream &out, const nm_graph &g)
{
    out << "nmgraph " << g.types().arc_colors() << ' ' << g.types().edge_colors() << '\n';
    out << "vertices";
    for (const auto &l : g.labels())
        out << ' ' << l;
    out << '\n';
    for (std::size_t u = 0; u < g.order(); ++u)
        for (std::size_t v = u + 1; v < g.order(); ++v)
            if (int t = g.adjacency(u, v))
                out << "adj " << g.label(u) << ' ' << g.label(v) << ' ' << t << '\n';
}

inline std::string to_string(const nm_graph &g)
{
    std::ostringstream ss;
    write_graph(ss, g);
    return ss.str();
}

inline void write_witness(std::ostream &out, const char *kind, const nm_graph &g, const nm_graph &h,
    const std::vector<std::size_t> &vertex_map, const switch_assignment &assignment)
{
    out << "witness " << kind << '\n';
    for (std::size_t x = 0; x < g.order(); ++x)
        out << "map " << g.label(x) << ' ' << h.label(vertex_map[x]) << '\n';
    for (std::size_t x = 0; x < g.order(); ++x)
        out << "switch " << g.label(x) << ' ' << assignment[x] << '\n';
    out << "end\n";
}

struct parsed_witness {
    std::string kind;
    std::vector<std::size_t> vertex_map;
    switch_assignment assignment;
};

// Labels are resolved against g (sources) and h (images); every source
// vertex needs one map line and one switch line.
inline parsed_witness read_witness(std::istream &in, const nm_graph &g, const nm_graph &h, const switch_group &group)
{
    const std::string what = "witness";
    auto lines = detail::tokenize(in);
    if (lines.empty() || lines[0].words.size() != 2 || lines[0].words[0] != "witness"
        || (lines[0].words[1] != "hom" && lines[0].words[1] != "iso"))
        throw validation_error("witness: expected 'witness hom' or 'witness iso'");
    parsed_witness w{lines[0].words[1], std::vector<std::size_t>(g.order()), switch_assignment::identity(g.order())};
    std::vector<char> mapped(g.order(), 0), switched(g.order(), 0);
    bool ended = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto &l = lines[i];
        if (ended)
            detail::fail(what, l.number, "content after 'end'");
        if (l.words[0] == "end" && l.words.size() == 1) {
            ended = true;
            continue;
        }
        if (l.words.size() != 3 || (l.words[0] != "map" && l.words[0] != "switch"))
            detail::fail(what, l.number, "expected 'map <x> <y>' or 'switch <x> <k>'");
        if (!g.has_vertex(l.words[1]))
            detail::fail(what, l.number, "unknown source vertex '" + l.words[1] + "'");
        auto x = g.index_of(l.words[1]);
        if (l.words[0] == "map") {
            if (!h.has_vertex(l.words[2]))
                detail::fail(what, l.number, "unknown target vertex '" + l.words[2] + "'");
            if (mapped[x]++)
                detail::fail(what, l.number, "vertex mapped twice");
            w.vertex_map[x] = h.index_of(l.words[2]);
        } else {
            int k = detail::to_int(what, l, l.words[2]);
            if (k < 0 || static_cast<std::size_t>(k) >= group.order())
                detail::fail(what, l.number, "element index out of range");
            if (switched[x]++)
                detail::fail(what, l.number, "vertex switched twice");
            w.assignment.element[x] = static_cast<std::size_t>(k);
        }
    }
    if (!ended)
        throw validation_error("witness: missing 'end'");
    for (std::size_t x = 0; x < g.order(); ++x)
        if (!mapped[x] || !switched[x])
            throw validation_error("witness: vertex '" + g.label(x) + "' lacks a map or switch line");
    return w;
}

inline std::string quoted(const std::string &s)
{
    std::string r = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            r += '\\';
        r += c;
    }
    return r + '"';
}

// Arcs point from tail to head with their colour; edges are undirected and
// labelled by edge colour.
inline void write_dot(std::ostream &out, const nm_graph &g)
{
    const int n = g.types().arc_colors();
    out << "digraph G {\n";
    for (const auto &l : g.labels())
        out << "  " << quoted(l) << ";\n";
    for (std::size_t u = 0; u < g.order(); ++u)
        for (std::size_t v = u + 1; v < g.order(); ++v) {
            int t = g.adjacency(u, v);
            if (!t)
                continue;
            if (t > 2 * n) {
                out << "  " << quoted(g.label(u)) << " -> " << quoted(g.label(v)) << " [dir=none, label=\"" << t - 2 * n
                    << "\"];\n";
            } else {
                bool forward = t % 2 == 0;
                auto tail = forward ? u : v, head = forward ? v : u;
                out << "  " << quoted(g.label(tail)) << " -> " << quoted(g.label(head)) << " [colorscheme=set19, color="
                    << (t - 1) / 2 % 9 + 1 << ", label=\"" << (t + 1) / 2 << "\"];\n";
            }
        }
    out << "}\n";
}

template <class F>
auto with_file(const std::string &path, F &&read)
{
    std::ifstream in(path);
    if (!in)
        throw validation_error("cannot open '" + path + "'");
    return read(in);
}

inline nm_graph load_graph(const std::string &path)
{
    return with_file(path, [](std::istream &in) { return read_graph(in); });
}

inline switch_group load_group(const std::string &path)
{
    return with_file(path, [](std::istream &in) { return read_group(in); });
}

}
