// Switching an arc, deciding homomorphisms and computing a core.

#include <iostream>

#include "switchhom/switchhom.hpp"

using namespace switchhom;

int main()
{
    alphabet oriented(1, 0);
    auto push = switch_group::closure(oriented, {type_perm({2, 1})});

    auto path = build_graph(oriented, {"a", "b", "c"}, {{"a", "b", 2}, {"b", "c", 2}});
    auto arc = build_graph(oriented, {"x", "y"}, {{"x", "y", 2}});

    // A directed path a -> b -> c does not fold onto one arc, but pushing
    // a single vertex reverses one of its arcs and then it does.
    std::cout << "plain hom to an arc: " << (plain_hom(path, arc) ? "yes" : "no") << '\n';
    if (auto w = gamma_hom(path, arc, push)) {
        std::cout << "push hom to an arc: yes\n";
        for (std::size_t v = 0; v < path.order(); ++v)
            std::cout << "  " << path.label(v) << " -> " << arc.label(w->vertex_map[v]) << " (switch "
                      << w->assignment[v] << ")\n";
    }

    auto r = rho(arc, push);
    std::cout << "rho of an arc has " << r.graph.order() << " vertices and " << r.graph.adjacency_count()
              << " arcs\n";

    auto core = gamma_core(path, push);
    std::cout << "core of the path:\n";
    io::write_graph(std::cout, core.core);
}
