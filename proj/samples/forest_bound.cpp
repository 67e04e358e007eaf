// Builds the forest target for a few groups and maps random forests into it.

#include <iostream>

#include "switchhom/switchhom.hpp"

using namespace switchhom;

namespace {

void report(const char *name, const switch_group &g)
{
    auto r = forest_theorem_check(g, 100, 2024);
    std::cout << name << ": k=" << r.k << " bound=" << r.bound << " mapped " << r.mapped << '/' << r.trials;
    if (r.witness_chromatic)
        std::cout << ", witness needs " << *r.witness_chromatic << " colours";
    std::cout << '\n';
}

}

int main()
{
    alphabet a10(1, 0), a02(0, 2), a11(1, 1);
    report("push on (1,0)", switch_group::closure(a10, {type_perm({2, 1})}));
    report("trivial on (1,0)", switch_group::trivial(a10));
    report("colour swap on (0,2)", switch_group::closure(a02, {type_perm({2, 1})}));
    report("trivial on (0,2)", switch_group::trivial(a02));
    report("C3 on (1,1)", switch_group::closure(a11, {type_perm({2, 3, 1})}));

    auto target = build_forest_target(switch_group::trivial(a10));
    std::cout << "\ntarget for the trivial group on (1,0):\n";
    io::write_dot(std::cout, target.graph);
}
