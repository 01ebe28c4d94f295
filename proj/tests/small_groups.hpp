#pragma once

// Every group of order at most 16, by explicit construction: 42 groups in
// all, with the classical counts per order 1,1,1,2,1,2,1,5,2,2,1,5,1,2,1,14.
// The catalogue test asserts the counts and pairwise non-isomorphism, so a
// wrong presentation here cannot slip through silently.

#include "locell/group_ops.hpp"
#include "locell/perm_group.hpp"
#include "locell/todd_coxeter.hpp"
#include "locell/words.hpp"

#include <string>
#include <utility>
#include <vector>

namespace locell::testcat {

struct SmallGroup {
    std::string name;
    PermGroup group;
};

inline std::vector<SmallGroup> groups_up_to_16() {
    auto pres = [](const std::string& text) {
        return realize_presentation(Presentation::parse(text));
    };
    const PermGroup c2 = PermGroup::cyclic(2);
    const PermGroup c4 = PermGroup::cyclic(4);

    std::vector<SmallGroup> cat;
    auto add = [&](std::string name, PermGroup g) {
        cat.push_back({std::move(name), std::move(g)});
    };

    add("1", PermGroup::trivial());
    add("C2", c2);
    add("C3", PermGroup::cyclic(3));
    add("C4", c4);
    add("C2^2", direct_product(c2, c2));
    add("C5", PermGroup::cyclic(5));
    add("C6", PermGroup::cyclic(6));
    add("S3", PermGroup::symmetric(3));
    add("C7", PermGroup::cyclic(7));

    add("C8", PermGroup::cyclic(8));
    add("C4xC2", direct_product(c4, c2));
    add("C2^3", direct_product(direct_product(c2, c2), c2));
    add("D4", PermGroup::dihedral(4));
    add("Q8", PermGroup::quaternion8());

    add("C9", PermGroup::cyclic(9));
    add("C3^2", direct_product(PermGroup::cyclic(3), PermGroup::cyclic(3)));
    add("C10", PermGroup::cyclic(10));
    add("D5", PermGroup::dihedral(5));
    add("C11", PermGroup::cyclic(11));

    add("C12", PermGroup::cyclic(12));
    add("C6xC2", direct_product(PermGroup::cyclic(6), c2));
    add("D6", PermGroup::dihedral(6));
    add("A4", PermGroup::alternating(4));
    add("Dic3", pres("gens: a, b; rels: a^6, b^2 = a^3, b*a*b^-1 = a^-1"));

    add("C13", PermGroup::cyclic(13));
    add("C14", PermGroup::cyclic(14));
    add("D7", PermGroup::dihedral(7));
    add("C15", PermGroup::cyclic(15));

    add("C16", PermGroup::cyclic(16));
    add("C8xC2", direct_product(PermGroup::cyclic(8), c2));
    add("C4^2", direct_product(c4, c4));
    add("C4xC2^2", direct_product(direct_product(c4, c2), c2));
    add("C2^4", direct_product(direct_product(c2, c2), direct_product(c2, c2)));
    add("D8", PermGroup::dihedral(8));
    add("Q16", pres("gens: a, b; rels: a^8, b^2 = a^4, b*a*b^-1 = a^-1"));
    add("SD16", pres("gens: a, b; rels: a^8, b^2, b*a*b^-1 = a^3"));
    add("M16", pres("gens: a, b; rels: a^8, b^2, b*a*b^-1 = a^5"));
    add("D4xC2", direct_product(PermGroup::dihedral(4), c2));
    add("Q8xC2", direct_product(PermGroup::quaternion8(), c2));
    add("C4:C4", pres("gens: a, b; rels: a^4, b^4, b*a*b^-1 = a^-1"));
    add("D4oC4", pres("gens: a, b, c; rels: a^4, b^2, b*a*b^-1 = a^-1, "
                      "c^2 = a^2, c*a*c^-1 = a, c*b*c^-1 = b"));
    add("C2^2:C4", pres("gens: a, b, c; rels: a^2, b^2, a*b*a^-1*b^-1, c^4, "
                        "c*a*c^-1 = b, c*b*c^-1 = a"));
    return cat;
}

} // namespace locell::testcat
