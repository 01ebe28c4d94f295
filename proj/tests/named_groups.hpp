#pragma once

// Realizations of the named groups the tests keep coming back to.  Each
// builder is verified where it is defined the first time; later uses can
// rely on the REQUIREs having run in the same binary.

#include "locell/perm_group.hpp"
#include "locell/todd_coxeter.hpp"
#include "locell/words.hpp"

namespace testsupport {

// Binary tetrahedral group, order 24: the quaternions extended by an
// order-3 rotation.
inline locell::PermGroup sl23() {
    auto pres = locell::Presentation::parse("gens: a, b; rels: a^3 = b^3 = (a*b)^2");
    return locell::realize_presentation(pres);
}

// Binary icosahedral group, order 120.
inline locell::PermGroup sl25() {
    auto pres = locell::Presentation::parse("gens: a, b; rels: a^5 = b^3 = (a*b)^2");
    return locell::realize_presentation(pres);
}

// Extraspecial 3-group of order 27 and exponent 3.
inline locell::PermGroup extraspecial27() {
    auto pres = locell::Presentation::parse("gens: a, b; rels: a^3, b^3, (a*b)^3, (a*b^-1)^3");
    return locell::realize_presentation(pres);
}

// Triple cover of the alternating group on six points, order 1080, acting
// on 18 points.  Derived from the hyperoval stabilizer in SL(3,4) on the
// nonzero vectors of F4^3, then compressed to a faithful orbit.
inline locell::PermGroup triple_cover_a6() {
    using locell::Permutation;
    auto a = Permutation::from_cycles("(0 14 17 3 13)(1 6 7 4 15)(2 10 12 5 8)", 18);
    auto b = Permutation::from_cycles("(0 14 16 15 2 10 11 13 1 6 9 8)(3 12 4 17 5 7)", 18);
    return locell::PermGroup({a, b}, 18);
}

} // namespace testsupport
