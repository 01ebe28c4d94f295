#pragma once

#include "locell/limits.hpp"
#include "locell/perm_group.hpp"
#include "locell/words.hpp"

#include <cstdint>
#include <vector>

namespace locell {

// Result of a successful coset enumeration: the transitive action of the
// presented group on the cosets of the chosen subgroup.  Coset 0 is the
// subgroup itself.
struct CosetTable {
    std::uint32_t index = 0;
    // action[g][c] = image of coset c under generator g.
    std::vector<std::vector<std::uint32_t>> action;
};

// Relator-driven coset enumeration (HLT with immediate deductions and eager
// coincidence handling).  Throws CapError when the table would outgrow
// limits.max_cosets; for a presentation of an infinite group with a finite
// index subgroup this still terminates, otherwise the cap fires.
CosetTable coset_enumeration(const Presentation& p,
                             const std::vector<Word>& subgroup_gens,
                             const Limits& limits = {});

// The permutation group generated by the enumeration's generator actions.
// Over the trivial subgroup this is the regular representation, so the
// presented group's order equals the coset count; the table is also checked
// against every relator before returning.
PermGroup coset_action(const CosetTable& table);

// Order of the presented finite group (enumeration over the trivial
// subgroup).
std::uint64_t presentation_order(const Presentation& p, const Limits& limits = {});

// Realize the presented group as a permutation group: regular action, then
// degree reduction.  Degree then order are guarded by the limits.
PermGroup realize_presentation(const Presentation& p, const Limits& limits = {});

} // namespace locell
