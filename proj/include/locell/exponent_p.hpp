#pragma once

#include "locell/limits.hpp"
#include "locell/perm_group.hpp"
#include "locell/words.hpp"

#include <cstdint>

namespace locell {

// The largest exponent-p quotient of the free group of the given rank,
// realized as a permutation group.  Works by saturating a presentation with
// p-th power relators of short words until coset enumeration closes and the
// result provably has exponent p; if no finite quotient is reached within
// limits.max_cosets this throws CapError, which for p >= 5 and rank >= 2 is
// the expected outcome on any feasible budget.
PermGroup exponent_p_quotient(std::uint32_t rank, std::uint64_t p, const Limits& limits = {});

// G / <g^p : g in G> for a finite group: the subgroup generated by all p-th
// powers is normal (conjugates of powers are powers), so this is a plain
// quotient.
PermGroup reduce_exponent_p_finite(const PermGroup& g, std::uint64_t p, const Limits& limits = {});

// True when every element satisfies x^p = 1.
bool has_exponent_p(const PermGroup& g, std::uint64_t p, const Limits& limits = {});

} // namespace locell
