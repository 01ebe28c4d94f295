#pragma once

#include "locell/limits.hpp"
#include "locell/perm_group.hpp"

#include <cstdint>
#include <vector>

namespace locell {

// Smallest normal subgroup of g containing the given elements.
PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& elems);

// Derived subgroup [G, G] as the normal closure of generator commutators.
PermGroup derived_subgroup(const PermGroup& g);

// Successive derived subgroups until stable; returns the derived length for
// solvable groups and -1 when the series stabilizes above the identity.
std::int32_t derived_length(const PermGroup& g);

// Lower central series G = g1 >= g2 >= ...; stops when stable.  Returns the
// series including G itself.
std::vector<PermGroup> lower_central_series(const PermGroup& g, std::size_t max_terms = 64);

// Nilpotency class, or nullopt-like -1 if the series does not reach 1 within
// max_terms.  Class 0 is the trivial group.
std::int32_t nilpotency_class(const PermGroup& g, std::size_t max_terms = 64);

bool is_abelian(const PermGroup& g);

// Center computed by elementwise scan (order <= limits.element_cap).
PermGroup center(const PermGroup& g, const Limits& limits = {});

// True when n is normal in g (preconditions checked).
bool is_normal_subgroup(const PermGroup& g, const PermGroup& n);

// G/N as a permutation group on the cosets of N, with canonical coset
// representatives so the construction is deterministic.  N trivial returns g
// unchanged; the coset count must stay within limits.degree_cap.
PermGroup quotient(const PermGroup& g, const PermGroup& n, const Limits& limits = {});

// Direct product acting on the disjoint union of the two point sets.
PermGroup direct_product(const PermGroup& a, const PermGroup& b);

// Elements whose order is exactly p, or a power of p (p prime).  Exhaustive
// scan, guarded by limits.element_cap.
std::vector<Permutation> elements_of_order(const PermGroup& g, std::uint64_t n, const Limits& limits = {});
std::vector<Permutation> elements_of_p_power_order(const PermGroup& g, std::uint64_t p, const Limits& limits = {});

// Multiset of element orders as (order, count) pairs, ascending.
std::vector<std::pair<std::uint64_t, std::uint64_t>> element_order_histogram(const PermGroup& g, const Limits& limits = {});

// Restrict the action to fewer orbits when that loses no elements; the
// result is isomorphic to g with a possibly much smaller degree.
PermGroup reduce_degree(const PermGroup& g);

bool is_prime(std::uint64_t n);

} // namespace locell
