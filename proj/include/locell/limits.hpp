#pragma once

#include <cstdint>

namespace locell {

// Central knobs for every potentially expensive computation.  Defaults are
// tuned so the full test battery runs in minutes on one core; callers can
// raise them explicitly when they know what they are doing.
struct Limits {
    // Largest permutation degree a constructed group may act on.
    std::uint32_t degree_cap = 5000;

    // Largest group order for which full element enumeration is allowed.
    std::uint64_t element_cap = 1'000'000;

    // Largest group order fed to the bar-resolution multiplier computation.
    // The chain groups grow cubically, so this stays small.
    std::uint64_t bar_cap = 60;

    // Largest group order for the cocycle-side multiplier computation.
    std::uint64_t dual_cap = 24;

    // Largest group order for which backtracking isomorphism search runs;
    // beyond it only invariant fingerprints are compared.
    std::uint64_t iso_cap = 2000;

    // Coset table ceiling for coset enumeration.
    std::uint32_t max_cosets = 1'000'000;

    // Bound on rewriting steps for a single symbolic reduction.
    std::uint32_t rewrite_bound = 32;

    // Orbit exploration ceilings.
    std::uint32_t orbit_node_cap = 2000;
    std::uint32_t orbit_depth_cap = 6;

    // Seed for any randomized tie-breaking; fixed seed means byte-identical
    // reports.
    std::uint64_t seed = 0;
};

} // namespace locell
