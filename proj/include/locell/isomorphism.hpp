#pragma once

#include "locell/abelian.hpp"
#include "locell/limits.hpp"
#include "locell/perm_group.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace locell {

// Cheap isomorphism invariants; equality is necessary but not sufficient.
struct GroupFingerprint {
    std::uint64_t order = 1;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> order_histogram;
    std::uint64_t center_order = 1;
    std::vector<std::int64_t> abelian_inv;
    std::int32_t derived_length = 0;

    bool operator==(const GroupFingerprint&) const = default;
    std::string to_string() const;
};

GroupFingerprint fingerprint(const PermGroup& g, const Limits& limits = {});

// Exact isomorphism test: invariant prefilter, then backtracking over
// generator images verified through the order of the diagonal subgroup.
// Throws CapError when either order exceeds limits.iso_cap.
bool is_isomorphic(const PermGroup& a, const PermGroup& b, const Limits& limits = {});

} // namespace locell
