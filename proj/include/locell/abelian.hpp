#pragma once

#include "locell/limits.hpp"
#include "locell/perm_group.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace locell {

// A finite abelian group in invariant factor form: Z/d1 x Z/d2 x ... with
// d1 | d2 | ... and every di > 1.  The empty list is the trivial group.
class AbelianGroup {
public:
    AbelianGroup() = default;
    // Normalizes an arbitrary list of cyclic orders into invariant factors.
    static AbelianGroup from_orders(const std::vector<std::int64_t>& orders);

    const std::vector<std::int64_t>& invariants() const noexcept { return inv_; }
    std::uint64_t order() const;
    bool is_trivial() const noexcept { return inv_.empty(); }

    // Primary decomposition: prime -> descending prime-power exponents.
    std::map<std::int64_t, std::vector<std::uint32_t>> primary() const;

    // Subgroup of elements x with x^p = 1: an elementary abelian p-group.
    AbelianGroup socle_p(std::int64_t p) const;
    // p-primary part and its complement.
    AbelianGroup primary_part(std::int64_t p) const;
    AbelianGroup away_from_p(std::int64_t p) const;
    // Largest exponent-p quotient, A/pA.
    AbelianGroup mod_p(std::int64_t p) const;

    std::string to_string() const;              // e.g. "C2 x C6", trivial "1"

    bool operator==(const AbelianGroup& other) const noexcept { return inv_ == other.inv_; }

private:
    std::vector<std::int64_t> inv_;
};

// Invariant factors of G/[G,G] computed from the relation lattice of the
// abelianized Cayley graph.
AbelianGroup abelian_invariants(const PermGroup& g, const Limits& limits = {});

// Realize a finite abelian group as a permutation group (product of cycles).
PermGroup realize_abelian(const AbelianGroup& a);

} // namespace locell
