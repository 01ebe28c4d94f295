#pragma once

#include "locell/abelian.hpp"
#include "locell/homology.hpp"
#include "locell/limits.hpp"
#include "locell/perm_group.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace locell {

// Subgroup generated by all elements of order exactly p.  It is normal,
// since the generating set is closed under conjugation.
PermGroup s_p(const PermGroup& g, std::int64_t p, const Limits& limits = {});

// Subgroup generated by all elements of p-power order (the identity aside);
// normal for the same reason.
PermGroup t_p(const PermGroup& g, std::int64_t p, const Limits& limits = {});

// Quotient by t_p: kills every p-element, leaving the prime-to-p content.
PermGroup nullify_p(const PermGroup& g, std::int64_t p, const Limits& limits = {});

// Quotient by the normal subgroup generated by all p-th powers: the largest
// exponent-p quotient.
PermGroup localize_p(const PermGroup& g, std::int64_t p, const Limits& limits = {});

// G/[G,G] as a permutation group.
PermGroup abelianize(const PermGroup& g, const Limits& limits = {});

// A curated central extension: cover/K == base for a central K with the
// given invariants, used to realize cellularization kernels.
struct CoverFact {
    std::string base_label;
    PermGroup base;
    std::vector<std::int64_t> kernel;
    std::string cover_label;
    PermGroup cover;
    std::string citation;
};

// Throws ValidationError unless the arithmetic checks out: the cover's
// center realizes exactly the kernel and the central quotient is the base.
void validate_cover_fact(const CoverFact& fact, const Limits& limits = {});

struct CellResult {
    PermGroup group;
    AbelianGroup kernel;      // central kernel of group -> s_p(input)
    std::string route;        // "socle" (kernel trivial) or "cover"
    std::string cover_label;  // set on the cover route
};

// Cellularization and its supporting data.  Owns a multiplier engine, so
// repeated queries against the same groups hit the cache.
class FunctorEngine {
public:
    explicit FunctorEngine(Limits limits = {}, std::vector<MultiplierFact> multipliers = {},
                           std::vector<CoverFact> covers = {});

    // The universal group built from cells of prime p: an extension of the
    // subgroup generated by order-p elements, with the away-from-p part of
    // its multiplier as central kernel.
    CellResult cellularize_p(const PermGroup& g, std::int64_t p);

    // Whether the natural comparison map is an isomorphism on g itself.
    bool is_cellular_p(const PermGroup& g, std::int64_t p);

    SchurEngine& schur() noexcept { return schur_; }
    const Limits& limits() const noexcept { return limits_; }
    const std::vector<CoverFact>& covers() const noexcept { return covers_; }

private:
    Limits limits_;
    SchurEngine schur_;
    std::vector<CoverFact> covers_;
};

} // namespace locell
