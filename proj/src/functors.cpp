#include "locell/functors.hpp"

#include "locell/errors.hpp"
#include "locell/exponent_p.hpp"
#include "locell/group_ops.hpp"
#include "locell/isomorphism.hpp"

#include <utility>

namespace locell {

namespace {

void require_prime(std::int64_t p) {
    if (p < 2) throw DomainError("prime expected, got " + std::to_string(p));
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw DomainError("prime expected, got " + std::to_string(p));
}

} // namespace

PermGroup s_p(const PermGroup& g, std::int64_t p, const Limits& limits) {
    require_prime(p);
    auto gens = elements_of_order(g, static_cast<std::uint64_t>(p), limits);
    if (gens.empty()) return PermGroup::trivial(g.degree());
    return PermGroup(std::move(gens), g.degree());
}

PermGroup t_p(const PermGroup& g, std::int64_t p, const Limits& limits) {
    require_prime(p);
    auto gens = elements_of_p_power_order(g, static_cast<std::uint64_t>(p), limits);
    if (gens.empty()) return PermGroup::trivial(g.degree());
    return PermGroup(std::move(gens), g.degree());
}

PermGroup nullify_p(const PermGroup& g, std::int64_t p, const Limits& limits) {
    return quotient(g, t_p(g, p, limits), limits);
}

PermGroup localize_p(const PermGroup& g, std::int64_t p, const Limits& limits) {
    require_prime(p);
    return reduce_exponent_p_finite(g, static_cast<std::uint64_t>(p), limits);
}

PermGroup abelianize(const PermGroup& g, const Limits& limits) {
    return realize_abelian(abelian_invariants(g, limits));
}

void validate_cover_fact(const CoverFact& fact, const Limits& limits) {
    const std::string name =
        "cover '" + (fact.cover_label.empty() ? fact.base_label : fact.cover_label) + "'";
    const std::uint64_t kernel_order = AbelianGroup::from_orders(fact.kernel).order();
    if (fact.cover.order() != fact.base.order() * kernel_order)
        throw ValidationError(name + ": order mismatch");
    PermGroup z = center(fact.cover, limits);
    if (!(abelian_invariants(z, limits) == AbelianGroup::from_orders(fact.kernel)))
        throw ValidationError(name + ": center does not realize the kernel");
    if (!is_isomorphic(quotient(fact.cover, z, limits), fact.base, limits))
        throw ValidationError(name + ": central quotient is not the base group");
}

FunctorEngine::FunctorEngine(Limits limits, std::vector<MultiplierFact> multipliers,
                             std::vector<CoverFact> covers)
    : limits_(limits), schur_(limits, std::move(multipliers)), covers_(std::move(covers)) {
    for (const auto& fact : covers_) validate_cover_fact(fact, limits_);
}

CellResult FunctorEngine::cellularize_p(const PermGroup& g, std::int64_t p) {
    PermGroup s = s_p(g, p, limits_);
    AbelianGroup kernel = schur_.multiplier(s).away_from_p(p);
    if (kernel.is_trivial()) return {std::move(s), std::move(kernel), "socle", ""};

    for (const auto& fact : covers_) {
        if (!(AbelianGroup::from_orders(fact.kernel) == kernel)) continue;
        if (fact.base.order() != s.order()) continue;
        if (!is_isomorphic(fact.base, s, limits_)) continue;
        // The universal property needs the extension itself to be built out
        // of order-p elements; check rather than trust.
        if (s_p(fact.cover, p, limits_).order() != fact.cover.order())
            throw ValidationError("cover '" + fact.cover_label +
                                  "' is not generated by its elements of order " +
                                  std::to_string(p));
        return {fact.cover, std::move(kernel), "cover", fact.cover_label};
    }
    throw DomainError("no registered central extension of a group of order " +
                      std::to_string(s.order()) + " by " + kernel.to_string() +
                      "; extend the cover registry");
}

bool FunctorEngine::is_cellular_p(const PermGroup& g, std::int64_t p) {
    if (s_p(g, p, limits_).order() != g.order()) return false;
    return schur_.multiplier(g).away_from_p(p).is_trivial();
}

} // namespace locell
