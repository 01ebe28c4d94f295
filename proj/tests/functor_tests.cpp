#include "doctest.h"

#include "locell/abelian.hpp"
#include "locell/errors.hpp"
#include "locell/functors.hpp"
#include "locell/group_ops.hpp"
#include "locell/isomorphism.hpp"

#include "named_groups.hpp"

using namespace locell;
using testsupport::extraspecial27;
using testsupport::sl23;
using testsupport::sl25;
using testsupport::triple_cover_a6;

TEST_CASE("subgroup generated by order-p elements") {
    CHECK(s_p(PermGroup::symmetric(4), 2).order() == 24);
    CHECK(s_p(PermGroup::symmetric(4), 3).order() == 12);
    CHECK(s_p(PermGroup::symmetric(4), 5).is_trivial());
    CHECK(s_p(PermGroup::cyclic(6), 2).order() == 2);
    CHECK(s_p(PermGroup::cyclic(6), 3).order() == 3);
    // The quaternion group hides its only involution in the center.
    CHECK(s_p(PermGroup::quaternion8(), 2).order() == 2);
    CHECK(s_p(PermGroup::dihedral(4), 2).order() == 8);
    for (std::int64_t p : {2, 3, 5})
        CHECK(s_p(PermGroup::alternating(5), p).order() == 60);
    CHECK_THROWS_AS((void)s_p(PermGroup::symmetric(3), 4), DomainError);
}

TEST_CASE("subgroup generated by p-power torsion and its quotient") {
    PermGroup c12 = PermGroup::cyclic(12);
    CHECK(t_p(c12, 2).order() == 4);
    CHECK(t_p(c12, 3).order() == 3);
    CHECK(abelian_invariants(nullify_p(c12, 2)) == AbelianGroup::from_orders({3}));
    CHECK(abelian_invariants(nullify_p(c12, 3)) == AbelianGroup::from_orders({4}));

    CHECK(nullify_p(PermGroup::symmetric(4), 2).is_trivial());
    CHECK(nullify_p(PermGroup::symmetric(4), 3).order() == 2);
    CHECK(nullify_p(PermGroup::alternating(5), 5).is_trivial());
    // A prime not dividing the order nullifies nothing.
    CHECK(nullify_p(PermGroup::alternating(5), 7).order() == 60);
}

TEST_CASE("exponent-p localization on finite groups") {
    CHECK(localize_p(PermGroup::symmetric(3), 3).is_trivial());
    CHECK(abelian_invariants(localize_p(PermGroup::alternating(4), 3)) ==
          AbelianGroup::from_orders({3}));
    CHECK(abelian_invariants(localize_p(PermGroup::quaternion8(), 2)) ==
          AbelianGroup::from_orders({2, 2}));
    CHECK(abelian_invariants(localize_p(PermGroup::cyclic(12), 2)) ==
          AbelianGroup::from_orders({2}));
    CHECK(abelian_invariants(localize_p(PermGroup::cyclic(12), 3)) ==
          AbelianGroup::from_orders({3}));
}

TEST_CASE("abelianization as a permutation group") {
    CHECK(abelianize(PermGroup::symmetric(4)).order() == 2);
    CHECK(abelianize(PermGroup::alternating(5)).is_trivial());
    CHECK(abelian_invariants(abelianize(PermGroup::quaternion8())) ==
          AbelianGroup::from_orders({2, 2}));
    CHECK(abelianize(sl23()).order() == 3);
}

TEST_CASE("cover facts validate or are rejected") {
    CoverFact good{"A4", PermGroup::alternating(4), {2}, "SL23", sl23(), "binary tetrahedral"};
    CHECK_NOTHROW(validate_cover_fact(good));

    CoverFact bad_kernel = good;
    bad_kernel.kernel = {3};
    CHECK_THROWS_AS(validate_cover_fact(bad_kernel), ValidationError);

    CoverFact bad_base = good;
    bad_base.base = PermGroup::dihedral(6);     // also order 12
    CHECK_THROWS_AS(validate_cover_fact(bad_base), ValidationError);

    CoverFact a6{"A6", PermGroup::alternating(6), {3}, "3A6", triple_cover_a6(), "triple cover"};
    CHECK_NOTHROW(validate_cover_fact(a6));

    CoverFact a5{"A5", PermGroup::alternating(5), {2}, "SL25", sl25(), "binary icosahedral"};
    CHECK_NOTHROW(validate_cover_fact(a5));
}

namespace {

FunctorEngine full_engine() {
    std::vector<MultiplierFact> mult;
    mult.push_back({"A6", PermGroup::alternating(6), {6}, "classical"});
    mult.push_back({"SL25", sl25(), {}, "superperfect"});
    mult.push_back({"3A6", triple_cover_a6(), {2}, "classical"});
    std::vector<CoverFact> covers;
    covers.push_back({"A4", PermGroup::alternating(4), {2}, "SL23", sl23(), "binary tetrahedral"});
    covers.push_back({"A5", PermGroup::alternating(5), {2}, "SL25", sl25(), "binary icosahedral"});
    covers.push_back({"A6", PermGroup::alternating(6), {3}, "3A6", triple_cover_a6(), "triple cover"});
    return FunctorEngine({}, std::move(mult), std::move(covers));
}

} // namespace

TEST_CASE("cellularization at p") {
    FunctorEngine engine = full_engine();

    SUBCASE("trivial kernel collapses to the order-p part") {
        auto r = engine.cellularize_p(PermGroup::alternating(5), 2);
        CHECK(r.route == "socle");
        CHECK(r.kernel.is_trivial());
        CHECK(r.group.order() == 60);

        auto c6 = engine.cellularize_p(PermGroup::cyclic(6), 2);
        CHECK(c6.group.order() == 2);

        auto q8 = engine.cellularize_p(PermGroup::quaternion8(), 2);
        CHECK(q8.group.order() == 2);

        auto s4 = engine.cellularize_p(PermGroup::symmetric(4), 2);
        CHECK(s4.route == "socle");
        CHECK(s4.group.order() == 24);
    }

    SUBCASE("binary tetrahedral cover of the alternating group on 4 points") {
        auto r = engine.cellularize_p(PermGroup::alternating(4), 3);
        CHECK(r.route == "cover");
        CHECK(r.cover_label == "SL23");
        CHECK(r.kernel == AbelianGroup::from_orders({2}));
        CHECK(r.group.order() == 24);
        CHECK(is_isomorphic(r.group, sl23()));
    }

    SUBCASE("binary icosahedral cover at both odd primes") {
        for (std::int64_t p : {3, 5}) {
            CAPTURE(p);
            auto r = engine.cellularize_p(PermGroup::alternating(5), p);
            CHECK(r.route == "cover");
            CHECK(r.kernel == AbelianGroup::from_orders({2}));
            CHECK(r.group.order() == 120);
            CHECK(is_isomorphic(r.group, sl25()));
        }
    }

    SUBCASE("triple cover of the alternating group on 6 points") {
        auto r = engine.cellularize_p(PermGroup::alternating(6), 2);
        CHECK(r.route == "cover");
        CHECK(r.cover_label == "3A6");
        CHECK(r.kernel == AbelianGroup::from_orders({3}));
        CHECK(r.group.order() == 1080);
        CHECK(is_isomorphic(quotient(r.group, center(r.group)), PermGroup::alternating(6)));
    }

    SUBCASE("missing data fails loudly") {
        FunctorEngine bare;
        // Multiplier unavailable beyond the bar ceiling without a table row.
        CHECK_THROWS_AS((void)bare.cellularize_p(PermGroup::alternating(6), 2), CapError);

        // Multiplier known but no cover registered.
        FunctorEngine no_covers({}, {{"A6", PermGroup::alternating(6), {6}, "classical"}}, {});
        CHECK_THROWS_AS((void)no_covers.cellularize_p(PermGroup::alternating(6), 2),
                        DomainError);
    }
}

TEST_CASE("cellularity recognition") {
    FunctorEngine engine = full_engine();

    CHECK(engine.is_cellular_p(PermGroup::alternating(5), 2));
    CHECK(engine.is_cellular_p(direct_product(PermGroup::cyclic(2), PermGroup::cyclic(2)), 2));
    CHECK(engine.is_cellular_p(extraspecial27(), 3));
    CHECK(engine.is_cellular_p(sl23(), 3));
    CHECK(engine.is_cellular_p(sl25(), 3));
    CHECK(engine.is_cellular_p(triple_cover_a6(), 2));

    CHECK_FALSE(engine.is_cellular_p(PermGroup::symmetric(4), 3));
    CHECK_FALSE(engine.is_cellular_p(PermGroup::quaternion8(), 2));
    CHECK_FALSE(engine.is_cellular_p(PermGroup::cyclic(4), 2));
    CHECK_FALSE(engine.is_cellular_p(PermGroup::alternating(6), 2));
    CHECK_FALSE(engine.is_cellular_p(PermGroup::alternating(4), 3));
}

TEST_CASE("cellularization is idempotent on its own output") {
    FunctorEngine engine = full_engine();
    const std::pair<PermGroup, std::int64_t> cases[] = {
        {PermGroup::alternating(4), 3},
        {PermGroup::alternating(5), 2},
        {PermGroup::alternating(5), 3},
        {PermGroup::symmetric(4), 2},
        {PermGroup::quaternion8(), 2},
        {PermGroup::cyclic(6), 3},
    };
    for (const auto& [g, p] : cases) {
        CAPTURE(g.order());
        CAPTURE(p);
        auto once = engine.cellularize_p(g, p);
        CHECK(engine.is_cellular_p(once.group, p));
        auto twice = engine.cellularize_p(once.group, p);
        CHECK(twice.group.order() == once.group.order());
        CHECK(is_isomorphic(twice.group, once.group));
    }
}
