#include "doctest.h"

#include "locell/errors.hpp"
#include "locell/functors.hpp"
#include "locell/isomorphism.hpp"
#include "locell/registry.hpp"
#include "locell/symbolic.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

using namespace locell;

namespace {

const SymPrime P = SymPrime::large();

SymGroup free_prod() { return SymGroup::free_product_cp(P, 2); }
SymGroup burn() { return SymGroup::burnside(P, 2); }
SymGroup fp_omega() { return SymGroup::fp_vector_space(P, Rank::omega()); }
SymGroup ab_omega() { return SymGroup::free_abelian(Rank::omega()); }

// cell_p of the Burnside group: central extension by its multiplier.
SymGroup cell_b() { return SymGroup::central_ext(ab_omega(), burn()); }

// Its localization: the split product.
SymGroup loc_cell_b() { return SymGroup::product(fp_omega(), burn()); }

// A random in-calculus term of bounded depth, for determinism checks.
SymGroup random_term(std::mt19937& rng, int depth) {
    auto roll = [&](std::uint32_t n) { return static_cast<std::uint32_t>(rng() % n); };
    if (depth == 0 || roll(3) == 0) {
        switch (roll(6)) {
        case 0: return SymGroup::trivial();
        case 1: return SymGroup::free_product_cp(P, 1 + roll(3));
        case 2: return SymGroup::burnside(P, 1 + roll(3));
        case 3:
            return SymGroup::free_abelian(roll(2) ? Rank::omega() : Rank::of(1 + roll(4)));
        case 4:
            return SymGroup::fp_vector_space(P, roll(2) ? Rank::omega() : Rank::of(1 + roll(4)));
        default: return SymGroup::burnside(SymPrime::small(2 + roll(2)), 2);
        }
    }
    if (roll(2) == 0) {
        SymGroup kernel = roll(2) ? SymGroup::free_abelian(Rank::omega())
                                  : SymGroup::fp_vector_space(P, Rank::of(1 + roll(3)));
        return SymGroup::central_ext(std::move(kernel), random_term(rng, depth - 1));
    }
    return SymGroup::product(random_term(rng, depth - 1), random_term(rng, depth - 1));
}

// Runs a rewrite and captures the outcome, so two runs can be compared
// even when they throw.
template <typename Fn>
std::pair<int, std::string> outcome(Fn&& fn) {
    try {
        return {0, fn().to_string()};
    } catch (const NoRuleError& e) {
        return {1, e.what()};
    } catch (const CapError& e) {
        return {2, e.what()};
    }
}

} // namespace

TEST_CASE("prime regimes and ranks") {
    CHECK(SymPrime::from_value(2) == SymPrime::small(2));
    CHECK(SymPrime::from_value(3) == SymPrime::small(3));
    CHECK(SymPrime::from_value(2).value() == 2);
    CHECK(SymPrime::from_value(3).to_string() == "3");
    CHECK(SymPrime::large().to_string() == "p");
    CHECK(SymPrime::large().is_large());

    // Any prime past the Adian bound names the same indeterminate.
    CHECK(SymPrime::from_value(673) == SymPrime::large());
    CHECK(SymPrime::from_value(101183) == SymPrime::large());
    CHECK(SymPrime::small(2) != SymPrime::small(3));
    CHECK(SymPrime::small(2) != SymPrime::large());

    CHECK_THROWS_AS(SymPrime::large().value(), DomainError);
    CHECK_THROWS_AS(SymPrime::small(5), DomainError);
    CHECK_THROWS_AS(SymPrime::from_value(1), DomainError);
    CHECK_THROWS_AS(SymPrime::from_value(4), DomainError);
    CHECK_THROWS_AS(SymPrime::from_value(665), DomainError);  // 5 * 7 * 19
    for (std::int64_t p : {5, 7, 11, 97, 641, 661})
        CHECK_THROWS_WITH_AS(SymPrime::from_value(p),
                             ("prime " + std::to_string(p) +
                              " is in the unknown regime: the exponent-p calculus covers 2, 3, "
                              "and primes at least 665, where the free Burnside group of rank 2 "
                              "is known to be infinite")
                                 .c_str(),
                             DomainError);

    CHECK(Rank::of(2) + Rank::of(3) == Rank::of(5));
    CHECK((Rank::omega() + Rank::of(7)).is_infinite());
    CHECK(Rank::omega().to_string() == "omega");
    CHECK_THROWS_AS(Rank::omega().count(), DomainError);
}

TEST_CASE("term construction normalizes") {
    SymGroup b = burn();

    CHECK(SymGroup::product(SymGroup::trivial(), b) == b);
    CHECK(SymGroup::central_ext(SymGroup::trivial(), b) == b);
    CHECK(SymGroup::central_ext(ab_omega(), SymGroup::trivial()) == ab_omega());
    CHECK(SymGroup::free_abelian(Rank::of(0)) == SymGroup::trivial());
    CHECK(SymGroup::fp_vector_space(P, Rank::of(0)) == SymGroup::trivial());
    CHECK(SymGroup::burnside(P, 0) == SymGroup::trivial());

    // Nested products flatten.
    SymGroup nested = SymGroup::product(SymGroup::product(free_prod(), b), cell_b());
    CHECK(nested.kind() == SymKind::Product);
    CHECK(nested.factors().size() == 3);

    // Same-prime abelian factors merge, with omega absorbing.
    CHECK(SymGroup::product(SymGroup::fp_vector_space(P, Rank::of(2)),
                            SymGroup::fp_vector_space(P, Rank::of(3))) ==
          SymGroup::fp_vector_space(P, Rank::of(5)));
    CHECK(SymGroup::product(fp_omega(), SymGroup::fp_vector_space(P, Rank::of(4))) == fp_omega());
    CHECK(SymGroup::product(SymGroup::free_abelian(Rank::of(2)), ab_omega()) == ab_omega());

    // Distinct primes stay apart.
    SymGroup mixed = SymGroup::product(SymGroup::fp_vector_space(SymPrime::small(2), Rank::of(1)),
                                       SymGroup::fp_vector_space(SymPrime::small(3), Rank::of(1)));
    CHECK(mixed.factors().size() == 2);

    // Factor order is canonical, so products compare structurally.
    CHECK(SymGroup::product(b, fp_omega()) == SymGroup::product(fp_omega(), b));

    CHECK(SymGroup::product(fp_omega(), ab_omega()).is_abelian_typed());
    CHECK_FALSE(cell_b().is_abelian_typed());
    CHECK_THROWS_AS(SymGroup::central_ext(burn(), burn()), DomainError);
    CHECK_THROWS_AS(SymGroup::finite_ref(""), DomainError);
}

TEST_CASE("terms serialize and parse back") {
    SymGroup lkc = SymGroup::product(fp_omega(), cell_b());
    CHECK(lkc.to_string() ==
          "Product(FpVec(p, omega), CentralExt(FreeAb(omega), Burnside(p, 2)))");

    const SymGroup battery[] = {
        SymGroup::trivial(),
        free_prod(),
        burn(),
        cell_b(),
        loc_cell_b(),
        lkc,
        SymGroup::finite_ref("3A6"),
        SymGroup::free_abelian(Rank::of(3)),
        SymGroup::fp_vector_space(SymPrime::small(3), Rank::of(2)),
        SymGroup::burnside(SymPrime::small(2), 2),
    };
    for (const SymGroup& t : battery)
        CHECK(SymGroup::parse(t.to_string()) == t);

    // Long constructor names and loose whitespace are accepted.
    CHECK(SymGroup::parse("FpVectorSpace(3, 2)") ==
          SymGroup::fp_vector_space(SymPrime::small(3), Rank::of(2)));
    CHECK(SymGroup::parse("FreeProductCp( p , 2 )") == free_prod());
    CHECK(SymGroup::parse("FreeAbelian(omega)") == ab_omega());
    CHECK(SymGroup::parse("Product( Burnside(p,2), FpVec(p,omega) )") == loc_cell_b());

    CHECK_THROWS_AS(SymGroup::parse("Frobnicate(p, 2)"), ParseError);
    CHECK_THROWS_AS(SymGroup::parse("Burnside(p, 2"), ParseError);
    CHECK_THROWS_AS(SymGroup::parse("Burnside(p, 2) junk"), ParseError);
    CHECK_THROWS_AS(SymGroup::parse("FiniteRef(A5"), ParseError);
    CHECK_THROWS_AS(SymGroup::parse("Burnside(5, 2)"), DomainError);  // unknown regime
}

TEST_CASE("localization follows the rule table") {
    // The two copies of C_p free themselves into the Burnside group.
    CHECK(sym_localize_p(free_prod(), P) == burn());
    CHECK(sym_localize_p(SymGroup::free_product_cp(P, 3), P) == SymGroup::burnside(P, 3));

    // The central extension splits after reducing its kernel mod p.
    CHECK(sym_localize_p(cell_b(), P) == loc_cell_b());

    // Fixed points.
    CHECK(sym_localize_p(burn(), P) == burn());
    CHECK(sym_localize_p(fp_omega(), P) == fp_omega());
    CHECK(sym_localize_p(SymGroup::trivial(), P) == SymGroup::trivial());

    // Free abelian groups reduce mod p, at any rank.
    CHECK(sym_localize_p(ab_omega(), P) == fp_omega());
    CHECK(sym_localize_p(SymGroup::free_abelian(Rank::of(3)), P) ==
          SymGroup::fp_vector_space(P, Rank::of(3)));

    // Products go factor by factor and re-normalize: localizing L_pK x C
    // merges the two omega-dimensional vector spaces back into one.
    CHECK(sym_localize_p(SymGroup::product(fp_omega(), cell_b()), P) == loc_cell_b());

    // Small primes use the same elementary rules.
    const SymPrime p2 = SymPrime::small(2);
    CHECK(sym_localize_p(SymGroup::free_product_cp(p2, 2), p2) == SymGroup::burnside(p2, 2));
    CHECK(sym_localize_p(SymGroup::free_abelian(Rank::of(2)), p2) ==
          SymGroup::fp_vector_space(p2, Rank::of(2)));

    // Out of the calculus: finite references, mismatched primes, central
    // extensions that are not the cellular-approximation shape, and the
    // extension rule at a small prime (its base is not centerless there).
    CHECK_THROWS_AS(sym_localize_p(SymGroup::finite_ref("A5"), P), NoRuleError);
    CHECK_THROWS_AS(sym_localize_p(SymGroup::burnside(p2, 2), P), NoRuleError);
    CHECK_THROWS_AS(sym_localize_p(SymGroup::fp_vector_space(p2, Rank::of(1)), P), NoRuleError);
    CHECK_THROWS_AS(
        sym_localize_p(SymGroup::central_ext(SymGroup::free_abelian(Rank::of(5)), burn()), P),
        NoRuleError);
    CHECK_THROWS_AS(sym_localize_p(
                        SymGroup::central_ext(ab_omega(), SymGroup::burnside(SymPrime::small(3), 2)),
                        SymPrime::small(3)),
                    NoRuleError);

    // The trace names the rule that fired and shows both sides.
    std::vector<RuleStep> trace;
    SymGroup e = sym_localize_p(cell_b(), P, Limits{}, &trace);
    bool saw_rule = false;
    for (const RuleStep& step : trace) {
        if (step.rule == "localize/central-ext") {
            saw_rule = true;
            CHECK(step.before == cell_b().to_string());
            CHECK(step.after == e.to_string());
        }
    }
    CHECK(saw_rule);
}

TEST_CASE("cellularization follows the rule table") {
    // The Burnside group acquires its free abelian multiplier as kernel.
    CHECK(sym_cellularize_p(burn(), P) == cell_b());
    CHECK(sym_cellularize_p(SymGroup::burnside(P, 3), P) ==
          SymGroup::central_ext(ab_omega(), SymGroup::burnside(P, 3)));

    // Products split: cell(L_pK x B) = L_pK x C.
    CHECK(sym_cellularize_p(loc_cell_b(), P) == SymGroup::product(fp_omega(), cell_b()));

    // Fixed points: cellular terms stay put.
    CHECK(sym_cellularize_p(SymGroup::trivial(), P) == SymGroup::trivial());
    CHECK(sym_cellularize_p(free_prod(), P) == free_prod());
    CHECK(sym_cellularize_p(fp_omega(), P) == fp_omega());
    CHECK(sym_cellularize_p(cell_b(), P) == cell_b());
    CHECK(sym_cellularize_p(SymGroup::burnside(P, 1), P) == SymGroup::burnside(P, 1));

    // At 2 and 3 the Burnside group is finite and already cellular.
    for (std::int64_t q : {2, 3}) {
        const SymPrime sp = SymPrime::small(q);
        CHECK(sym_cellularize_p(SymGroup::burnside(sp, 2), sp) == SymGroup::burnside(sp, 2));
    }

    // Out of the calculus.
    CHECK_THROWS_AS(sym_cellularize_p(ab_omega(), P), NoRuleError);
    CHECK_THROWS_AS(sym_cellularize_p(SymGroup::finite_ref("A6"), P), NoRuleError);
    CHECK_THROWS_AS(sym_cellularize_p(
                        SymGroup::central_ext(SymGroup::fp_vector_space(P, Rank::of(1)), burn()),
                        P),
                    NoRuleError);
    CHECK_THROWS_AS(
        sym_cellularize_p(
            SymGroup::central_ext(ab_omega(), SymGroup::burnside(SymPrime::small(2), 2)),
            SymPrime::small(2)),
        NoRuleError);
    CHECK_THROWS_AS(sym_cellularize_p(burn(), SymPrime::small(2)), NoRuleError);

    std::vector<RuleStep> trace;
    sym_cellularize_p(burn(), P, Limits{}, &trace);
    REQUIRE(trace.size() == 1);
    CHECK(trace[0].rule == "cell/burnside-large");
    CHECK(trace[0].why.find("Schur multiplier") != std::string::npos);
}

TEST_CASE("center extraction follows the rule table") {
    CHECK(sym_center(burn()) == SymGroup::trivial());
    CHECK(sym_center(free_prod()) == SymGroup::trivial());
    CHECK(sym_center(cell_b()) == ab_omega());
    CHECK(sym_center(SymGroup::product(fp_omega(), cell_b())) ==
          SymGroup::product(fp_omega(), ab_omega()));
    CHECK(sym_center(loc_cell_b()) == fp_omega());

    // Abelian terms are their own center.
    CHECK(sym_center(ab_omega()) == ab_omega());
    CHECK(sym_center(fp_omega()) == fp_omega());
    CHECK(sym_center(SymGroup::free_product_cp(P, 1)) == SymGroup::free_product_cp(P, 1));
    CHECK(sym_center(SymGroup::burnside(P, 1)) == SymGroup::burnside(P, 1));

    // Out of the calculus: finite references, small-prime Burnside terms,
    // and central extensions whose base keeps a center.
    CHECK_THROWS_AS(sym_center(SymGroup::finite_ref("S5")), NoRuleError);
    CHECK_THROWS_AS(sym_center(SymGroup::burnside(SymPrime::small(3), 2)), NoRuleError);
    CHECK_THROWS_AS(
        sym_center(SymGroup::central_ext(SymGroup::free_abelian(Rank::of(1)),
                                         SymGroup::burnside(P, 1))),
        NoRuleError);
    CHECK_THROWS_AS(
        sym_center(SymGroup::central_ext(SymGroup::fp_vector_space(P, Rank::of(1)),
                                         SymGroup::finite_ref("Q8"))),
        NoRuleError);
}

TEST_CASE("fiberwise localization of extensions") {
    // K -> C -> B becomes L_pK -> E -> B and stays central.
    SymExtension kcb{ab_omega(), cell_b(), burn(), true};
    SymExtension e = fiberwise_localize(kcb, P);
    CHECK(e.kernel == fp_omega());
    CHECK(e.total == loc_cell_b());
    CHECK(e.quotient == burn());
    CHECK(e.central);

    // A trivial fiber changes nothing.
    SymGroup a5 = SymGroup::finite_ref("A5");
    SymExtension idext{SymGroup::trivial(), a5, a5, false};
    SymExtension same = fiberwise_localize(idext, P);
    CHECK(same.kernel == SymGroup::trivial());
    CHECK(same.total == a5);
    CHECK(same.quotient == a5);

    // An opaque total is kept; centrality is dropped when the quotient is
    // not provably centerless.
    SymExtension opaque{SymGroup::free_abelian(Rank::of(1)), SymGroup::finite_ref("X"),
                        SymGroup::finite_ref("Y"), true};
    std::vector<RuleStep> trace;
    SymExtension out = fiberwise_localize(opaque, P, Limits{}, &trace);
    CHECK(out.kernel == SymGroup::fp_vector_space(P, Rank::of(1)));
    CHECK(out.total == SymGroup::finite_ref("X"));
    CHECK(out.quotient == SymGroup::finite_ref("Y"));
    CHECK_FALSE(out.central);
    bool kept_note = false, dropped_note = false;
    for (const RuleStep& step : trace) {
        kept_note |= step.rule == "fiberwise/total-kept";
        dropped_note |= step.rule == "fiberwise/central-dropped";
    }
    CHECK(kept_note);
    CHECK(dropped_note);

    // A centerless quotient keeps the extension central even when the
    // total is opaque.
    SymExtension half{ab_omega(), SymGroup::finite_ref("X"), burn(), true};
    CHECK(fiberwise_localize(half, P).central);

    // Declared-central extensions need abelian kernels.
    SymExtension bad{burn(), cell_b(), burn(), true};
    CHECK_THROWS_AS(fiberwise_localize(bad, P), DomainError);
    CHECK_THROWS_AS(validate_extension(bad), DomainError);

    // An unrewritable kernel is an error, not a silent pass-through.
    SymExtension stuck{SymGroup::finite_ref("K"), SymGroup::finite_ref("X"),
                       SymGroup::finite_ref("Y"), false};
    CHECK_THROWS_AS(fiberwise_localize(stuck, P), NoRuleError);
}

TEST_CASE("non-isomorphism certificates") {
    // B against E = L_pK x B: one is centerless, the other is not.
    Certificate c1 = sym_distinguish(burn(), loc_cell_b());
    CHECK(c1.conclusion == "not isomorphic");
    CHECK(c1.invariant_name == "center_is_trivial");
    CHECK(c1.value_left);
    CHECK_FALSE(c1.value_right);
    CHECK(c1.claim.find("center(Burnside(p, 2)) = Trivial") != std::string::npos);

    // C against L_pK x C: both have centers, but only one center has
    // p-torsion (K itself is free abelian).
    Certificate c2 = sym_distinguish(cell_b(), SymGroup::product(fp_omega(), cell_b()));
    CHECK(c2.conclusion == "not isomorphic");
    CHECK(c2.invariant_name == "center_has_p_torsion");
    CHECK_FALSE(c2.value_left);
    CHECK(c2.value_right);

    // Identical terms are indistinguishable.
    Certificate c3 = sym_distinguish(SymGroup::trivial(), SymGroup::trivial());
    CHECK(c3.conclusion == "indistinguishable by this invariant");
    CHECK(c3.value_left == c3.value_right);

    Certificate c4 = sym_distinguish(burn(), free_prod());
    CHECK(c4.conclusion == "indistinguishable by this invariant");

    // Centers outside the calculus yield the honest verdict, not an error.
    Certificate c5 = sym_distinguish(burn(), SymGroup::finite_ref("A5"));
    CHECK(c5.conclusion == "indistinguishable by this invariant");
    CHECK(c5.claim.find("cannot determine") != std::string::npos);

    // The structural soundness condition: "not isomorphic" needs an
    // actual disagreement.
    for (const Certificate* c : {&c1, &c2, &c3, &c4, &c5}) {
        if (c->conclusion == "not isomorphic")
            CHECK(c->value_left != c->value_right);
        else
            CHECK(c->value_left == c->value_right);
    }
}

TEST_CASE("the composites fail idempotency once, then stabilize") {
    // L_p cell_p, starting from F = C_p * C_p.
    SymGroup f = free_prod();
    SymGroup g1 = sym_localize_p(sym_cellularize_p(f, P), P);
    CHECK(g1 == burn());
    SymGroup g2 = sym_localize_p(sym_cellularize_p(g1, P), P);
    CHECK(g2 == loc_cell_b());

    Certificate c1 = sym_distinguish(g1, g2);
    CHECK(c1.conclusion == "not isomorphic");
    CHECK(c1.invariant_name == "center_is_trivial");

    // One more round reaches a fixed point: the vector-space factors merge.
    SymGroup g3 = sym_localize_p(sym_cellularize_p(g2, P), P);
    CHECK(g3 == g2);

    // cell_p L_p, starting from B itself.
    SymGroup h1 = sym_cellularize_p(sym_localize_p(burn(), P), P);
    CHECK(h1 == cell_b());
    SymGroup h2 = sym_cellularize_p(sym_localize_p(h1, P), P);
    CHECK(h2 == SymGroup::product(fp_omega(), cell_b()));

    Certificate c2 = sym_distinguish(h1, h2);
    CHECK(c2.conclusion == "not isomorphic");
    CHECK(c2.invariant_name == "center_has_p_torsion");

    SymGroup h3 = sym_cellularize_p(sym_localize_p(h2, P), P);
    CHECK(h3 == h2);
}

TEST_CASE("every localization output has exponent p") {
    const SymGroup battery[] = {
        SymGroup::trivial(), free_prod(),  burn(),
        cell_b(),            loc_cell_b(), ab_omega(),
        SymGroup::free_abelian(Rank::of(4)), SymGroup::product(fp_omega(), cell_b()),
        SymGroup::product(burn(), SymGroup::free_abelian(Rank::of(2))),
    };
    for (const SymGroup& t : battery)
        CHECK(sym_exponent_p(sym_localize_p(t, P), P));

    // The predicate itself: F has infinite-order elements, C has a free
    // abelian center, and prime markers must match.
    CHECK_FALSE(sym_exponent_p(free_prod(), P));
    CHECK_FALSE(sym_exponent_p(cell_b(), P));
    CHECK_FALSE(sym_exponent_p(ab_omega(), P));
    CHECK_FALSE(sym_exponent_p(SymGroup::burnside(SymPrime::small(2), 2), P));
    CHECK(sym_exponent_p(SymGroup::burnside(SymPrime::small(2), 2), SymPrime::small(2)));
    CHECK(sym_exponent_p(loc_cell_b(), P));
}

TEST_CASE("the rewrite bound caps runaway reductions") {
    Limits tight;
    tight.rewrite_bound = 1;
    SymGroup two_steps =
        SymGroup::product(SymGroup::free_abelian(Rank::of(3)), cell_b());
    try {
        sym_localize_p(two_steps, P, tight);
        FAIL("expected CapError");
    } catch (const CapError& e) {
        CHECK(e.cap_name() == "rewrite_bound");
        CHECK(e.limit() == 1);
    }

    // The default bound is generous enough for every term in the calculus;
    // the localized kernel merges into the omega-dimensional factor.
    Limits roomy;
    CHECK(sym_localize_p(two_steps, P, roomy) == loc_cell_b());
}

TEST_CASE("small-prime cellular fixed points agree with the finite engine") {
    static const Catalogue cat = load_registry(LOCELL_DATA_DIR);
    FunctorEngine engine = cat.make_engine();

    // B(2,2) = C2 x C2 and B(2,3), extraspecial of order 27: the finite
    // cellularization fixes both, matching the symbolic fixed points.
    const PermGroup& b22 = cat.realization("B22");
    CellResult r2 = engine.cellularize_p(b22, 2);
    CHECK(r2.route == "socle");
    CHECK(r2.kernel.order() == 1);
    CHECK(is_isomorphic(r2.group, b22));

    const PermGroup& b23 = cat.realization("B23");
    CellResult r3 = engine.cellularize_p(b23, 3);
    CHECK(r3.route == "socle");
    CHECK(r3.kernel.order() == 1);
    CHECK(is_isomorphic(r3.group, b23));

    for (std::int64_t q : {2, 3}) {
        const SymPrime sp = SymPrime::small(q);
        CHECK(sym_cellularize_p(SymGroup::burnside(sp, 2), sp) == SymGroup::burnside(sp, 2));
    }
}

TEST_CASE("rewriting is deterministic, bounded, and idempotent") {
    std::mt19937 rng(0x5eed);
    int localized = 0, cellularized = 0;
    for (int i = 0; i < 300; ++i) {
        SymGroup t = random_term(rng, 6);
        CHECK(SymGroup::parse(t.to_string()) == t);

        auto l1 = outcome([&] { return sym_localize_p(t, P); });
        auto l2 = outcome([&] { return sym_localize_p(t, P); });
        CHECK(l1 == l2);
        if (l1.first == 0) {
            ++localized;
            SymGroup out = sym_localize_p(t, P);
            CHECK(sym_exponent_p(out, P));
            CHECK(sym_localize_p(out, P) == out);
        }

        auto c1 = outcome([&] { return sym_cellularize_p(t, P); });
        auto c2 = outcome([&] { return sym_cellularize_p(t, P); });
        CHECK(c1 == c2);
        if (c1.first == 0) {
            ++cellularized;
            SymGroup out = sym_cellularize_p(t, P);
            CHECK(sym_cellularize_p(out, P) == out);
        }
    }
    // The generator hits plenty of in-calculus terms, not just errors.
    CHECK(localized > 50);
    CHECK(cellularized > 50);
}
