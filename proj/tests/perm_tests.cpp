#include <doctest.h>

#include "locell/abelian.hpp"
#include "locell/errors.hpp"
#include "locell/group_ops.hpp"
#include "locell/isomorphism.hpp"
#include "locell/kernels.hpp"
#include "locell/perm_group.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace locell;

namespace {

// Independent oracle: multiply generators until closed.
std::set<Permutation> brute_closure(std::vector<Permutation> gens, std::uint32_t degree) {
    for (auto& g : gens)
        if (g.degree() < degree) g = g.extended(degree);
    std::set<Permutation> elems{Permutation(degree)};
    std::vector<Permutation> queue(elems.begin(), elems.end());
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (const auto& g : gens) {
            Permutation next = queue[head] * g;
            if (elems.insert(next).second)
                queue.push_back(std::move(next));
        }
    return elems;
}

std::set<Permutation> group_element_set(const PermGroup& g) {
    Limits lim;
    auto v = g.elements(lim);
    return {v.begin(), v.end()};
}

} // namespace

TEST_CASE("cycle notation round trip") {
    Permutation p = Permutation::from_cycles("(0 1 2)(3 4)");
    CHECK(p.degree() == 5);
    CHECK(p(0) == 1);
    CHECK(p(1) == 2);
    CHECK(p(2) == 0);
    CHECK(p(3) == 4);
    CHECK(p(4) == 3);
    CHECK(p.to_cycle_string() == "(0 1 2)(3 4)");
    CHECK(p.order() == 6);

    CHECK(Permutation(4).to_cycle_string() == "()");
    CHECK(Permutation::from_cycles("()").is_identity());
    CHECK(Permutation::from_cycles("()", 3).degree() == 3);
    CHECK(Permutation::from_cycles("(2 5)").degree() == 6);

    CHECK_THROWS_AS(Permutation::from_cycles("(0 1"), ParseError);
    CHECK_THROWS_AS(Permutation::from_cycles("0 1"), ParseError);
    CHECK_THROWS_AS(Permutation::from_cycles("(0 1)(1 2)"), ParseError);
    CHECK_THROWS_AS(Permutation::from_cycles(""), ParseError);
}

TEST_CASE("image vector validation") {
    CHECK_THROWS_AS(Permutation::from_images({0, 0}), DomainError);
    CHECK_THROWS_AS(Permutation::from_images({1, 2}), DomainError);
    Permutation p = Permutation::from_images({1, 0, 2});
    CHECK(p.inverse() == p);
    CHECK((p * p).is_identity());
}

TEST_CASE("composition order is left to right") {
    Permutation a = Permutation::from_cycles("(0 1)", 3);
    Permutation b = Permutation::from_cycles("(1 2)", 3);
    Permutation ab = a * b;   // apply a, then b
    CHECK(ab(0) == 2);
    CHECK(ab(2) == 1);
    CHECK(ab(1) == 0);
}

TEST_CASE("chain order matches brute force closure") {
    struct Case { const char* name; PermGroup g; std::uint64_t order; };
    std::vector<Case> cases;
    cases.push_back({"S3", PermGroup::symmetric(3), 6});
    cases.push_back({"S4", PermGroup::symmetric(4), 24});
    cases.push_back({"S5", PermGroup::symmetric(5), 120});
    cases.push_back({"A4", PermGroup::alternating(4), 12});
    cases.push_back({"A5", PermGroup::alternating(5), 60});
    cases.push_back({"D4", PermGroup::dihedral(4), 8});
    cases.push_back({"D5", PermGroup::dihedral(5), 10});
    cases.push_back({"Q8", PermGroup::quaternion8(), 8});
    cases.push_back({"C6", PermGroup::cyclic(6), 6});
    for (const auto& c : cases) {
        CAPTURE(c.name);
        auto brute = brute_closure(c.g.generators(), c.g.degree());
        CHECK(c.g.order() == c.order);
        CHECK(brute.size() == c.order);
        CHECK(group_element_set(c.g) == brute);
    }
}

TEST_CASE("chain order matches brute force on random subgroups of S6") {
    std::mt19937_64 rng(0);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Permutation> gens;
        for (int k = 0; k < 2; ++k) {
            std::vector<std::uint32_t> img(6);
            std::iota(img.begin(), img.end(), 0u);
            std::shuffle(img.begin(), img.end(), rng);
            gens.push_back(Permutation::from_images(img));
        }
        PermGroup g(gens);
        auto brute = brute_closure(gens, g.degree());
        CAPTURE(trial);
        CHECK(g.order() == brute.size());
        for (const auto& e : brute)
            CHECK(g.contains(e));
    }
}

TEST_CASE("membership rejects outsiders") {
    PermGroup a4 = PermGroup::alternating(4);
    CHECK(a4.contains(Permutation::from_cycles("(0 1 2)", 4)));
    CHECK_FALSE(a4.contains(Permutation::from_cycles("(0 1)", 4)));
    PermGroup s4 = PermGroup::symmetric(4);
    CHECK(a4.is_subgroup_of(s4));
    CHECK_FALSE(s4.is_subgroup_of(a4));
}

TEST_CASE("element enumeration is a bijection") {
    PermGroup g = PermGroup::dihedral(6);
    auto brute = brute_closure(g.generators(), g.degree());
    std::set<Permutation> seen;
    for (std::uint64_t i = 0; i < g.order(); ++i)
        CHECK(seen.insert(g.element_at(i)).second);
    CHECK(seen == brute);
}

TEST_CASE("incremental extension agrees with batch construction") {
    PermGroup s5 = PermGroup::symmetric(5);
    StabilizerChain chain({}, 5);
    for (const auto& g : s5.generators())
        chain.extend(g);
    CHECK(chain.order() == 120);
    CHECK_FALSE(chain.extend(s5.generators()[0]));
}

TEST_CASE("named constructors have the expected orders") {
    CHECK(PermGroup::symmetric(6).order() == 720);
    CHECK(PermGroup::alternating(6).order() == 360);
    CHECK(PermGroup::alternating(7).order() == 2520);
    CHECK(PermGroup::dihedral(7).order() == 14);
    CHECK(PermGroup::cyclic(12).order() == 12);
    CHECK(PermGroup::trivial().order() == 1);
    PermGroup q8 = PermGroup::quaternion8();
    CHECK(q8.order() == 8);
    // Q8 has a unique element of order 2.
    int order2 = 0;
    for (const auto& e : q8.elements())
        if (e.order() == 2) ++order2;
    CHECK(order2 == 1);
}

TEST_CASE("center computations") {
    CHECK(center(PermGroup::symmetric(3)).order() == 1);
    CHECK(center(PermGroup::symmetric(4)).order() == 1);
    CHECK(center(PermGroup::dihedral(4)).order() == 2);
    CHECK(center(PermGroup::dihedral(5)).order() == 1);
    CHECK(center(PermGroup::quaternion8()).order() == 2);
    CHECK(center(PermGroup::cyclic(6)).order() == 6);
    CHECK(center(PermGroup::alternating(5)).order() == 1);
}

TEST_CASE("derived subgroup and solvability") {
    CHECK(derived_subgroup(PermGroup::symmetric(3)).order() == 3);
    CHECK(derived_subgroup(PermGroup::symmetric(4)).order() == 12);
    CHECK(derived_subgroup(PermGroup::alternating(4)).order() == 4);
    CHECK(derived_subgroup(PermGroup::alternating(5)).order() == 60);
    CHECK(derived_length(PermGroup::symmetric(4)) == 3);
    CHECK(derived_length(PermGroup::symmetric(3)) == 2);
    CHECK(derived_length(PermGroup::cyclic(6)) == 1);
    CHECK(derived_length(PermGroup::alternating(5)) == -1);
}

TEST_CASE("normal closure and normality") {
    PermGroup a4 = PermGroup::alternating(4);
    PermGroup v4 = normal_closure(a4, {Permutation::from_cycles("(0 1)(2 3)", 4)});
    CHECK(v4.order() == 4);
    CHECK(is_normal_subgroup(a4, v4));
    PermGroup c2 = PermGroup({Permutation::from_cycles("(0 1)", 4)});
    CHECK_FALSE(is_normal_subgroup(PermGroup::symmetric(4), c2));
    // Normal closure of a 3-cycle in S5 is all of A5.
    PermGroup s5 = PermGroup::symmetric(5);
    CHECK(normal_closure(s5, {Permutation::from_cycles("(0 1 2)", 5)}).order() == 60);
}

TEST_CASE("lower central series and nilpotency") {
    CHECK(nilpotency_class(PermGroup::quaternion8()) == 2);
    CHECK(nilpotency_class(PermGroup::dihedral(4)) == 2);
    CHECK(nilpotency_class(PermGroup::cyclic(8)) == 1);
    CHECK(nilpotency_class(PermGroup::trivial()) == 0);
    CHECK(nilpotency_class(PermGroup::symmetric(3)) == -1);
}

TEST_CASE("quotients") {
    PermGroup s4 = PermGroup::symmetric(4);
    PermGroup v4 = normal_closure(s4, {Permutation::from_cycles("(0 1)(2 3)", 4)});
    CHECK(v4.order() == 4);
    PermGroup q = quotient(s4, v4);
    CHECK(q.order() == 6);
    CHECK(is_isomorphic(q, PermGroup::symmetric(3)));

    PermGroup a4 = PermGroup::alternating(4);
    CHECK(is_isomorphic(quotient(s4, a4), PermGroup::cyclic(2)));
    PermGroup v4a = normal_closure(a4, {Permutation::from_cycles("(0 1)(2 3)", 4)});
    CHECK(is_isomorphic(quotient(a4, v4a), PermGroup::cyclic(3)));

    // Quotient by the trivial subgroup is the group itself.
    PermGroup t = PermGroup::trivial(4);
    CHECK(quotient(s4, t).order() == 24);

    // Non-normal subgroups are rejected.
    PermGroup c2 = PermGroup({Permutation::from_cycles("(0 1)", 4)});
    CHECK_THROWS_AS(quotient(s4, c2), DomainError);

    // Determinism: same construction twice gives identical generators.
    PermGroup q2 = quotient(s4, v4);
    REQUIRE(q.generators().size() == q2.generators().size());
    for (std::size_t i = 0; i < q.generators().size(); ++i)
        CHECK(q.generators()[i] == q2.generators()[i]);
}

TEST_CASE("direct products") {
    PermGroup g = direct_product(PermGroup::cyclic(2), PermGroup::cyclic(6));
    CHECK(g.order() == 12);
    CHECK(is_abelian(g));
    CHECK(abelian_invariants(g).invariants() == std::vector<std::int64_t>{2, 6});
    PermGroup h = direct_product(PermGroup::symmetric(3), PermGroup::cyclic(2));
    CHECK(h.order() == 12);
    CHECK_FALSE(is_abelian(h));
}

TEST_CASE("abelian invariants") {
    CHECK(abelian_invariants(PermGroup::cyclic(6)).invariants() == std::vector<std::int64_t>{6});
    CHECK(abelian_invariants(PermGroup::symmetric(4)).invariants() == std::vector<std::int64_t>{2});
    CHECK(abelian_invariants(PermGroup::alternating(5)).invariants().empty());
    CHECK(abelian_invariants(PermGroup::alternating(4)).invariants() == std::vector<std::int64_t>{3});
    CHECK(abelian_invariants(PermGroup::quaternion8()).invariants() == std::vector<std::int64_t>{2, 2});
    PermGroup klein({Permutation::from_cycles("(0 1)", 4), Permutation::from_cycles("(2 3)", 4)});
    CHECK(abelian_invariants(klein).invariants() == std::vector<std::int64_t>{2, 2});
    CHECK(abelian_invariants(PermGroup::trivial()).invariants().empty());
    // C2 x C6 in one shot from a 12-cycle-free presentation-ish generator set.
    PermGroup c2c6 = direct_product(PermGroup::cyclic(2), PermGroup::cyclic(6));
    CHECK(abelian_invariants(c2c6).to_string() == "C2 x C6");
}

TEST_CASE("abelian group arithmetic") {
    AbelianGroup a = AbelianGroup::from_orders({4, 6});
    CHECK(a.invariants() == std::vector<std::int64_t>{2, 12});
    CHECK(a.order() == 24);
    CHECK(AbelianGroup::from_orders({2, 3}).invariants() == std::vector<std::int64_t>{6});
    CHECK(AbelianGroup::from_orders({}).is_trivial());
    CHECK(a.socle_p(2).invariants() == std::vector<std::int64_t>{2, 2});
    CHECK(a.socle_p(3).invariants() == std::vector<std::int64_t>{3});
    CHECK(a.primary_part(2).invariants() == std::vector<std::int64_t>{2, 4});
    CHECK(a.away_from_p(2).invariants() == std::vector<std::int64_t>{3});
    CHECK(a.mod_p(2).invariants() == std::vector<std::int64_t>{2, 2});
    CHECK(a.mod_p(5).is_trivial());
    CHECK(realize_abelian(a).order() == 24);
    CHECK(is_isomorphic(realize_abelian(AbelianGroup::from_orders({2, 2})),
                        PermGroup({Permutation::from_cycles("(0 1)", 4),
                                   Permutation::from_cycles("(2 3)", 4)})));
}

TEST_CASE("element order scans") {
    PermGroup s4 = PermGroup::symmetric(4);
    CHECK(elements_of_order(s4, 2).size() == 9);
    CHECK(elements_of_order(s4, 3).size() == 8);
    CHECK(elements_of_order(s4, 4).size() == 6);
    CHECK(elements_of_p_power_order(s4, 2).size() == 15);
    CHECK(elements_of_p_power_order(s4, 3).size() == 8);
    CHECK_THROWS_AS(elements_of_p_power_order(s4, 4), DomainError);

    auto hist = element_order_histogram(PermGroup::symmetric(3));
    REQUIRE(hist.size() == 3);
    CHECK(hist[0] == std::pair<std::uint64_t, std::uint64_t>{1, 1});
    CHECK(hist[1] == std::pair<std::uint64_t, std::uint64_t>{2, 3});
    CHECK(hist[2] == std::pair<std::uint64_t, std::uint64_t>{3, 2});
}

TEST_CASE("isomorphism testing") {
    CHECK(is_isomorphic(PermGroup::symmetric(3), PermGroup::dihedral(3)));
    CHECK(is_isomorphic(direct_product(PermGroup::cyclic(2), PermGroup::cyclic(3)),
                        PermGroup::cyclic(6)));
    CHECK_FALSE(is_isomorphic(PermGroup::cyclic(4),
                              direct_product(PermGroup::cyclic(2), PermGroup::cyclic(2))));
    CHECK_FALSE(is_isomorphic(PermGroup::dihedral(4), PermGroup::quaternion8()));
    CHECK_FALSE(is_isomorphic(PermGroup::alternating(4), PermGroup::dihedral(6)));
    CHECK(is_isomorphic(PermGroup::alternating(5),
                        PermGroup({Permutation::from_cycles("(0 1 2 3 4)"),
                                   Permutation::from_cycles("(2 3 4)")})));
    // Same group presented on different points, with fixed points mixed in.
    PermGroup d4a = PermGroup::dihedral(4);
    PermGroup d4b({Permutation::from_cycles("(1 3 5 7)"),
                   Permutation::from_cycles("(3 7)")});
    CHECK(d4b.order() == 8);
    CHECK(is_isomorphic(d4a, d4b));
    // Same order, same exponent, different group.
    PermGroup c4c2 = direct_product(PermGroup::cyclic(4), PermGroup::cyclic(2));
    CHECK_FALSE(is_isomorphic(d4a, c4c2));
    // Cap honored.
    Limits tiny;
    tiny.iso_cap = 10;
    CHECK_THROWS_AS(is_isomorphic(PermGroup::symmetric(4), PermGroup::symmetric(4), tiny), CapError);
}

TEST_CASE("degree reduction") {
    PermGroup g = direct_product(PermGroup::trivial(5), PermGroup::cyclic(3));
    PermGroup r = reduce_degree(g);
    CHECK(r.order() == 3);
    CHECK(r.degree() <= 3);
    // Two copies of the same action: one orbit suffices.
    PermGroup two = direct_product(PermGroup::symmetric(3), PermGroup::trivial(1));
    PermGroup rt = reduce_degree(two);
    CHECK(rt.order() == 6);
    CHECK(rt.degree() == 3);
}

TEST_CASE("parallel kernels match serial references") {
    PermGroup s5 = PermGroup::symmetric(5);
    auto par = kernels::element_orders(s5.chain(), s5.order());
    auto ser = kernels::element_orders_serial(s5.chain(), s5.order());
    CHECK(par == ser);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t r = 3 + rng() % 6, c = 3 + rng() % 6;
        std::vector<std::vector<std::uint32_t>> m(r, std::vector<std::uint32_t>(c));
        for (auto& row : m)
            for (auto& x : row) x = static_cast<std::uint32_t>(rng() % 23);
        for (std::uint32_t p : {2u, 3u, 5u, 23u}) {
            CAPTURE(trial);
            CHECK(kernels::modp_rank(m, p) == kernels::modp_rank_serial(m, p));
        }
    }
    // Known rank example over GF(2): the 3x3 all-ones matrix has rank 1.
    std::vector<std::vector<std::uint32_t>> ones(3, std::vector<std::uint32_t>(3, 1));
    CHECK(kernels::modp_rank(ones, 2) == 1);
}

TEST_CASE("caps raise instead of truncating") {
    Limits lim;
    lim.element_cap = 10;
    CHECK_THROWS_AS(PermGroup::symmetric(4).elements(lim), CapError);
    lim.element_cap = 1'000'000;
    lim.degree_cap = 2;
    PermGroup s4 = PermGroup::symmetric(4);
    PermGroup v4 = normal_closure(s4, {Permutation::from_cycles("(0 1)(2 3)", 4)});
    CHECK_THROWS_AS(quotient(s4, v4, lim), CapError);
}
