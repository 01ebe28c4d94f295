#pragma once

#include "locell/errors.hpp"
#include "locell/limits.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace locell {

// The symbolic side of the library works with group *terms* instead of
// permutations: free products of cyclic groups, free Burnside groups of
// prime exponent, free abelian groups of countable rank, and the central
// extensions that tie them together.  Localization, cellularization and
// center extraction act on these terms through a closed table of rewrite
// rules, each carrying the classical fact that justifies it.  A term the
// table does not cover raises NoRuleError; nothing is ever guessed.

// A prime in one of two regimes.  At 2 and 3 the exponent-p calculus talks
// about concrete finite groups and can be cross-checked against the
// permutation backend.  From 665 upwards (Adian and Atabekyan's bound) the
// free Burnside group of rank >= 2 is infinite and centerless, and the
// rules treat the prime as an indeterminate, printed simply as "p".
// Primes between 5 and 661 belong to neither regime: whether B(2,p) is
// even infinite is open there, so they are rejected outright.
class SymPrime {
public:
    static SymPrime small(std::int64_t p);  // p in {2, 3}
    static SymPrime large();                // the indeterminate

    // Classifies a concrete value: 2 and 3 are small, primes >= 665 are
    // large, anything in between raises DomainError ("unknown regime"),
    // composites raise DomainError as well.
    static SymPrime from_value(std::int64_t p);

    bool is_large() const noexcept { return large_; }
    std::int64_t value() const;  // DomainError for the indeterminate

    std::string to_string() const;

    // All large primes compare equal: they are the same indeterminate.
    bool operator==(const SymPrime& other) const noexcept;
    bool operator!=(const SymPrime& other) const noexcept { return !(*this == other); }

private:
    SymPrime(bool large, std::int64_t value) : large_(large), value_(value) {}

    bool large_;
    std::int64_t value_;  // 2 or 3 when small, 0 when indeterminate
};

// Rank of a free abelian group or dimension of a vector space, tracked
// only as finite-versus-countably-infinite.  No cardinal arithmetic
// beyond "omega absorbs everything" is needed.
class Rank {
public:
    static Rank omega() { return Rank(true, 0); }
    static Rank of(std::uint64_t n) { return Rank(false, n); }

    bool is_infinite() const noexcept { return infinite_; }
    std::uint64_t count() const;  // DomainError when infinite

    Rank operator+(const Rank& other) const;
    std::string to_string() const;  // "omega" or decimal digits

    bool operator==(const Rank& other) const noexcept {
        return infinite_ == other.infinite_ && (infinite_ || count_ == other.count_);
    }
    bool operator!=(const Rank& other) const noexcept { return !(*this == other); }

private:
    Rank(bool infinite, std::uint64_t count) : infinite_(infinite), count_(count) {}

    bool infinite_;
    std::uint64_t count_;
};

enum class SymKind {
    Trivial,
    FiniteRef,       // a registry label, opaque to the rewrite rules
    FreeProductCp,   // C_p * ... * C_p, n copies
    Burnside,        // free group of exponent p on n generators
    FreeAbelian,     // Z^(rank)
    FpVectorSpace,   // direct sum of rank copies of Z/p
    CentralExt,      // kernel (abelian) -> total -> base, central
    Product,         // direct product, flattened to >= 2 factors
};

// An immutable term.  Copies share structure, equality is structural, and
// the smart constructors normalize: rank-zero abelian terms collapse to
// Trivial, Trivial disappears from products and central extensions,
// products flatten, merge abelian factors over the same prime, and sort
// their factors into a canonical order.
class SymGroup {
public:
    static SymGroup trivial();
    static SymGroup finite_ref(std::string label);
    static SymGroup free_product_cp(SymPrime p, std::uint64_t copies);
    static SymGroup burnside(SymPrime p, std::uint64_t rank);
    static SymGroup free_abelian(Rank rank);
    static SymGroup fp_vector_space(SymPrime p, Rank rank);
    static SymGroup central_ext(SymGroup kernel, SymGroup base);
    static SymGroup product(SymGroup left, SymGroup right);
    static SymGroup product(std::vector<SymGroup> factors);

    SymKind kind() const noexcept;

    const SymPrime& prime() const;                 // FreeProductCp, Burnside, FpVectorSpace
    Rank rank() const;                             // FreeAbelian, FpVectorSpace
    std::uint64_t copies() const;                  // FreeProductCp copies, Burnside rank
    const std::string& label() const;              // FiniteRef
    const SymGroup& kernel() const;                // CentralExt
    const SymGroup& base() const;                  // CentralExt
    const std::vector<SymGroup>& factors() const;  // Product

    // Trivial, FreeAbelian, FpVectorSpace, or a product of those.
    bool is_abelian_typed() const;

    bool operator==(const SymGroup& other) const;
    bool operator!=(const SymGroup& other) const { return !(*this == other); }

    // Nested-call syntax, e.g.
    //   Product(FpVec(p, omega), CentralExt(FreeAb(omega), Burnside(p, 2)))
    // parse() accepts exactly what to_string() emits, plus the long
    // constructor names and arbitrary whitespace.
    std::string to_string() const;
    static SymGroup parse(const std::string& text);

private:
    struct Node;
    explicit SymGroup(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

// A group extension kernel -> total -> quotient, possibly central.
struct SymExtension {
    SymGroup kernel;
    SymGroup total;
    SymGroup quotient;
    bool central = false;
};

// DomainError unless a central extension has an abelian-typed kernel.
void validate_extension(const SymExtension& ext);

// One rewrite-rule application, recorded when the caller asks for a trace.
// `why` quotes the classical fact behind the rule.
struct RuleStep {
    std::string rule;    // short identifier, e.g. "localize/free-product"
    std::string why;
    std::string before;  // serialized terms
    std::string after;
};

// The outcome of comparing two terms through center invariants.
struct Certificate {
    std::string claim;
    std::string invariant_name;  // center_is_trivial | center_has_p_torsion | center_is_torsion_free
    bool value_left = false;
    bool value_right = false;
    std::string conclusion;      // "not isomorphic" | "indistinguishable by this invariant"
};

// Exponent-p localization.  Rules: free products of copies of C_p become
// free Burnside groups; free abelian groups reduce mod p; exponent-p terms
// are fixed; the central extension of a large-prime Burnside group by
// FreeAbelian(omega) splits after reducing its kernel mod p; products
// localize factor by factor.  Rewrites beyond limits.rewrite_bound raise
// CapError, uncovered terms raise NoRuleError.
SymGroup sym_localize_p(const SymGroup& g, const SymPrime& p, const Limits& limits = {},
                        std::vector<RuleStep>* trace = nullptr);

// C_p-cellularization.  Free products of copies of C_p, vector spaces over
// F_p, and small-prime Burnside groups are already cellular; a large-prime
// Burnside group of rank >= 2 acquires a central FreeAbelian(omega) kernel
// (its Schur multiplier); the resulting extension is a fixed point;
// products split factor by factor.
SymGroup sym_cellularize_p(const SymGroup& g, const SymPrime& p, const Limits& limits = {},
                           std::vector<RuleStep>* trace = nullptr);

// Center extraction.  Abelian terms are their own center, large-prime
// Burnside groups of rank >= 2 and free products of >= 2 nontrivial
// factors are centerless, a central extension over a centerless base has
// center exactly its kernel, products split.
SymGroup sym_center(const SymGroup& g, const Limits& limits = {},
                    std::vector<RuleStep>* trace = nullptr);

// Fiberwise localization of an extension: the kernel is localized, the
// quotient kept, and the total rewritten when a rule covers it.  The
// result is marked central only when the input was central and the
// quotient is provably centerless.
SymExtension fiberwise_localize(const SymExtension& ext, const SymPrime& p,
                                const Limits& limits = {},
                                std::vector<RuleStep>* trace = nullptr);

// Evaluates center invariants on both terms in a fixed order and reports
// the first disagreement as a non-isomorphism certificate.  Terms whose
// center the calculus cannot determine yield the indistinguishable verdict
// rather than an error.
Certificate sym_distinguish(const SymGroup& g1, const SymGroup& g2);

// Syntactic exponent-p check: true when every constructor in the term is
// Trivial, FpVectorSpace(p, .), Burnside(p, .) or a product of such.
// Every successful sym_localize_p output satisfies this.
bool sym_exponent_p(const SymGroup& g, const SymPrime& p);

} // namespace locell
