#pragma once

#include "locell/abelian.hpp"
#include "locell/functors.hpp"
#include "locell/limits.hpp"
#include "locell/perm_group.hpp"
#include "locell/symbolic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace locell {

// Functor expressions tie the finite, abelian and symbolic backends
// together: a composition of atoms is applied to whatever kind of group
// value is at hand, and the orbit explorer walks the graph such
// applications generate.

enum class AtomKind {
    Cell,        // cell_p, cellular approximation
    Nullify,     // P_p, largest quotient without p-torsion
    Localize,    // L_p, largest exponent-p quotient
    Abelianize,  // Lab
    Socle,       // S_p, subgroup generated by order-p elements
    Radical,     // T_p, subgroup generated by p-power-order elements
};

// One functor atom.  Primes are concrete except under the "_p" suffix,
// which names the indeterminate large prime of the symbolic calculus.
struct Atom {
    AtomKind kind = AtomKind::Cell;
    std::int64_t prime = 0;    // unused for Abelianize and indeterminate atoms
    bool large_prime = false;

    std::string label() const;  // "cell_2", "P_3", "L_p", "Lab"
};

// A composition in written order: "P_3.cell_2" applies cell_2 first.
struct FunctorExpr {
    std::vector<Atom> atoms;

    // Grammar: atom ("." atom)*, atom = name "_" (digits | "p") or "Lab".
    // Composite prime suffixes are rejected.
    static FunctorExpr parse(const std::string& text);
    std::string to_string() const;
};

// A cellular approximation that is a proper central extension of the
// p-socle.  When the registry supplies a matching cover the realization
// is carried along and composition can continue; without one the
// descriptor is terminal and only reports what the extension would be.
struct CellularCover {
    PermGroup base;        // the socle the cover maps onto
    AbelianGroup kernel;
    std::string cover_label;  // registry label, empty when unrealized
    std::optional<PermGroup> realization;
};

// The value a functor expression threads through its atoms.
struct GroupValue {
    std::variant<PermGroup, CellularCover, AbelianGroup, SymGroup> value;

    enum class Tag { Finite, Cover, Abelian, Symbolic };
    Tag tag() const noexcept { return static_cast<Tag>(value.index()); }

    const PermGroup& finite() const { return std::get<PermGroup>(value); }
    const CellularCover& cover() const { return std::get<CellularCover>(value); }
    const AbelianGroup& abelian() const { return std::get<AbelianGroup>(value); }
    const SymGroup& symbolic() const { return std::get<SymGroup>(value); }

    // One-line summary for reports and orbit node labels.
    std::string describe() const;
};

// Applies the expression right to left.  Backend errors are rethrown with
// the failing atom and its position prepended, preserving the error type.
// An unrealized cover accepts no further atoms.
GroupValue apply_expr(const FunctorExpr& expr, GroupValue start, FunctorEngine& engine,
                      const Limits& limits = {});

// Node equality for orbits and idempotency verdicts.  Finite groups up to
// limits.iso_cap compare by isomorphism search; larger ones only by
// invariant fingerprint, which the `fingerprint_only` flag surfaces.
// Abelian values compare by invariants (also against realized abelian
// permutation groups), symbolic values by term equality.
struct NodeMatch {
    bool same = false;
    bool fingerprint_only = false;
};
NodeMatch same_value(const GroupValue& a, const GroupValue& b, const Limits& limits = {});

// Verdict of applying an expression twice versus once.
struct IdemReport {
    std::string verdict;  // "idempotent" | "not-idempotent" | "indeterminate"
    std::string detail;
    GroupValue once;
    GroupValue twice;
    bool fingerprint_only = false;
    std::optional<Certificate> certificate;  // set for symbolic comparisons
};

IdemReport idempotency_check(const FunctorExpr& expr, const GroupValue& start,
                             FunctorEngine& engine, const Limits& limits = {});

struct OrbitNode {
    GroupValue value;
    std::uint32_t depth = 0;
    bool fingerprint_merged = false;  // some merge into this node used fingerprints only
    bool terminal = false;            // unrealized cover, no outgoing edges
};

struct OrbitEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    std::string atom;
};

struct OrbitGraph {
    std::vector<OrbitNode> nodes;
    std::vector<OrbitEdge> edges;
    std::vector<std::string> skipped;  // atom applications that raised errors
    bool fingerprint_merges = false;
};

// Breadth-first orbit of a group value under a set of atoms, nodes
// deduplicated through same_value.  Atoms are applied in label order, so
// the graph layout is deterministic.  Raises CapError past
// limits.orbit_depth_cap or limits.orbit_node_cap.
OrbitGraph orbit_explore(const GroupValue& start, std::vector<Atom> atoms, std::uint32_t depth,
                         FunctorEngine& engine, const Limits& limits = {});

} // namespace locell
