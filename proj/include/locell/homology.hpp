#pragma once

#include "locell/abelian.hpp"
#include "locell/intmat.hpp"
#include "locell/limits.hpp"
#include "locell/perm_group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace locell {

// A curated multiplier fact: the label's group together with the invariant
// factors of its Schur multiplier and where that value comes from.
struct MultiplierFact {
    std::string label;
    PermGroup group;
    std::vector<std::int64_t> invariants;
    std::string citation;
};

// Rows of the degree-3 boundary of the normalized bar resolution, one row
// per triple of nontrivial elements, columns indexed by pairs.  Exposed for
// the benchmark tool; the parallel and serial versions are interchangeable.
SparseMat bar_boundary3(const PermGroup& g, const Limits& limits);
SparseMat bar_boundary3_serial(const PermGroup& g, const Limits& limits);

// Schur multiplier computations.  The bar path is exact and works for any
// order up to limits.bar_cap; the dual path (normalized 2-cocycles over
// Z/|G| with the universal-coefficient correction) is an independent oracle
// for orders up to limits.dual_cap.
class SchurEngine {
public:
    explicit SchurEngine(Limits limits = {}, std::vector<MultiplierFact> table = {});

    // H_2(G; Z): bar resolution when |G| <= bar_cap, otherwise a curated
    // table lookup (verified by isomorphism).  Results are cached.
    AbelianGroup multiplier(const PermGroup& g);

    // Force the bar resolution, ignoring the table.
    AbelianGroup multiplier_bar(const PermGroup& g);

    // Independent cross-check via the cocycle side.
    AbelianGroup multiplier_dual(const PermGroup& g);

    // Where the last multiplier() answer came from: "bar", "table", "cache".
    const std::string& last_source() const noexcept { return last_source_; }

    const Limits& limits() const noexcept { return limits_; }
    const std::vector<MultiplierFact>& table() const noexcept { return table_; }

private:
    Limits limits_;
    std::vector<MultiplierFact> table_;
    struct CacheEntry {
        PermGroup group;
        AbelianGroup multiplier;
    };
    std::vector<CacheEntry> cache_;
    std::string last_source_ = "";
};

} // namespace locell
