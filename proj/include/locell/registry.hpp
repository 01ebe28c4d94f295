#pragma once

#include "locell/functors.hpp"
#include "locell/homology.hpp"
#include "locell/limits.hpp"
#include "locell/perm_group.hpp"
#include "locell/words.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace locell {

enum class EntryKind {
    Perm,     // explicit permutation generators
    Pres,     // finite presentation, realized by coset enumeration at load
    FpOnly,   // presentation kept symbolic, possibly infinite; never realized
    Product,  // direct product of previously defined labels
};

struct RegistryEntry {
    std::string label;
    EntryKind kind = EntryKind::Perm;
    std::string body;                            // text between the brackets
    std::optional<std::uint64_t> expected_order;
    std::optional<std::uint64_t> expected_center_order;
    std::optional<std::uint32_t> max_cosets;     // per-entry enumeration ceiling
    std::string citation;                        // trailing comment on the line
};

// One line of the cover table, kept alongside the validated fact so the
// catalogue can be written back out verbatim.
struct CoverEntry {
    std::int64_t p = 0;
    std::string body;        // presentation text of the cover
    CoverFact fact;
};

// A named-group catalogue plus the multiplier and cover tables that feed
// SchurEngine and FunctorEngine.  Immutable once loaded; concurrent reads
// are safe.
class Catalogue {
public:
    const std::vector<RegistryEntry>& entries() const noexcept { return entries_; }
    bool has(const std::string& label) const;
    const RegistryEntry& entry(const std::string& label) const;

    // Realized permutation group; DomainError for fp-only entries.
    const PermGroup& realization(const std::string& label) const;
    // The presentation behind a pres or fp-only entry; DomainError otherwise.
    const Presentation& presentation(const std::string& label) const;

    const std::vector<MultiplierFact>& multipliers() const noexcept { return multipliers_; }
    const std::vector<CoverEntry>& cover_entries() const noexcept { return cover_entries_; }
    std::vector<CoverFact> covers() const;

    // An engine wired with this catalogue's tables.
    FunctorEngine make_engine(const Limits& limits = {}) const;

private:
    friend Catalogue load_registry(const std::filesystem::path&, const Limits&);

    std::vector<RegistryEntry> entries_;
    std::map<std::string, std::size_t> index_;
    std::map<std::string, PermGroup> realizations_;
    std::map<std::string, Presentation> presentations_;
    std::vector<MultiplierFact> multipliers_;
    std::vector<CoverEntry> cover_entries_;
};

// Load `groups.reg` from the directory, plus `multipliers.reg` and
// `covers.reg` when present.  Every entry is realized and every declared
// expectation checked; a failure aborts the load with the entry named.
//
// Line formats:
//   groups.reg       label := perm[(0 1 2)(3 4), ...]
//                    label := pres[a, b; a^3, (a*b)^2] expect order=6 center=1
//                    label := fp[a, b;]
//                    label := product[L1, L2] expect order=12
//   multipliers.reg  label: inv,inv,...   (1 for a trivial multiplier)
//   covers.reg       base, p, [inv,...] -> label: gens; rels
// `#` starts a comment anywhere; a trailing comment on an entry line is kept
// as its citation.
Catalogue load_registry(const std::filesystem::path& dir, const Limits& limits = {});

// Write the three files back into the directory (created if needed).
// Reloading the result reproduces the catalogue up to isomorphism.
void save_registry(const Catalogue& catalogue, const std::filesystem::path& dir);

} // namespace locell
