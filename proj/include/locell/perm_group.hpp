#pragma once

#include "locell/limits.hpp"
#include "locell/permutation.hpp"

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace locell {

// One level of a stabilizer chain: a base point, the ids of the strong
// generators fixing all earlier base points, and a Schreier tree for the
// orbit of the base point under those generators.
struct ChainLevel {
    std::uint32_t base_point = 0;
    std::vector<std::uint32_t> gen_ids;     // into the chain's strong generator list
    std::vector<std::uint32_t> orbit;       // BFS order, orbit[0] == base_point
    std::vector<std::int32_t> tree_gen;     // index into gen_ids, -1 at base, -2 outside orbit
    std::vector<std::uint32_t> tree_from;   // predecessor point in the Schreier tree

    bool in_orbit(std::uint32_t pt) const { return tree_gen[pt] != -2; }
};

// Deterministic Schreier-Sims.  Given the same generators in the same order,
// the chain, the element order and all downstream output are reproducible.
class StabilizerChain {
public:
    StabilizerChain(std::vector<Permutation> gens, std::uint32_t degree);

    std::uint32_t degree() const noexcept { return degree_; }
    std::uint64_t order() const;
    bool contains(const Permutation& g) const;

    // Extends the group by g if not already a member; returns true if grown.
    bool extend(const Permutation& g);

    std::size_t base_length() const noexcept { return levels_.size(); }
    const ChainLevel& level(std::size_t i) const { return levels_[i]; }

    // Transversal element u at the given level with u(base_point) = pt.
    Permutation transversal(std::size_t level, std::uint32_t pt) const;

    // Random access into the element list in a fixed mixed-radix order.
    // index ranges over [0, order()).
    Permutation element(std::uint64_t index) const;

    // Residue of sifting g through the chain and the level where it stuck.
    std::pair<Permutation, std::size_t> sift(const Permutation& g) const;

private:
    std::pair<Permutation, std::size_t> sift_from(Permutation h, std::size_t start) const;
    void add_generator_at(const Permutation& g, std::size_t level);
    void rebuild_orbit(std::size_t level);
    bool close_level(std::size_t i, std::size_t& grew_at);

    std::uint32_t degree_;
    // Strong generators; sgen_depth_[k] is the deepest level whose base
    // prefix sgens_[k] fixes, i.e. the level the generator was added at.
    std::vector<Permutation> sgens_, sgen_invs_;
    std::vector<std::size_t> sgen_depth_;
    std::vector<ChainLevel> levels_;
};

// A finite permutation group with cached structural data.  Copies are cheap
// (shared immutable state).
class PermGroup {
public:
    PermGroup();                                               // trivial group on 1 point
    explicit PermGroup(std::vector<Permutation> gens, std::uint32_t min_degree = 0);

    static PermGroup trivial(std::uint32_t degree = 1);
    static PermGroup cyclic(std::uint64_t n);
    static PermGroup symmetric(std::uint32_t n);
    static PermGroup alternating(std::uint32_t n);
    static PermGroup dihedral(std::uint32_t n);                // order 2n, n >= 3
    static PermGroup quaternion8();

    std::uint32_t degree() const noexcept { return degree_; }
    const std::vector<Permutation>& generators() const noexcept { return gens_; }

    std::uint64_t order() const;
    bool contains(const Permutation& g) const;
    bool is_trivial() const { return order() == 1; }
    bool is_subgroup_of(const PermGroup& other) const;

    const StabilizerChain& chain() const;
    Permutation identity() const { return Permutation(degree_); }

    // Element at a fixed position in the enumeration order; index < order().
    Permutation element_at(std::uint64_t index) const;
    // All elements, in the enumeration order.  Guarded by limits.element_cap.
    std::vector<Permutation> elements(const Limits& limits = {}) const;

private:
    std::uint32_t degree_;
    std::vector<Permutation> gens_;
    mutable std::shared_ptr<StabilizerChain> chain_;
};

} // namespace locell
