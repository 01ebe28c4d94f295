#include "locell/perm_group.hpp"

#include "locell/errors.hpp"

#include <algorithm>
#include <deque>

namespace locell {

void StabilizerChain::rebuild_orbit(std::size_t level) {
    ChainLevel& lvl = levels_[level];
    lvl.orbit.clear();
    lvl.tree_gen.assign(degree_, -2);
    lvl.tree_from.assign(degree_, 0);
    lvl.orbit.push_back(lvl.base_point);
    lvl.tree_gen[lvl.base_point] = -1;
    for (std::size_t head = 0; head < lvl.orbit.size(); ++head) {
        std::uint32_t pt = lvl.orbit[head];
        for (std::size_t gi = 0; gi < lvl.gen_ids.size(); ++gi) {
            std::uint32_t img = sgens_[lvl.gen_ids[gi]](pt);
            if (lvl.tree_gen[img] == -2) {
                lvl.tree_gen[img] = static_cast<std::int32_t>(gi);
                lvl.tree_from[img] = pt;
                lvl.orbit.push_back(img);
            }
        }
    }
}

Permutation StabilizerChain::transversal(std::size_t level, std::uint32_t pt) const {
    const ChainLevel& lvl = levels_[level];
    std::vector<std::int32_t> path;
    std::uint32_t cur = pt;
    while (lvl.tree_gen[cur] != -1) {
        path.push_back(lvl.tree_gen[cur]);
        cur = lvl.tree_from[cur];
    }
    Permutation u(degree_);
    for (auto it = path.rbegin(); it != path.rend(); ++it)
        u = u * sgens_[lvl.gen_ids[static_cast<std::size_t>(*it)]];
    return u;
}

StabilizerChain::StabilizerChain(std::vector<Permutation> gens, std::uint32_t degree)
    : degree_(degree) {
    for (const auto& g : gens) {
        if (g.degree() != degree_)
            throw DomainError("generator degree mismatch in stabilizer chain");
        extend(g);
    }
}

std::uint64_t StabilizerChain::order() const {
    std::uint64_t n = 1;
    for (const auto& lvl : levels_)
        n *= lvl.orbit.size();
    return n;
}

std::pair<Permutation, std::size_t> StabilizerChain::sift_from(Permutation h, std::size_t start) const {
    for (std::size_t i = start; i < levels_.size(); ++i) {
        const ChainLevel& lvl = levels_[i];
        std::uint32_t p = h(lvl.base_point);
        if (p == lvl.base_point) continue;
        if (!lvl.in_orbit(p))
            return {std::move(h), i};
        // Multiply by inverses of tree generators to pull p back to the base:
        // this composes h with the inverse transversal element.
        while (p != lvl.base_point) {
            const Permutation& inv = sgen_invs_[lvl.gen_ids[static_cast<std::size_t>(lvl.tree_gen[p])]];
            h = h * inv;
            p = inv(p);
        }
    }
    return {std::move(h), levels_.size()};
}

std::pair<Permutation, std::size_t> StabilizerChain::sift(const Permutation& g) const {
    return sift_from(g, 0);
}

bool StabilizerChain::contains(const Permutation& g) const {
    if (g.degree() != degree_)
        return false;
    auto [residue, lvl] = sift(g);
    (void)lvl;
    return residue.is_identity();
}

void StabilizerChain::add_generator_at(const Permutation& g, std::size_t level) {
    if (level == levels_.size()) {
        ChainLevel lvl;
        lvl.base_point = g.first_moved();
        levels_.push_back(std::move(lvl));
    }
    std::uint32_t id = static_cast<std::uint32_t>(sgens_.size());
    sgens_.push_back(g);
    sgen_invs_.push_back(g.inverse());
    sgen_depth_.push_back(level);
    // The new generator fixes the base prefix up to its level, so it acts at
    // every level from the top down to there.
    for (std::size_t i = 0; i <= level; ++i) {
        levels_[i].gen_ids.push_back(id);
        rebuild_orbit(i);
    }
}

bool StabilizerChain::close_level(std::size_t i, std::size_t& grew_at) {
    // Test every Schreier generator of level i against the chain below it.
    // On the first failure the residue joins the chain at the level where it
    // stuck and we report back so the caller can resume from there.  Every
    // addition strictly grows an orbit, so the outer loop terminates.
    const ChainLevel& lvl = levels_[i];
    for (std::size_t oi = 0; oi < lvl.orbit.size(); ++oi) {
        std::uint32_t pt = lvl.orbit[oi];
        Permutation u = transversal(i, pt);
        for (std::uint32_t gid : lvl.gen_ids) {
            Permutation us = u * sgens_[gid];
            std::uint32_t img = us(lvl.base_point);
            Permutation schreier = us * transversal(i, img).inverse();
            auto [residue, stuck] = sift_from(std::move(schreier), i + 1);
            if (!residue.is_identity()) {
                add_generator_at(residue, stuck);
                grew_at = stuck;
                return false;
            }
        }
    }
    return true;
}

bool StabilizerChain::extend(const Permutation& g) {
    if (g.degree() != degree_)
        throw DomainError("generator degree mismatch in stabilizer chain");
    if (g.is_identity())
        return false;
    auto [residue, level] = sift(g);
    if (residue.is_identity())
        return false;
    add_generator_at(residue, level);
    // Re-verify from the changed level back up to the top.  Verified levels
    // stay valid when deeper groups grow, so walking i down to zero with
    // jumps back to wherever an addition lands is enough.
    std::size_t i = level >= levels_.size() ? levels_.size() - 1 : level;
    while (true) {
        std::size_t grew_at = 0;
        if (close_level(i, grew_at)) {
            if (i == 0) break;
            --i;
        } else {
            i = grew_at >= levels_.size() ? levels_.size() - 1 : grew_at;
        }
    }
    return true;
}

Permutation StabilizerChain::element(std::uint64_t index) const {
    Permutation e(degree_);
    // Digits from level 0 upward, least significant first; fold transversals
    // from the deepest level so that e = u_deep * ... * u_0.
    std::vector<std::uint32_t> digit(levels_.size());
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        std::uint64_t radix = levels_[i].orbit.size();
        digit[i] = static_cast<std::uint32_t>(index % radix);
        index /= radix;
    }
    if (index != 0)
        throw DomainError("element index out of range");
    for (std::size_t i = levels_.size(); i-- > 0;) {
        const ChainLevel& lvl = levels_[i];
        e = e * transversal(i, lvl.orbit[digit[i]]);
    }
    return e;
}

PermGroup::PermGroup() : degree_(1) {}

PermGroup::PermGroup(std::vector<Permutation> gens, std::uint32_t min_degree)
    : degree_(min_degree) {
    for (const auto& g : gens)
        degree_ = std::max(degree_, g.degree());
    if (degree_ == 0)
        degree_ = 1;
    gens_.reserve(gens.size());
    for (auto& g : gens) {
        Permutation ext = g.degree() == degree_ ? std::move(g) : g.extended(degree_);
        if (!ext.is_identity())
            gens_.push_back(std::move(ext));
    }
}

PermGroup PermGroup::trivial(std::uint32_t degree) {
    return PermGroup({}, std::max(degree, 1u));
}

PermGroup PermGroup::cyclic(std::uint64_t n) {
    if (n == 0)
        throw DomainError("cyclic group order must be positive");
    if (n == 1)
        return trivial();
    std::vector<std::uint32_t> img(n);
    for (std::uint64_t i = 0; i < n; ++i)
        img[i] = static_cast<std::uint32_t>((i + 1) % n);
    return PermGroup({Permutation::from_images(std::move(img))});
}

PermGroup PermGroup::symmetric(std::uint32_t n) {
    if (n < 2)
        return trivial(std::max(n, 1u));
    std::vector<Permutation> gens;
    std::vector<std::uint32_t> cyc(n);
    for (std::uint32_t i = 0; i < n; ++i)
        cyc[i] = (i + 1) % n;
    gens.push_back(Permutation::from_images(cyc));
    if (n > 2) {
        std::vector<std::uint32_t> swap01(n);
        for (std::uint32_t i = 0; i < n; ++i)
            swap01[i] = i;
        swap01[0] = 1; swap01[1] = 0;
        gens.push_back(Permutation::from_images(swap01));
    }
    return PermGroup(std::move(gens));
}

PermGroup PermGroup::alternating(std::uint32_t n) {
    if (n < 3)
        return trivial(std::max(n, 1u));
    std::vector<Permutation> gens;
    // 3-cycle (0 1 2) plus, for n > 3, an n-cycle (n odd) or the
    // (n-1)-cycle on {1,...,n-1} (n even).
    gens.push_back(Permutation::from_cycles("(0 1 2)", n));
    if (n > 3) {
        std::vector<std::uint32_t> img(n);
        if (n % 2 == 1) {
            for (std::uint32_t i = 0; i < n; ++i)
                img[i] = (i + 1) % n;
        } else {
            img[0] = 0;
            for (std::uint32_t i = 1; i < n; ++i)
                img[i] = i % (n - 1) + 1;
        }
        gens.push_back(Permutation::from_images(img));
    }
    return PermGroup(std::move(gens));
}

PermGroup PermGroup::dihedral(std::uint32_t n) {
    if (n < 3)
        throw DomainError("dihedral group needs n >= 3");
    std::vector<std::uint32_t> rot(n), refl(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        rot[i] = (i + 1) % n;
        refl[i] = (n - i) % n;
    }
    return PermGroup({Permutation::from_images(rot), Permutation::from_images(refl)});
}

PermGroup PermGroup::quaternion8() {
    // Regular representation of Q8 on the eight elements
    // {1, i, j, k, -1, -i, -j, -k} in that labelling.
    Permutation i8 = Permutation::from_cycles("(0 1 4 5)(2 7 6 3)");
    Permutation j8 = Permutation::from_cycles("(0 2 4 6)(1 3 5 7)");
    return PermGroup({i8, j8});
}

const StabilizerChain& PermGroup::chain() const {
    if (!chain_)
        chain_ = std::make_shared<StabilizerChain>(gens_, degree_);
    return *chain_;
}

std::uint64_t PermGroup::order() const {
    return chain().order();
}

bool PermGroup::contains(const Permutation& g) const {
    if (g.degree() != degree_) {
        if (g.degree() < degree_)
            return contains(g.extended(degree_));
        // Higher-degree element can only belong if it fixes the extra points.
        for (std::uint32_t x = degree_; x < g.degree(); ++x)
            if (g(x) != x) return false;
        std::vector<std::uint32_t> img(g.images().begin(), g.images().begin() + degree_);
        return contains(Permutation::from_images(std::move(img)));
    }
    return chain().contains(g);
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
    for (const auto& g : gens_)
        if (!other.contains(g)) return false;
    return true;
}

Permutation PermGroup::element_at(std::uint64_t index) const {
    return chain().element(index);
}

std::vector<Permutation> PermGroup::elements(const Limits& limits) const {
    std::uint64_t n = order();
    if (n > limits.element_cap)
        throw CapError("group too large to enumerate: order " + std::to_string(n),
                       "element_cap", static_cast<long long>(limits.element_cap));
    std::vector<Permutation> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i)
        out.push_back(chain().element(i));
    return out;
}

} // namespace locell
