#include "locell/abelian.hpp"

#include "locell/errors.hpp"
#include "locell/group_ops.hpp"
#include "locell/intmat.hpp"

#include <algorithm>
#include <unordered_map>

namespace locell {

AbelianGroup AbelianGroup::from_orders(const std::vector<std::int64_t>& orders) {
    // Split into prime powers, then rebuild the invariant chain by pairing
    // the largest power of each prime into the last factor and so on.
    std::map<std::int64_t, std::vector<std::uint32_t>> primary;
    for (std::int64_t n : orders) {
        if (n < 0)
            throw DomainError("negative cyclic order");
        if (n == 0)
            throw DomainError("infinite cyclic factor not supported here");
        std::int64_t rest = n;
        for (std::int64_t p = 2; p * p <= rest; ++p) {
            if (rest % p) continue;
            std::uint32_t e = 0;
            while (rest % p == 0) { rest /= p; ++e; }
            primary[p].push_back(e);
        }
        if (rest > 1)
            primary[rest].push_back(1);
    }
    std::size_t count = 0;
    for (auto& [p, es] : primary) {
        (void)p;
        std::sort(es.begin(), es.end(), std::greater<>());
        count = std::max(count, es.size());
    }
    std::vector<std::int64_t> inv(count, 1);
    for (auto& [p, es] : primary)
        for (std::size_t i = 0; i < es.size(); ++i) {
            std::int64_t pw = 1;
            for (std::uint32_t k = 0; k < es[i]; ++k) pw *= p;
            inv[i] *= pw;
        }
    // inv[0] is the largest factor; flip to ascending divisibility order.
    std::reverse(inv.begin(), inv.end());
    AbelianGroup a;
    a.inv_ = std::move(inv);
    return a;
}

std::uint64_t AbelianGroup::order() const {
    std::uint64_t n = 1;
    for (std::int64_t d : inv_) n *= static_cast<std::uint64_t>(d);
    return n;
}

std::map<std::int64_t, std::vector<std::uint32_t>> AbelianGroup::primary() const {
    std::map<std::int64_t, std::vector<std::uint32_t>> out;
    for (std::int64_t n : inv_) {
        std::int64_t rest = n;
        for (std::int64_t p = 2; p * p <= rest; ++p) {
            if (rest % p) continue;
            std::uint32_t e = 0;
            while (rest % p == 0) { rest /= p; ++e; }
            out[p].push_back(e);
        }
        if (rest > 1)
            out[rest].push_back(1);
    }
    for (auto& [p, es] : out) {
        (void)p;
        std::sort(es.begin(), es.end(), std::greater<>());
    }
    return out;
}

AbelianGroup AbelianGroup::socle_p(std::int64_t p) const {
    std::vector<std::int64_t> orders;
    for (std::int64_t d : inv_)
        if (d % p == 0) orders.push_back(p);
    return from_orders(orders);
}

AbelianGroup AbelianGroup::primary_part(std::int64_t p) const {
    std::vector<std::int64_t> orders;
    for (std::int64_t d : inv_) {
        std::int64_t pw = 1;
        while (d % p == 0) { d /= p; pw *= p; }
        if (pw > 1) orders.push_back(pw);
    }
    return from_orders(orders);
}

AbelianGroup AbelianGroup::away_from_p(std::int64_t p) const {
    std::vector<std::int64_t> orders;
    for (std::int64_t d : inv_) {
        while (d % p == 0) d /= p;
        if (d > 1) orders.push_back(d);
    }
    return from_orders(orders);
}

AbelianGroup AbelianGroup::mod_p(std::int64_t p) const {
    std::vector<std::int64_t> orders;
    for (std::int64_t d : inv_)
        if (d % p == 0) orders.push_back(p);
    return from_orders(orders);
}

std::string AbelianGroup::to_string() const {
    if (inv_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < inv_.size(); ++i) {
        if (i) out += " x ";
        out += "C" + std::to_string(inv_[i]);
    }
    return out;
}

AbelianGroup abelian_invariants(const PermGroup& g, const Limits& limits) {
    PermGroup q = is_abelian(g) ? g : quotient(g, derived_subgroup(g), limits);
    const auto& gens = q.generators();
    const std::size_t k = gens.size();
    if (k == 0)
        return AbelianGroup{};
    std::uint64_t n = q.order();
    if (n > limits.element_cap)
        throw CapError("abelianization too large to enumerate", "element_cap",
                       static_cast<long long>(limits.element_cap));

    // Walk the Cayley graph; tree edges define exponent vectors, non-tree
    // edges contribute relations, and together they generate the full
    // relation lattice of the abelian group.
    RowHnf lattice(k);
    std::unordered_map<Permutation, std::vector<std::int64_t>, PermutationHash> seen;
    std::vector<Permutation> queue;
    Permutation id = q.identity();
    seen.emplace(id, std::vector<std::int64_t>(k, 0));
    queue.push_back(id);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Permutation cur = queue[head];
        std::vector<std::int64_t> vec = seen.at(cur);   // copy: the map rehashes while we insert
        for (std::size_t i = 0; i < k; ++i) {
            Permutation next = cur * gens[i];
            std::vector<std::int64_t> w = vec;
            ++w[i];
            auto it = seen.find(next);
            if (it == seen.end()) {
                seen.emplace(next, std::move(w));
                queue.push_back(std::move(next));
            } else {
                std::vector<BigInt> rel(k);
                bool nonzero = false;
                for (std::size_t j = 0; j < k; ++j) {
                    rel[j] = w[j] - it->second[j];
                    if (rel[j] != 0) nonzero = true;
                }
                if (nonzero)
                    lattice.add_row(std::move(rel));
            }
        }
    }
    auto invs = cokernel_invariants(lattice);
    for (std::int64_t d : invs)
        if (d == 0)
            throw ValidationError("abelianization of a finite group came out infinite");
    AbelianGroup a = AbelianGroup::from_orders(invs);
    if (a.order() != n)
        throw ValidationError("abelian invariants do not match group order");
    return a;
}

PermGroup realize_abelian(const AbelianGroup& a) {
    PermGroup g = PermGroup::trivial();
    for (std::int64_t d : a.invariants())
        g = direct_product(g, PermGroup::cyclic(static_cast<std::uint64_t>(d)));
    return reduce_degree(g);
}

} // namespace locell
