#include "locell/exponent_p.hpp"

#include "locell/errors.hpp"
#include "locell/group_ops.hpp"
#include "locell/kernels.hpp"
#include "locell/todd_coxeter.hpp"

#include <algorithm>

namespace locell {

namespace {

// Reduced words of length <= max_len over rank generators, shortest first,
// one representative per inversion pair (a word and its inverse give the
// same power relator).
std::vector<Word> short_words(std::uint32_t rank, std::uint32_t max_len) {
    std::vector<Word> out;
    std::vector<Word> layer{Word::one()};
    for (std::uint32_t len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer) {
            for (std::uint32_t g = 0; g < rank; ++g) {
                for (std::int32_t sign : {1, -1}) {
                    std::int32_t letter = sign * static_cast<std::int32_t>(g + 1);
                    if (!w.letters.empty() && w.letters.back() == -letter)
                        continue;
                    Word v = w;
                    v.letters.push_back(letter);
                    next.push_back(std::move(v));
                }
            }
        }
        for (const auto& w : next) {
            if (w.inverse().letters < w.letters)
                continue;   // keep the lexicographically smaller of w, w^-1
            out.push_back(w);
        }
        layer = std::move(next);
    }
    return out;
}

} // namespace

bool has_exponent_p(const PermGroup& g, std::uint64_t p, const Limits& limits) {
    std::uint64_t n = g.order();
    if (n > limits.element_cap)
        throw CapError("exponent check needs full enumeration", "element_cap",
                       static_cast<long long>(limits.element_cap));
    auto orders = kernels::element_orders(g.chain(), n);
    for (std::uint64_t o : orders)
        if (o != 1 && o != p)
            return false;
    return true;
}

PermGroup exponent_p_quotient(std::uint32_t rank, std::uint64_t p, const Limits& limits) {
    if (!is_prime(p))
        throw DomainError("exponent must be prime here");
    if (rank == 0)
        return PermGroup::trivial();

    Presentation pres;
    for (std::uint32_t i = 0; i < rank; ++i)
        pres.gen_names.push_back(std::string(1, static_cast<char>('a' + i % 26)) +
                                 (i >= 26 ? std::to_string(i / 26) : ""));

    // Saturate with p-th powers of ever longer words under a growing coset
    // budget.  If enumeration closes, the group maps onto the full
    // exponent-p quotient; when it itself has exponent p the two coincide.
    const std::uint32_t budgets[] = {1u << 15, 1u << 19, 0u};
    for (std::uint32_t budget : budgets) {
        Limits attempt = limits;
        attempt.max_cosets = budget == 0 ? limits.max_cosets
                                         : std::min<std::uint32_t>(budget, limits.max_cosets);
        for (std::uint32_t max_len = 1; max_len <= 4; ++max_len) {
            pres.relators.clear();
            for (const auto& w : short_words(rank, max_len))
                pres.relators.push_back(w.pow(static_cast<std::int64_t>(p)));
            try {
                CosetTable t = coset_enumeration(pres, {}, attempt);
                if (t.index > limits.degree_cap)
                    throw CapError("quotient degree " + std::to_string(t.index),
                                   "degree_cap", static_cast<long long>(limits.degree_cap));
                PermGroup g = coset_action(t);
                if (has_exponent_p(g, p, limits))
                    return g;
                // Finite but with elements of larger order: need more
                // relators, keep going.
            } catch (const CapError& e) {
                if (std::string(e.cap_name()) != "max_cosets")
                    throw;
                // Table blew the current budget; lengthen relators.
            }
        }
    }
    throw CapError("exponent-" + std::to_string(p) + " quotient of rank " +
                       std::to_string(rank) + " did not close within the coset budget",
                   "max_cosets", static_cast<long long>(limits.max_cosets));
}

PermGroup reduce_exponent_p_finite(const PermGroup& g, std::uint64_t p, const Limits& limits) {
    if (!is_prime(p))
        throw DomainError("exponent must be prime here");
    std::uint64_t n = g.order();
    if (n > limits.element_cap)
        throw CapError("power subgroup needs full enumeration", "element_cap",
                       static_cast<long long>(limits.element_cap));
    // The set of p-th powers is closed under conjugation, so the subgroup it
    // generates is already normal.
    StabilizerChain chain({}, g.degree());
    std::vector<Permutation> gens;
    for (std::uint64_t i = 0; i < n; ++i) {
        Permutation e = g.element_at(i);
        Permutation ep = e;
        for (std::uint64_t k = 1; k < p; ++k)
            ep = ep * e;
        if (chain.extend(ep))
            gens.push_back(std::move(ep));
    }
    PermGroup powers(std::move(gens), g.degree());
    return quotient(g, powers, limits);
}

} // namespace locell
