#include "locell/group_ops.hpp"

#include "locell/errors.hpp"
#include "locell/kernels.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace locell {

namespace {

Permutation conjugate(const Permutation& x, const Permutation& by) {
    return by.inverse() * x * by;
}

Permutation commutator(const Permutation& a, const Permutation& b) {
    return a.inverse() * b.inverse() * a * b;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& elems) {
    const std::uint32_t degree = g.degree();
    std::vector<Permutation> closure_gens;
    StabilizerChain chain({}, degree);
    std::vector<Permutation> queue;
    for (const auto& e : elems) {
        Permutation x = e.degree() == degree ? e : e.extended(degree);
        if (chain.extend(x)) {
            closure_gens.push_back(x);
            queue.push_back(x);
        }
    }
    // Conjugating by the generators suffices: in a finite group H^g <= H for
    // every generator forces H^g = H.
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Permutation q = queue[head];
        for (const auto& ggen : g.generators()) {
            Permutation c = conjugate(q, ggen);
            if (chain.extend(c)) {
                closure_gens.push_back(c);
                queue.push_back(c);
            }
        }
    }
    return PermGroup(std::move(closure_gens), degree);
}

PermGroup derived_subgroup(const PermGroup& g) {
    std::vector<Permutation> comms;
    const auto& gens = g.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            comms.push_back(commutator(gens[i], gens[j]));
    return normal_closure(g, comms);
}

std::int32_t derived_length(const PermGroup& g) {
    PermGroup cur = g;
    std::int32_t len = 0;
    while (cur.order() > 1) {
        PermGroup next = derived_subgroup(cur);
        if (next.order() == cur.order())
            return -1;
        cur = std::move(next);
        ++len;
    }
    return len;
}

std::vector<PermGroup> lower_central_series(const PermGroup& g, std::size_t max_terms) {
    std::vector<PermGroup> series;
    series.push_back(g);
    while (series.size() < max_terms) {
        const PermGroup& cur = series.back();
        std::vector<Permutation> comms;
        for (const auto& a : cur.generators())
            for (const auto& b : g.generators())
                comms.push_back(commutator(a, b));
        PermGroup next = normal_closure(g, comms);
        if (next.order() == cur.order())
            break;
        series.push_back(std::move(next));
        if (series.back().order() == 1)
            break;
    }
    return series;
}

std::int32_t nilpotency_class(const PermGroup& g, std::size_t max_terms) {
    auto series = lower_central_series(g, max_terms);
    if (series.back().order() != 1)
        return -1;
    return static_cast<std::int32_t>(series.size()) - 1;
}

bool is_abelian(const PermGroup& g) {
    const auto& gens = g.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!(gens[i] * gens[j] == gens[j] * gens[i]))
                return false;
    return true;
}

PermGroup center(const PermGroup& g, const Limits& limits) {
    if (is_abelian(g))
        return g;
    std::uint64_t n = g.order();
    if (n > limits.element_cap)
        throw CapError("center scan needs full enumeration: order " + std::to_string(n),
                       "element_cap", static_cast<long long>(limits.element_cap));
    std::vector<Permutation> central;
    for (std::uint64_t i = 0; i < n; ++i) {
        Permutation e = g.element_at(i);
        bool commutes = true;
        for (const auto& gen : g.generators()) {
            if (!(e * gen == gen * e)) { commutes = false; break; }
        }
        if (commutes && !e.is_identity())
            central.push_back(std::move(e));
    }
    return PermGroup(std::move(central), g.degree());
}

bool is_normal_subgroup(const PermGroup& g, const PermGroup& n) {
    if (!n.is_subgroup_of(g))
        return false;
    for (const auto& x : g.generators())
        for (const auto& m : n.generators())
            if (!n.contains(conjugate(m.degree() == x.degree() ? m : m.extended(x.degree()), x)))
                return false;
    return true;
}

namespace {

// Canonical representative of the coset N*x: walk N's stabilizer chain,
// at each level pick the transversal element minimizing the image of that
// level's base point.  The result depends only on the coset.
Permutation canonical_coset_rep(const StabilizerChain& nchain, Permutation x) {
    for (std::size_t i = 0; i < nchain.base_length(); ++i) {
        const ChainLevel& lvl = nchain.level(i);
        std::uint32_t best_pt = lvl.orbit[0];
        std::uint32_t best_val = x(lvl.orbit[0]);
        for (std::uint32_t q : lvl.orbit) {
            std::uint32_t v = x(q);
            if (v < best_val) { best_val = v; best_pt = q; }
        }
        if (best_pt != lvl.base_point)
            x = nchain.transversal(i, best_pt) * x;
    }
    return x;
}

} // namespace

PermGroup quotient(const PermGroup& g, const PermGroup& n, const Limits& limits) {
    if (!is_normal_subgroup(g, n))
        throw DomainError("quotient requires a normal subgroup");
    std::uint64_t gn = g.order(), nn = n.order();
    if (nn == 1)
        return g;
    if (nn == gn)
        return PermGroup::trivial();
    std::uint64_t index = gn / nn;
    if (index > limits.degree_cap)
        throw CapError("quotient would act on " + std::to_string(index) + " cosets",
                       "degree_cap", static_cast<long long>(limits.degree_cap));

    // N's chain must live on g's degree for the rep walk.
    PermGroup nn_ext = n.degree() == g.degree()
        ? n
        : PermGroup(n.generators(), g.degree());
    const StabilizerChain& nchain = nn_ext.chain();

    std::vector<Permutation> reps;
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> seen;
    reps.push_back(canonical_coset_rep(nchain, g.identity()));
    seen.emplace(reps[0], 0);
    std::vector<std::vector<std::uint32_t>> action(g.generators().size());

    for (std::size_t head = 0; head < reps.size(); ++head) {
        Permutation r = reps[head];
        for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
            Permutation t = canonical_coset_rep(nchain, r * g.generators()[gi]);
            auto it = seen.find(t);
            std::uint32_t idx;
            if (it == seen.end()) {
                idx = static_cast<std::uint32_t>(reps.size());
                reps.push_back(t);
                seen.emplace(std::move(t), idx);
            } else {
                idx = it->second;
            }
            action[gi].push_back(idx);
        }
    }
    if (reps.size() != index)
        throw ValidationError("coset count mismatch while building quotient");

    std::vector<Permutation> qgens;
    for (auto& images : action)
        qgens.push_back(Permutation::from_images(std::move(images)));
    PermGroup q(std::move(qgens), static_cast<std::uint32_t>(index));
    if (q.order() != index)
        throw ValidationError("quotient action has wrong order");
    return q;
}

PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
    const std::uint32_t da = a.degree(), db = b.degree();
    std::vector<Permutation> gens;
    for (const auto& g : a.generators())
        gens.push_back(g.extended(da + db));
    for (const auto& h : b.generators()) {
        std::vector<std::uint32_t> img(da + db);
        for (std::uint32_t i = 0; i < da; ++i) img[i] = i;
        for (std::uint32_t i = 0; i < db; ++i) img[da + i] = da + h(i);
        gens.push_back(Permutation::from_images(std::move(img)));
    }
    return PermGroup(std::move(gens), da + db);
}

std::vector<Permutation> elements_of_order(const PermGroup& g, std::uint64_t target, const Limits& limits) {
    std::uint64_t n = g.order();
    if (n > limits.element_cap)
        throw CapError("element scan: order " + std::to_string(n),
                       "element_cap", static_cast<long long>(limits.element_cap));
    auto orders = kernels::element_orders(g.chain(), n);
    std::vector<Permutation> out;
    for (std::uint64_t i = 0; i < n; ++i)
        if (orders[i] == target)
            out.push_back(g.element_at(i));
    return out;
}

std::vector<Permutation> elements_of_p_power_order(const PermGroup& g, std::uint64_t p, const Limits& limits) {
    if (!is_prime(p))
        throw DomainError("p must be prime");
    std::uint64_t n = g.order();
    if (n > limits.element_cap)
        throw CapError("element scan: order " + std::to_string(n),
                       "element_cap", static_cast<long long>(limits.element_cap));
    auto orders = kernels::element_orders(g.chain(), n);
    std::vector<Permutation> out;
    for (std::uint64_t i = 0; i < n; ++i) {
        std::uint64_t o = orders[i];
        if (o == 1) continue;
        while (o % p == 0) o /= p;
        if (o == 1)
            out.push_back(g.element_at(i));
    }
    return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> element_order_histogram(const PermGroup& g, const Limits& limits) {
    std::uint64_t n = g.order();
    if (n > limits.element_cap)
        throw CapError("element scan: order " + std::to_string(n),
                       "element_cap", static_cast<long long>(limits.element_cap));
    auto orders = kernels::element_orders(g.chain(), n);
    std::map<std::uint64_t, std::uint64_t> hist;
    for (std::uint64_t o : orders)
        ++hist[o];
    return {hist.begin(), hist.end()};
}

PermGroup reduce_degree(const PermGroup& g) {
    const std::uint32_t deg = g.degree();
    // Orbits of the action on all points.
    std::vector<std::int32_t> orbit_of(deg, -1);
    std::vector<std::vector<std::uint32_t>> orbits;
    for (std::uint32_t start = 0; start < deg; ++start) {
        if (orbit_of[start] != -1) continue;
        std::int32_t id = static_cast<std::int32_t>(orbits.size());
        orbits.push_back({start});
        orbit_of[start] = id;
        for (std::size_t head = 0; head < orbits.back().size(); ++head) {
            std::uint32_t pt = orbits.back()[head];
            for (const auto& gen : g.generators()) {
                std::uint32_t img = gen(pt);
                if (orbit_of[img] == -1) {
                    orbit_of[img] = id;
                    orbits.back().push_back(img);
                }
            }
        }
    }
    std::uint64_t target = g.order();
    std::vector<bool> dropped(orbits.size(), false);
    // Try dropping orbits from largest to smallest; keep a drop whenever the
    // restricted action still has full order.
    std::vector<std::size_t> by_size(orbits.size());
    for (std::size_t i = 0; i < orbits.size(); ++i) by_size[i] = i;
    std::stable_sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) {
        return orbits[a].size() > orbits[b].size();
    });
    auto restricted_group = [&]() -> PermGroup {
        std::vector<std::uint32_t> newpos(deg, 0);
        std::uint32_t kept = 0;
        for (std::uint32_t pt = 0; pt < deg; ++pt)
            if (!dropped[static_cast<std::size_t>(orbit_of[pt])])
                newpos[pt] = kept++;
        if (kept == 0)
            return PermGroup::trivial();
        std::vector<Permutation> gens;
        for (const auto& gen : g.generators()) {
            std::vector<std::uint32_t> img(kept);
            for (std::uint32_t pt = 0; pt < deg; ++pt)
                if (!dropped[static_cast<std::size_t>(orbit_of[pt])])
                    img[newpos[pt]] = newpos[gen(pt)];
            gens.push_back(Permutation::from_images(std::move(img)));
        }
        return PermGroup(std::move(gens), kept);
    };
    PermGroup best = g;
    for (std::size_t oi : by_size) {
        if (orbits.size() - static_cast<std::size_t>(std::count(dropped.begin(), dropped.end(), true)) == 1)
            break;
        dropped[oi] = true;
        PermGroup candidate = restricted_group();
        if (candidate.order() == target)
            best = std::move(candidate);
        else
            dropped[oi] = false;
    }
    return best;
}

} // namespace locell
