#include "locell/isomorphism.hpp"

#include "locell/errors.hpp"
#include "locell/group_ops.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace locell {

std::string GroupFingerprint::to_string() const {
    std::ostringstream out;
    out << "order=" << order << " hist=";
    for (auto& [o, c] : order_histogram) out << o << ":" << c << ",";
    out << " center=" << center_order << " ab=";
    for (auto d : abelian_inv) out << d << ",";
    out << " dl=" << derived_length;
    return out.str();
}

GroupFingerprint fingerprint(const PermGroup& g, const Limits& limits) {
    GroupFingerprint fp;
    fp.order = g.order();
    fp.order_histogram = element_order_histogram(g, limits);
    fp.center_order = center(g, limits).order();
    fp.abelian_inv = abelian_invariants(g, limits).invariants();
    fp.derived_length = derived_length(g);
    return fp;
}

namespace {

// Conjugacy class sizes per element index, plus index lookup.
struct ClassData {
    std::vector<Permutation> elements;
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;
    std::vector<std::uint64_t> class_size;
    std::vector<std::uint64_t> order;
};

ClassData class_data(const PermGroup& g, const Limits& limits) {
    ClassData d;
    d.elements = g.elements(limits);
    d.index.reserve(d.elements.size());
    for (std::uint32_t i = 0; i < d.elements.size(); ++i)
        d.index.emplace(d.elements[i], i);
    d.class_size.assign(d.elements.size(), 0);
    d.order.resize(d.elements.size());
    for (std::uint32_t i = 0; i < d.elements.size(); ++i)
        d.order[i] = d.elements[i].order();
    std::vector<bool> visited(d.elements.size(), false);
    for (std::uint32_t i = 0; i < d.elements.size(); ++i) {
        if (visited[i]) continue;
        std::vector<std::uint32_t> members{i};
        visited[i] = true;
        for (std::size_t head = 0; head < members.size(); ++head) {
            const Permutation& x = d.elements[members[head]];
            for (const auto& gen : g.generators()) {
                Permutation y = gen.inverse() * x * gen;
                std::uint32_t yi = d.index.at(y);
                if (!visited[yi]) {
                    visited[yi] = true;
                    members.push_back(yi);
                }
            }
        }
        for (std::uint32_t m : members)
            d.class_size[m] = members.size();
    }
    return d;
}

std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t>>
class_histogram(const ClassData& d) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> h;
    for (std::size_t i = 0; i < d.elements.size(); ++i)
        ++h[{d.order[i], d.class_size[i]}];
    return {h.begin(), h.end()};
}

} // namespace

bool is_isomorphic(const PermGroup& a, const PermGroup& b, const Limits& limits) {
    std::uint64_t na = a.order(), nb = b.order();
    if (na != nb)
        return false;
    if (na > limits.iso_cap)
        throw CapError("isomorphism search: order " + std::to_string(na),
                       "iso_cap", static_cast<long long>(limits.iso_cap));
    if (na == 1)
        return true;
    if (fingerprint(a, limits) != fingerprint(b, limits))
        return false;
    if (is_abelian(a))
        return true;   // abelian invariants already agreed

    ClassData da = class_data(a, limits);
    ClassData db = class_data(b, limits);
    if (class_histogram(da) != class_histogram(db))
        return false;

    // Orders of the generator-prefix subgroups of a; the image prefix must
    // track these exactly for the map to extend to an isomorphism.
    const auto& agens = a.generators();
    std::vector<std::uint64_t> prefix_order;
    {
        StabilizerChain c({}, a.degree());
        for (const auto& g : agens) {
            c.extend(g);
            prefix_order.push_back(c.order());
        }
    }

    const std::uint32_t da_deg = a.degree(), db_deg = b.degree();
    auto embed = [&](const Permutation& x, const Permutation& y) {
        std::vector<std::uint32_t> img(da_deg + db_deg);
        for (std::uint32_t i = 0; i < da_deg; ++i) img[i] = x(i);
        for (std::uint32_t i = 0; i < db_deg; ++i) img[da_deg + i] = da_deg + y(i);
        return Permutation::from_images(std::move(img));
    };

    // Depth-first over candidate images with matching order and class size.
    std::vector<std::uint32_t> chosen(agens.size());
    auto search = [&](auto&& self, std::size_t depth, const StabilizerChain& diag,
                      const StabilizerChain& image) -> bool {
        if (depth == agens.size())
            return image.order() == nb;
        std::uint64_t want_order = agens[depth].order();
        std::uint32_t ai = da.index.at(agens[depth]);
        std::uint64_t want_class = da.class_size[ai];
        for (std::uint32_t cand = 0; cand < db.elements.size(); ++cand) {
            if (db.order[cand] != want_order || db.class_size[cand] != want_class)
                continue;
            StabilizerChain next_diag = diag;
            next_diag.extend(embed(agens[depth], db.elements[cand]));
            if (next_diag.order() != prefix_order[depth])
                continue;   // not the graph of a homomorphism
            StabilizerChain next_image = image;
            next_image.extend(db.elements[cand]);
            chosen[depth] = cand;
            if (self(self, depth + 1, next_diag, next_image))
                return true;
        }
        return false;
    };
    StabilizerChain diag0({}, da_deg + db_deg);
    StabilizerChain image0({}, db_deg);
    return search(search, 0, diag0, image0);
}

} // namespace locell
