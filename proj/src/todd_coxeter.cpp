#include "locell/todd_coxeter.hpp"

#include "locell/errors.hpp"
#include "locell/group_ops.hpp"

#include <deque>
#include <limits>

namespace locell {

namespace {

constexpr std::uint32_t UNDEF = std::numeric_limits<std::uint32_t>::max();

// HLT enumerator: scan every relator from every live coset, defining new
// cosets to fill gaps, with immediate deductions and eager coincidence
// merging through a union-find over coset ids.
struct Enumerator {
    std::uint32_t ngens;
    std::uint32_t width;                       // 2 * ngens
    std::vector<std::vector<std::uint32_t>> table;
    std::vector<std::uint32_t> parent;
    std::deque<std::pair<std::uint32_t, std::uint32_t>> pending;
    std::uint64_t defined = 1;
    const Limits& limits;

    Enumerator(std::uint32_t ngens_, const Limits& lim)
        : ngens(ngens_), width(2 * ngens_), limits(lim) {
        table.emplace_back(width, UNDEF);
        parent.push_back(0);
    }

    std::uint32_t col(std::int32_t letter) const {
        return letter > 0 ? static_cast<std::uint32_t>(letter - 1)
                          : ngens + static_cast<std::uint32_t>(-letter - 1);
    }
    std::uint32_t inv_col(std::uint32_t k) const {
        return k < ngens ? k + ngens : k - ngens;
    }

    std::uint32_t find(std::uint32_t c) {
        std::uint32_t root = c;
        while (parent[root] != root) root = parent[root];
        while (parent[c] != root) {
            std::uint32_t next = parent[c];
            parent[c] = root;
            c = next;
        }
        return root;
    }

    bool alive(std::uint32_t c) { return find(c) == c; }

    std::uint32_t new_coset() {
        if (table.size() >= limits.max_cosets)
            throw CapError("coset table exceeded " + std::to_string(limits.max_cosets) + " rows",
                           "max_cosets", static_cast<long long>(limits.max_cosets));
        std::uint32_t id = static_cast<std::uint32_t>(table.size());
        table.emplace_back(width, UNDEF);
        parent.push_back(id);
        ++defined;
        return id;
    }

    // Records a.k = b together with the inverse entry; disagreements
    // become coincidences.
    void set_entry(std::uint32_t a, std::uint32_t k, std::uint32_t b) {
        a = find(a); b = find(b);
        std::uint32_t& fwd = table[a][k];
        if (fwd == UNDEF) fwd = b;
        else if (find(fwd) != b) pending.emplace_back(find(fwd), b);
        std::uint32_t& rev = table[b][inv_col(k)];
        if (rev == UNDEF) rev = a;
        else if (find(rev) != a) pending.emplace_back(find(rev), a);
    }

    void process_coincidences() {
        while (!pending.empty()) {
            auto [x, y] = pending.front();
            pending.pop_front();
            x = find(x); y = find(y);
            if (x == y) continue;
            if (y < x) std::swap(x, y);   // keep the smaller id
            parent[y] = x;
            std::vector<std::uint32_t> row;
            row.swap(table[y]);
            for (std::uint32_t k = 0; k < width; ++k) {
                if (row[k] == UNDEF) continue;
                std::uint32_t target = find(row[k]);
                std::uint32_t& mine = table[x][k];
                if (mine == UNDEF) {
                    mine = target;
                    // The reverse entry of target must come back to x now.
                    std::uint32_t& rev = table[target][inv_col(k)];
                    if (rev == UNDEF) rev = x;
                    else if (find(rev) != x) pending.emplace_back(find(rev), x);
                } else if (find(mine) != target) {
                    pending.emplace_back(find(mine), target);
                }
            }
        }
    }

    // Scan word w from coset c and force closure, defining cosets as needed.
    void scan_and_fill(std::uint32_t c, const Word& w) {
        if (w.letters.empty()) return;
        while (true) {
            c = find(c);
            std::uint32_t f = c;
            std::size_t i = 0;
            // Forward as far as the table is defined.
            while (i < w.letters.size()) {
                std::uint32_t next = table[f][col(w.letters[i])];
                if (next == UNDEF) break;
                f = find(next);
                ++i;
            }
            if (i == w.letters.size()) {
                if (f != c) {
                    pending.emplace_back(f, c);
                    process_coincidences();
                }
                return;
            }
            // Backward from the far end.
            std::uint32_t b = c;
            std::size_t j = w.letters.size();
            while (j > i) {
                std::uint32_t prev = table[b][inv_col(col(w.letters[j - 1]))];
                if (prev == UNDEF) break;
                b = find(prev);
                --j;
            }
            if (j == i) {
                // Both scans meet on a defined path: forces f == b.
                pending.emplace_back(f, b);
                process_coincidences();
                return;
            }
            if (j == i + 1) {
                set_entry(f, col(w.letters[i]), b);
                process_coincidences();
                return;
            }
            // Gap of two or more: define one coset and rescan.
            std::uint32_t d = new_coset();
            set_entry(f, col(w.letters[i]), d);
            process_coincidences();
        }
    }

    void run(const Presentation& p, const std::vector<Word>& subgroup_gens) {
        for (const auto& w : subgroup_gens)
            scan_and_fill(0, w);
        for (std::size_t head = 0; head < table.size(); ++head) {
            std::uint32_t c = static_cast<std::uint32_t>(head);
            if (!alive(c)) continue;
            for (const auto& r : p.relators) {
                scan_and_fill(c, r);
                if (!alive(c)) break;
            }
            if (!alive(c)) continue;
            for (std::uint32_t k = 0; k < width; ++k) {
                c = find(c);
                if (table[c][k] == UNDEF) {
                    std::uint32_t d = new_coset();
                    set_entry(c, k, d);
                    process_coincidences();
                }
            }
        }
    }

    CosetTable compact(const Presentation& p, const std::vector<Word>& subgroup_gens) {
        std::vector<std::uint32_t> newid(table.size(), UNDEF);
        std::uint32_t count = 0;
        for (std::uint32_t c = 0; c < table.size(); ++c)
            if (alive(c)) newid[c] = count++;
        CosetTable out;
        out.index = count;
        out.action.assign(ngens, std::vector<std::uint32_t>(count, UNDEF));
        for (std::uint32_t c = 0; c < table.size(); ++c) {
            if (!alive(c)) continue;
            for (std::uint32_t g = 0; g < ngens; ++g) {
                std::uint32_t img = table[c][g];
                if (img == UNDEF)
                    throw ValidationError("coset table incomplete after enumeration");
                out.action[g][newid[c]] = newid[find(img)];
            }
        }
        // Verify: every relator closes from every coset, the subgroup
        // generators fix coset 0, and each column is a bijection.
        std::vector<std::vector<std::uint32_t>> inverse(ngens);
        for (std::uint32_t g = 0; g < ngens; ++g) {
            Permutation per = Permutation::from_images(out.action[g]);   // throws if not a bijection
            inverse[g] = per.inverse().images();
        }
        auto trace = [&](std::uint32_t start, const Word& w) {
            std::uint32_t cur = start;
            for (std::int32_t l : w.letters)
                cur = l > 0 ? out.action[static_cast<std::uint32_t>(l - 1)][cur]
                            : inverse[static_cast<std::uint32_t>(-l - 1)][cur];
            return cur;
        };
        for (const auto& r : p.relators)
            for (std::uint32_t c = 0; c < count; ++c)
                if (trace(c, r) != c)
                    throw ValidationError("relator fails to close on the finished table");
        for (const auto& w : subgroup_gens)
            if (trace(0, w) != 0)
                throw ValidationError("subgroup generator moves coset 0");
        return out;
    }
};

} // namespace

CosetTable coset_enumeration(const Presentation& p,
                             const std::vector<Word>& subgroup_gens,
                             const Limits& limits) {
    if (p.gen_names.empty())
        throw DomainError("presentation has no generators");
    Enumerator e(static_cast<std::uint32_t>(p.gen_names.size()), limits);
    e.run(p, subgroup_gens);
    return e.compact(p, subgroup_gens);
}

PermGroup coset_action(const CosetTable& table) {
    std::vector<Permutation> gens;
    gens.reserve(table.action.size());
    for (const auto& images : table.action)
        gens.push_back(Permutation::from_images(images));
    return PermGroup(std::move(gens), std::max(table.index, 1u));
}

std::uint64_t presentation_order(const Presentation& p, const Limits& limits) {
    return coset_enumeration(p, {}, limits).index;
}

PermGroup realize_presentation(const Presentation& p, const Limits& limits) {
    CosetTable t = coset_enumeration(p, {}, limits);
    if (t.index > limits.degree_cap)
        throw CapError("regular representation needs degree " + std::to_string(t.index),
                       "degree_cap", static_cast<long long>(limits.degree_cap));
    PermGroup g = coset_action(t);
    // The regular action is transitive, so this is usually a no-op, but it
    // keeps any future non-regular realizations small.
    return reduce_degree(g);
}

} // namespace locell
