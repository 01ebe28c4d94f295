#include "locell/homology.hpp"

#include "locell/errors.hpp"
#include "locell/isomorphism.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <unordered_map>
#include <utility>

namespace locell {

namespace {

// Multiplication table over the nontrivial elements of a small group.
// prod[i*m + j] is the index of elts[i]*elts[j], or -1 when the product is
// the identity.  All bar-resolution data is read off this table.
struct BarTable {
    std::uint32_t m = 0;
    std::vector<std::int32_t> prod;
};

BarTable build_table(const PermGroup& g, const Limits& limits) {
    Limits scan = limits;
    scan.element_cap = std::max<std::uint64_t>(scan.element_cap, g.order());
    std::vector<Permutation> elts;
    for (auto& e : g.elements(scan))
        if (!(e == g.identity())) elts.push_back(std::move(e));

    BarTable t;
    t.m = static_cast<std::uint32_t>(elts.size());
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;
    index.reserve(elts.size());
    for (std::uint32_t i = 0; i < t.m; ++i) index.emplace(elts[i], i);

    t.prod.assign(static_cast<std::size_t>(t.m) * t.m, -1);
    for (std::uint32_t i = 0; i < t.m; ++i)
        for (std::uint32_t j = 0; j < t.m; ++j) {
            Permutation p = elts[i] * elts[j];
            auto it = index.find(p);
            if (it != index.end()) t.prod[std::size_t(i) * t.m + j] = std::int32_t(it->second);
        }
    return t;
}

// One row of the degree-3 boundary, columns indexed by pairs (a,b) -> a*m+b.
// Terms whose pair would contain the identity are degenerate and dropped.
std::vector<std::pair<std::uint32_t, std::int64_t>>
triple_row(const BarTable& t, std::uint32_t i, std::uint32_t j, std::uint32_t k) {
    const std::int64_t m = t.m;
    const std::int32_t ij = t.prod[std::size_t(i) * t.m + j];
    const std::int32_t jk = t.prod[std::size_t(j) * t.m + k];

    std::array<std::pair<std::int64_t, std::int64_t>, 4> term;
    int cnt = 0;
    auto add = [&](std::int64_t col, std::int64_t coeff) {
        if (col >= 0) term[cnt++] = {col, coeff};
    };
    add(std::int64_t(j) * m + k, +1);
    add(ij < 0 ? -1 : std::int64_t(ij) * m + k, -1);
    add(jk < 0 ? -1 : std::int64_t(i) * m + jk, +1);
    add(std::int64_t(i) * m + j, -1);
    std::sort(term.begin(), term.begin() + cnt);

    std::vector<std::pair<std::uint32_t, std::int64_t>> row;
    for (int a = 0; a < cnt;) {
        int b = a;
        std::int64_t sum = 0;
        while (b < cnt && term[b].first == term[a].first) sum += term[b++].second;
        if (sum != 0) row.emplace_back(std::uint32_t(term[a].first), sum);
        a = b;
    }
    return row;
}

template <bool Parallel>
SparseMat boundary3_impl(const BarTable& t) {
    const std::size_t m = t.m;
    SparseMat mat;
    mat.ncols = m * m;
    mat.rows.resize(m * m * m);
    const std::int64_t total = static_cast<std::int64_t>(mat.rows.size());
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t idx = 0; idx < total; ++idx) {
            const auto i = std::uint32_t(idx / (m * m));
            const auto j = std::uint32_t((idx / m) % m);
            const auto k = std::uint32_t(idx % m);
            mat.rows[std::size_t(idx)] = triple_row(t, i, j, k);
        }
    } else {
        for (std::int64_t idx = 0; idx < total; ++idx) {
            const auto i = std::uint32_t(idx / (m * m));
            const auto j = std::uint32_t((idx / m) % m);
            const auto k = std::uint32_t(idx % m);
            mat.rows[std::size_t(idx)] = triple_row(t, i, j, k);
        }
    }
    return mat;
}

// Rank of the degree-2 boundary: one row per pair, columns over elements.
std::size_t boundary2_rank(const BarTable& t) {
    RowHnf lattice(t.m);
    for (std::uint32_t i = 0; i < t.m; ++i)
        for (std::uint32_t j = 0; j < t.m; ++j) {
            std::vector<BigInt> row(t.m, 0);
            row[j] += 1;
            const std::int32_t ij = t.prod[std::size_t(i) * t.m + j];
            if (ij >= 0) row[std::size_t(ij)] -= 1;
            row[i] += 1;
            lattice.add_row(std::move(row));
        }
    return lattice.rank();
}

// Row-space reduction mod M with the lattice M*Z^n implicitly included, so
// every entry stays in [0, M) and all arithmetic fits in int64.  Used to
// compress the huge cocycle constraint system into a square matrix.
class ModHnf {
public:
    ModHnf(std::size_t ncols, std::int64_t modulus)
        : ncols_(ncols), m_(modulus), rows_(ncols) {}

    void add_row(const std::vector<std::pair<std::uint32_t, std::int64_t>>& sparse) {
        std::vector<std::int64_t> r(ncols_, 0);
        bool any = false;
        for (auto [c, v] : sparse) {
            r[c] = norm(v);
            any = any || r[c] != 0;
        }
        if (any) reduce(std::move(r));
    }

    // Square constraint matrix, one row per pivot column.  Columns without a
    // pivot keep a zero row: their implicit constraint M*y_c = 0 is vacuous.
    SmallMat square() const {
        SmallMat h(ncols_, std::vector<std::int64_t>(ncols_, 0));
        for (std::size_t c = 0; c < ncols_; ++c)
            if (!rows_[c].empty()) h[c] = rows_[c];
        return h;
    }

private:
    std::int64_t norm(std::int64_t v) const {
        v %= m_;
        return v < 0 ? v + m_ : v;
    }

    static std::array<std::int64_t, 3> xgcd(std::int64_t a, std::int64_t b) {
        std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (r1 != 0) {
            const std::int64_t q = r0 / r1;
            std::tie(r0, r1) = std::pair(r1, r0 - q * r1);
            std::tie(s0, s1) = std::pair(s1, s0 - q * s1);
            std::tie(t0, t1) = std::pair(t1, t0 - q * t1);
        }
        return {r0, s0, t0};
    }

    void reduce(std::vector<std::int64_t> r) {
        for (std::size_t c = 0; c < ncols_; ++c) {
            if (r[c] == 0) continue;
            if (rows_[c].empty()) {
                // Fold in the implicit M*e_c so the new pivot divides M.
                const auto [g, u, w] = xgcd(r[c], m_);
                (void)w;
                std::vector<std::int64_t> b(ncols_, 0);
                for (std::size_t t = c; t < ncols_; ++t) b[t] = norm(u % m_ * r[t]);
                b[c] = g;
                const std::int64_t q = r[c] / g;
                for (std::size_t t = c; t < ncols_; ++t) r[t] = norm(r[t] - q % m_ * b[t]);
                rows_[c] = std::move(b);
            } else {
                auto& b = rows_[c];
                const std::int64_t g0 = b[c];
                if (r[c] % g0 == 0) {
                    const std::int64_t q = (r[c] / g0) % m_;
                    for (std::size_t t = c; t < ncols_; ++t) r[t] = norm(r[t] - q * b[t]);
                } else {
                    const auto [g, u, w] = xgcd(g0, r[c]);
                    std::vector<std::int64_t> nb(ncols_, 0);
                    for (std::size_t t = c; t < ncols_; ++t)
                        nb[t] = norm(u % m_ * b[t] + w % m_ * r[t]);
                    nb[c] = g;
                    const std::int64_t qb = (g0 / g) % m_, qr = (r[c] / g) % m_;
                    for (std::size_t t = c; t < ncols_; ++t) r[t] = norm(qb * r[t] - qr * b[t]);
                    b = std::move(nb);
                }
            }
        }
    }

    std::size_t ncols_;
    std::int64_t m_;
    std::vector<std::vector<std::int64_t>> rows_;
};

// Multiset difference of primary decompositions: whole minus part, which
// must embed componentwise.  Used for the universal-coefficient step.
AbelianGroup subtract_primary(const AbelianGroup& whole, const AbelianGroup& part) {
    auto w = whole.primary();
    std::vector<std::int64_t> leftover;
    for (const auto& [p, exps] : part.primary()) {
        auto it = w.find(p);
        for (std::uint32_t e : exps) {
            if (it == w.end())
                throw ValidationError("universal-coefficient mismatch: missing prime component");
            auto& have = it->second;
            auto pos = std::find(have.begin(), have.end(), e);
            if (pos == have.end())
                throw ValidationError("universal-coefficient mismatch: missing p-power component");
            have.erase(pos);
        }
    }
    for (const auto& [p, exps] : w)
        for (std::uint32_t e : exps) {
            std::int64_t q = 1;
            for (std::uint32_t t = 0; t < e; ++t) q *= p;
            leftover.push_back(q);
        }
    return AbelianGroup::from_orders(leftover);
}

BarTable checked_table(const PermGroup& g, const Limits& limits, std::uint64_t cap,
                       const char* cap_name) {
    if (g.order() > cap)
        throw CapError("group of order " + std::to_string(g.order()) +
                           " exceeds the multiplier ceiling " + std::to_string(cap),
                       cap_name, static_cast<long long>(cap));
    return build_table(g, limits);
}

} // namespace

SparseMat bar_boundary3(const PermGroup& g, const Limits& limits) {
    return boundary3_impl<true>(checked_table(g, limits, limits.bar_cap, "bar_cap"));
}

SparseMat bar_boundary3_serial(const PermGroup& g, const Limits& limits) {
    return boundary3_impl<false>(checked_table(g, limits, limits.bar_cap, "bar_cap"));
}

SchurEngine::SchurEngine(Limits limits, std::vector<MultiplierFact> table)
    : limits_(limits), table_(std::move(table)) {}

AbelianGroup SchurEngine::multiplier_bar(const PermGroup& g) {
    const BarTable t = checked_table(g, limits_, limits_.bar_cap, "bar_cap");
    last_source_ = "bar";
    if (t.m == 0) return {};

    const std::size_t pairs = std::size_t(t.m) * t.m;
    const std::size_t rank2 = boundary2_rank(t);
    SmithResult sm = smith_of_sparse(boundary3_impl<true>(t));

    // H_2 = ker d2 / im d3.  Its free rank is the second Betti number, which
    // vanishes for every finite group; anything else is an internal bug.
    if (pairs != rank2 + sm.rank)
        throw ValidationError("bar resolution: nonzero second Betti number");
    // The torsion is exactly the cokernel torsion of d3 because C2/ker d2
    // embeds in the free module C1.
    return AbelianGroup::from_orders(sm.nonunit());
}

AbelianGroup SchurEngine::multiplier_dual(const PermGroup& g) {
    const BarTable t = checked_table(g, limits_, limits_.dual_cap, "dual_cap");
    if (t.m == 0) return {};
    const std::int64_t n = static_cast<std::int64_t>(g.order());
    const std::size_t pairs = std::size_t(t.m) * t.m;

    // Coefficients split over the prime powers in |G|, and each summand is
    // computed over Z/q where nothing ever grows past q.
    std::vector<std::pair<std::int64_t, std::int64_t>> primepowers;   // (p, q)
    {
        std::int64_t rest = n;
        for (std::int64_t p = 2; p * p <= rest; ++p)
            if (rest % p == 0) {
                std::int64_t q = 1;
                while (rest % p == 0) { q *= p; rest /= p; }
                primepowers.emplace_back(p, q);
            }
        if (rest > 1) primepowers.emplace_back(rest, rest);
    }

    std::vector<std::int64_t> components;
    for (auto [p, q] : primepowers) {
        // Cocycle conditions, compressed into one constraint row per pair.
        ModHnf constraints(pairs, q);
        for (std::uint32_t i = 0; i < t.m; ++i)
            for (std::uint32_t j = 0; j < t.m; ++j)
                for (std::uint32_t k = 0; k < t.m; ++k)
                    constraints.add_row(triple_row(t, i, j, k));

        // Kernel of the constraint matrix over Z/q: columns of c scaled by
        // q / gcd(q, s) generate the solutions of (r a c) z = 0.
        LocalDiag sh = local_diagonalize(constraints.square(), q, p, false, true);
        SmallMat ker(pairs, std::vector<std::int64_t>(pairs, 0));
        for (std::size_t col = 0; col < pairs; ++col) {
            const std::int64_t s = sh.diag[col];
            const std::int64_t scale = q / std::gcd(q, s);
            for (std::size_t row = 0; row < pairs; ++row)
                ker[row][col] = sh.c[row][col] * scale % q;
        }

        // Presentation of the cohomology in kernel-generator coordinates:
        // relations among the generators, then the coboundary images.
        LocalDiag sk = local_diagonalize(ker, q, p, true, true);
        SmallMat pres(pairs, std::vector<std::int64_t>(pairs + t.m, 0));
        for (std::size_t col = 0; col < pairs; ++col) {
            const std::int64_t scale = q / std::gcd(q, sk.diag[col]);
            for (std::size_t row = 0; row < pairs; ++row)
                pres[row][col] = sk.c[row][col] * scale % q;
        }

        // One coboundary column per nontrivial element x: the image of the
        // indicator cochain at x under the degree-1 coboundary.
        SmallMat d1(pairs, std::vector<std::int64_t>(t.m, 0));
        for (std::uint32_t i = 0; i < t.m; ++i)
            for (std::uint32_t j = 0; j < t.m; ++j) {
                const std::size_t row = std::size_t(i) * t.m + j;
                d1[row][j] += 1;
                d1[row][i] += 1;
                const std::int32_t ij = t.prod[std::size_t(i) * t.m + j];
                if (ij >= 0) d1[row][std::size_t(ij)] -= 1;
            }
        for (std::uint32_t x = 0; x < t.m; ++x) {
            // Solve ker * z = d1_x over Z/q via the tracked transforms.
            std::vector<std::int64_t> w(pairs, 0);
            for (std::size_t row = 0; row < pairs; ++row) {
                std::int64_t acc = 0;
                for (std::size_t col = 0; col < pairs; ++col)
                    acc = (acc + sk.r[row][col] * (((d1[col][x] % q) + q) % q)) % q;
                w[row] = acc;
            }
            std::vector<std::int64_t> z(pairs, 0);
            for (std::size_t i = 0; i < pairs; ++i) {
                const std::int64_t s = sk.diag[i];
                const std::int64_t d = std::gcd(q, s);
                if (w[i] % d != 0)
                    throw ValidationError("cocycle side: coboundary escaped the kernel");
                z[i] = s == 0 ? 0 : w[i] / s;
            }
            for (std::size_t row = 0; row < pairs; ++row) {
                std::int64_t acc = 0;
                for (std::size_t col = 0; col < pairs; ++col)
                    acc = (acc + sk.c[row][col] * z[col]) % q;
                pres[row][pairs + x] = acc;
            }
        }

        // Each generator slot contributes the cyclic group (Z/q)/(s): order
        // gcd(q, s), with s == 0 standing for a full Z/q component.
        LocalDiag sp = local_diagonalize(std::move(pres), q, p, false, false);
        for (std::size_t i = 0; i < pairs; ++i) {
            const std::int64_t s = i < sp.diag.size() ? sp.diag[i] : 0;
            const std::int64_t piece = std::gcd(q, s);
            if (piece > 1) components.push_back(piece);
        }
    }

    // H^2(G; Z/|G|) splits as H_1 + H_2; peel off the H_1 part.
    return subtract_primary(AbelianGroup::from_orders(components),
                            abelian_invariants(g, limits_));
}

AbelianGroup SchurEngine::multiplier(const PermGroup& g) {
    const std::uint64_t n = g.order();
    for (const auto& entry : cache_)
        if (entry.group.order() == n && is_isomorphic(entry.group, g, limits_)) {
            last_source_ = "cache";
            return entry.multiplier;
        }

    // Table answers take precedence: a curated fact is cheaper than any bar
    // computation, and an independent test cross-checks the two below the cap.
    AbelianGroup result;
    bool found = false;
    for (const auto& fact : table_)
        if (fact.group.order() == n && is_isomorphic(fact.group, g, limits_)) {
            result = AbelianGroup::from_orders(fact.invariants);
            last_source_ = "table";
            found = true;
            break;
        }
    if (!found) {
        if (n > limits_.bar_cap)
            throw CapError("no multiplier available for a group of order " + std::to_string(n) +
                               ": beyond the bar ceiling and not in the curated table",
                           "bar_cap", static_cast<long long>(limits_.bar_cap));
        result = multiplier_bar(g);
    }
    if (cache_.size() < 64) cache_.push_back({g, result});
    return result;
}

} // namespace locell
