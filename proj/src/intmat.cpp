#include "locell/intmat.hpp"

#include "locell/errors.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

namespace locell {

namespace {

// g = gcd(a,b) with u*a + v*b = g.
void xgcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& u, BigInt& v) {
    BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1; r0 = std::move(r1); r1 = std::move(r2);
        BigInt s2 = s0 - q * s1; s0 = std::move(s1); s1 = std::move(s2);
        BigInt t2 = t0 - q * t1; t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
    g = std::move(r0); u = std::move(s0); v = std::move(t0);
}

} // namespace

std::vector<std::int64_t> SmithResult::nonunit() const {
    std::vector<std::int64_t> out;
    for (const auto& d : invariants)
        if (d != 1) {
            if (d > std::numeric_limits<std::int64_t>::max())
                throw CapError("invariant factor exceeds int64", "invariant_size",
                               std::numeric_limits<std::int64_t>::max());
            out.push_back(static_cast<std::int64_t>(d));
        }
    return out;
}

namespace {

struct DenseSnf {
    DenseMat m;
    std::size_t nr, nc;
    bool track;
    DenseMat q, q_inv;

    explicit DenseSnf(DenseMat mat, bool track_transforms)
        : m(std::move(mat)), nr(m.size()), nc(nr ? m[0].size() : 0), track(track_transforms) {
        if (track) {
            q = identity_matrix(nc);
            q_inv = identity_matrix(nc);
        }
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a != b) std::swap(m[a], m[b]);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (auto& row : m) std::swap(row[a], row[b]);
        if (track) {
            for (auto& row : q) std::swap(row[a], row[b]);
            std::swap(q_inv[a], q_inv[b]);
        }
    }
    void negate_row(std::size_t r) {
        for (auto& x : m[r]) x = -x;
    }
    // row a -= f * row b
    void row_sub(std::size_t a, const BigInt& f, std::size_t b) {
        if (f == 0) return;
        for (std::size_t j = 0; j < nc; ++j)
            if (m[b][j] != 0) m[a][j] -= f * m[b][j];
    }
    // col a -= f * col b
    void col_sub(std::size_t a, const BigInt& f, std::size_t b) {
        if (f == 0) return;
        for (std::size_t i = 0; i < nr; ++i)
            if (m[i][b] != 0) m[i][a] -= f * m[i][b];
        if (track) {
            for (std::size_t i = 0; i < nc; ++i)
                if (q[i][b] != 0) q[i][a] -= f * q[i][b];
            for (std::size_t j = 0; j < nc; ++j)
                if (q_inv[a][j] != 0) q_inv[b][j] += f * q_inv[a][j];
        }
    }

    // Smallest nonzero |entry| in the submatrix starting at (t,t).
    bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) {
        bool found = false;
        BigInt best;
        for (std::size_t i = t; i < nr; ++i)
            for (std::size_t j = t; j < nc; ++j) {
                if (m[i][j] == 0) continue;
                BigInt a = m[i][j] < 0 ? -m[i][j] : m[i][j];
                if (!found || a < best) {
                    found = true; best = a; pi = i; pj = j;
                    if (best == 1) return true;
                }
            }
        return found;
    }

    std::vector<BigInt> run() {
        std::size_t t = 0;
        while (t < nr && t < nc) {
            std::size_t pi, pj;
            if (!find_pivot(t, pi, pj))
                break;
            swap_rows(t, pi);
            swap_cols(t, pj);
            if (m[t][t] < 0) negate_row(t);
            bool clean = false;
            while (!clean) {
                clean = true;
                // Clear the pivot column with floor-like division; a nonzero
                // remainder becomes the new, smaller pivot.
                for (std::size_t i = t + 1; i < nr; ++i) {
                    if (m[i][t] == 0) continue;
                    BigInt f = m[i][t] / m[t][t];
                    row_sub(i, f, t);
                    if (m[i][t] != 0) {
                        swap_rows(t, i);
                        if (m[t][t] < 0) negate_row(t);
                        clean = false;
                    }
                }
                for (std::size_t j = t + 1; j < nc; ++j) {
                    if (m[t][j] == 0) continue;
                    BigInt f = m[t][j] / m[t][t];
                    col_sub(j, f, t);
                    if (m[t][j] != 0) {
                        swap_cols(t, j);
                        if (m[t][t] < 0) negate_row(t);
                        clean = false;
                    }
                }
            }
            // Enforce divisibility of the remaining block by the pivot.
            bool redo = false;
            for (std::size_t i = t + 1; i < nr && !redo; ++i)
                for (std::size_t j = t + 1; j < nc && !redo; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        // Fold row i into row t and redo this pivot.
                        row_sub(t, -1, i);
                        redo = true;
                    }
            if (!redo)
                ++t;
        }
        std::vector<BigInt> diag(std::min(nr, nc), 0);
        for (std::size_t i = 0; i < diag.size(); ++i) {
            diag[i] = m[i][i] < 0 ? -m[i][i] : m[i][i];
        }
        return diag;
    }
};

} // namespace

SmithResult smith_normal_form(DenseMat m) {
    DenseSnf engine(std::move(m), false);
    auto diag = engine.run();
    SmithResult res;
    for (auto& d : diag)
        if (d != 0) res.invariants.push_back(std::move(d));
    res.rank = res.invariants.size();
    return res;
}

SmithTransforms smith_with_right_transforms(DenseMat m) {
    DenseSnf engine(std::move(m), true);
    auto diag = engine.run();
    SmithTransforms res;
    res.diag = std::move(diag);
    for (const auto& d : res.diag)
        if (d != 0) ++res.rank;
    res.q = std::move(engine.q);
    res.q_inv = std::move(engine.q_inv);
    return res;
}

namespace {

struct OverflowBail {};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowBail{};
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowBail{};
    return r;
}

// Unit-pivot elimination.  Rows holding a +-1 entry are used to clear their
// column and then removed; each removal contributes an invariant factor 1.
// Shortest rows go first (lazy min-heap), which keeps fill-in tolerable on
// boundary matrices with millions of short rows.
struct SparseEliminator {
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>>& rows;
    std::vector<std::vector<std::uint32_t>> col_rows;   // may hold stale ids
    std::vector<bool> row_alive, col_alive;
    // (current length, row).  Entries go stale when a row changes length;
    // stale pops are discarded because the length no longer matches.
    std::priority_queue<std::pair<std::size_t, std::uint32_t>,
                        std::vector<std::pair<std::size_t, std::uint32_t>>,
                        std::greater<>>
        work;
    std::size_t unit_pivots = 0;

    explicit SparseEliminator(SparseMat& mat)
        : rows(mat.rows),
          col_rows(mat.ncols),
          row_alive(mat.rows.size(), true),
          col_alive(mat.ncols, true) {
        for (std::uint32_t r = 0; r < rows.size(); ++r) {
            std::sort(rows[r].begin(), rows[r].end());
            for (auto& [c, v] : rows[r]) {
                (void)v;
                col_rows[c].push_back(r);
            }
            work.emplace(rows[r].size(), r);
        }
    }

    std::int64_t entry(std::uint32_t r, std::uint32_t c) const {
        auto it = std::lower_bound(rows[r].begin(), rows[r].end(),
                                   std::make_pair(c, std::numeric_limits<std::int64_t>::min()));
        if (it != rows[r].end() && it->first == c) return it->second;
        return 0;
    }

    // target -= f * source, merged; registers new columns of target.
    void row_combine(std::uint32_t target, std::int64_t f, std::uint32_t source) {
        std::vector<std::pair<std::uint32_t, std::int64_t>> out;
        out.reserve(rows[target].size() + rows[source].size());
        auto a = rows[target].begin(), ae = rows[target].end();
        auto b = rows[source].begin(), be = rows[source].end();
        while (a != ae || b != be) {
            if (b == be || (a != ae && a->first < b->first)) {
                out.push_back(*a++);
            } else if (a == ae || b->first < a->first) {
                std::int64_t v = checked_mul(-f, b->second);
                out.emplace_back(b->first, v);
                col_rows[b->first].push_back(target);
                ++b;
            } else {
                std::int64_t v = checked_sub(a->second, checked_mul(f, b->second));
                if (v != 0) out.emplace_back(a->first, v);
                ++a; ++b;
            }
        }
        rows[target] = std::move(out);
    }

    void run() {
        while (!work.empty()) {
            auto [len, r] = work.top();
            work.pop();
            if (!row_alive[r] || rows[r].size() != len) continue;   // stale
            // Unit entry in an alive column; among those, the one whose
            // column touches the fewest rows to limit fill.
            std::uint32_t pc = 0;
            std::int64_t pv = 0;
            std::size_t best = std::numeric_limits<std::size_t>::max();
            for (auto& [c, v] : rows[r]) {
                if (!col_alive[c] || (v != 1 && v != -1)) continue;
                if (col_rows[c].size() < best) {
                    best = col_rows[c].size();
                    pc = c;
                    pv = v;
                }
            }
            if (best == std::numeric_limits<std::size_t>::max()) continue;
            // Clear the pivot column in every other alive row.
            std::vector<std::uint32_t> users;
            users.swap(col_rows[pc]);
            std::sort(users.begin(), users.end());
            users.erase(std::unique(users.begin(), users.end()), users.end());
            for (std::uint32_t u : users) {
                if (u == r || !row_alive[u]) continue;
                std::int64_t uv = entry(u, pc);
                if (uv == 0) continue;                       // stale index entry
                row_combine(u, uv * pv, r);                   // pv*pv == 1
                work.emplace(rows[u].size(), u);              // may expose a new unit
            }
            row_alive[r] = false;
            col_alive[pc] = false;
            ++unit_pivots;
        }
    }

    DenseMat residue() const {
        std::vector<std::uint32_t> colmap(col_alive.size(), 0);
        std::uint32_t ncols = 0;
        for (std::size_t c = 0; c < col_alive.size(); ++c)
            if (col_alive[c]) colmap[c] = ncols++;
        DenseMat out;
        for (std::uint32_t r = 0; r < rows.size(); ++r) {
            if (!row_alive[r]) continue;
            bool any = false;
            std::vector<BigInt> row(ncols, 0);
            for (auto& [c, v] : rows[r])
                if (col_alive[c] && v != 0) { row[colmap[c]] = v; any = true; }
            if (any) out.push_back(std::move(row));
        }
        if (!out.empty()) {
            // Keep column count consistent even if some alive columns are
            // entirely zero; the dense engine handles them.
            for (auto& row : out) row.resize(ncols, 0);
        }
        return out;
    }
};

} // namespace

SmithResult smith_of_sparse(SparseMat m) {
    // Duplicate and empty rows change neither the row lattice nor the rank.
    for (auto& row : m.rows) std::sort(row.begin(), row.end());
    std::sort(m.rows.begin(), m.rows.end());
    m.rows.erase(std::unique(m.rows.begin(), m.rows.end()), m.rows.end());
    while (!m.rows.empty() && m.rows.front().empty()) m.rows.erase(m.rows.begin());

    std::size_t unit = 0;
    DenseMat residue;
    try {
        SparseEliminator elim(m);
        elim.run();
        unit = elim.unit_pivots;
        residue = elim.residue();
    } catch (const OverflowBail&) {
        // Rare: entries outgrew int64.  Redo everything exactly but densely.
        residue.clear();
        unit = 0;
        for (auto& row : m.rows) {
            std::vector<BigInt> dense(m.ncols, 0);
            bool any = false;
            for (auto& [c, v] : row)
                if (v != 0) { dense[c] = v; any = true; }
            if (any) residue.push_back(std::move(dense));
        }
    }
    // Compress what is left to at most one row per column before handing it
    // to the dense engine; the row lattice and hence the factors survive.
    if (residue.size() > 1) {
        RowHnf lattice(residue.front().size());
        for (auto& row : residue) lattice.add_row(std::move(row));
        residue = lattice.basis();
    }
    SmithResult rest = residue.empty() ? SmithResult{} : smith_normal_form(std::move(residue));
    SmithResult res;
    res.invariants.assign(unit, 1);
    for (auto& d : rest.invariants)
        res.invariants.push_back(std::move(d));
    res.rank = res.invariants.size();
    return res;
}

void RowHnf::add_row(std::vector<BigInt> row) {
    if (row.size() != ncols_)
        throw DomainError("row length mismatch in lattice accumulator");
    std::size_t col = 0;
    while (true) {
        while (col < ncols_ && row[col] == 0) ++col;
        if (col == ncols_) return;
        // Basis row with this pivot column, if any.
        auto it = std::lower_bound(pivots_.begin(), pivots_.end(), col);
        if (it == pivots_.end() || *it != col) {
            std::size_t pos = static_cast<std::size_t>(it - pivots_.begin());
            if (row[col] < 0)
                for (auto& x : row) x = -x;
            pivots_.insert(it, col);
            basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(row));
            return;
        }
        std::size_t bi = static_cast<std::size_t>(it - pivots_.begin());
        std::vector<BigInt>& b = basis_[bi];
        if (row[col] % b[col] == 0) {
            BigInt f = row[col] / b[col];
            for (std::size_t j = col; j < ncols_; ++j)
                if (b[j] != 0) row[j] -= f * b[j];
        } else {
            BigInt g, u, v;
            xgcd(b[col], row[col], g, u, v);
            BigInt bf = b[col] / g, rf = row[col] / g;
            for (std::size_t j = col; j < ncols_; ++j) {
                BigInt nb = u * b[j] + v * row[j];
                BigInt nr = bf * row[j] - rf * b[j];
                b[j] = std::move(nb);
                row[j] = std::move(nr);
            }
        }
    }
}

std::vector<std::int64_t> cokernel_invariants(const RowHnf& lattice) {
    SmithResult snf = lattice.basis().empty()
        ? SmithResult{}
        : smith_normal_form(lattice.basis());
    std::vector<std::int64_t> out = snf.nonunit();
    std::size_t free_rank = lattice.ncols() - snf.rank;
    out.insert(out.end(), free_rank, 0);
    return out;
}

DenseMat identity_matrix(std::size_t n) {
    DenseMat m(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

DenseMat matmul(const DenseMat& a, const DenseMat& b) {
    std::size_t n = a.size(), k = b.size(), mcols = k ? b[0].size() : 0;
    DenseMat out(n, std::vector<BigInt>(mcols, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (a[i][j] == 0) continue;
            for (std::size_t c = 0; c < mcols; ++c)
                if (b[j][c] != 0) out[i][c] += a[i][j] * b[j][c];
        }
    return out;
}

LocalDiag local_diagonalize(SmallMat a, std::int64_t q, std::int64_t p,
                            bool want_r, bool want_c) {
    if (q < 2 || p < 2) throw DomainError("local diagonalization needs q = p^a >= 2");
    std::uint32_t vmax = 0;
    for (std::int64_t t = q; t > 1; t /= p, ++vmax)
        if (t % p != 0) throw DomainError("modulus is not a power of the given prime");

    const std::size_t nr = a.size();
    const std::size_t nc = nr ? a[0].size() : 0;
    for (auto& row : a) {
        if (row.size() != nc) throw DomainError("ragged matrix");
        for (auto& v : row) {
            v %= q;
            if (v < 0) v += q;
        }
    }

    auto val = [&](std::int64_t x) -> std::uint32_t {
        if (x == 0) return vmax;
        std::uint32_t v = 0;
        while (x % p == 0) { x /= p; ++v; }
        return v;
    };
    auto inv_unit = [&](std::int64_t u) -> std::int64_t {
        std::int64_t r0 = q, r1 = u % q, s0 = 0, s1 = 1;
        while (r1 != 0) {
            const std::int64_t f = r0 / r1;
            std::tie(r0, r1) = std::pair(r1, r0 - f * r1);
            std::tie(s0, s1) = std::pair(s1, s0 - f * s1);
        }
        return s0 < 0 ? s0 + q : s0;
    };

    LocalDiag out;
    out.modulus = q;
    auto ident = [](std::size_t n) {
        SmallMat m(n, std::vector<std::int64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
        return m;
    };
    if (want_r) out.r = ident(nr);
    if (want_c) out.c = ident(nc);

    const std::size_t steps = std::min(nr, nc);
    for (std::size_t t = 0; t < steps; ++t) {
        // Entry of minimal p-valuation in the remaining block; every other
        // entry there is divisible by it, so all eliminations stay integral.
        std::size_t bi = t, bj = t;
        std::uint32_t bestv = vmax;
        for (std::size_t i = t; i < nr && bestv > 0; ++i)
            for (std::size_t j = t; j < nc; ++j) {
                const std::uint32_t v = val(a[i][j]);
                if (v < bestv) { bestv = v; bi = i; bj = j; if (v == 0) break; }
            }
        if (bestv == vmax) break;
        if (bi != t) {
            std::swap(a[bi], a[t]);
            if (want_r) std::swap(out.r[bi], out.r[t]);
        }
        if (bj != t) {
            for (std::size_t i = 0; i < nr; ++i) std::swap(a[i][bj], a[i][t]);
            if (want_c)
                for (std::size_t i = 0; i < nc; ++i) std::swap(out.c[i][bj], out.c[i][t]);
        }

        const std::int64_t pivot = a[t][t];
        std::int64_t pw = 1;
        for (std::uint32_t v = 0; v < bestv; ++v) pw *= p;
        const std::int64_t uinv = inv_unit(pivot / pw);

        for (std::size_t i = t + 1; i < nr; ++i) {
            if (a[i][t] == 0) continue;
            const std::int64_t f = a[i][t] / pw % q * uinv % q;
            for (std::size_t j = t; j < nc; ++j)
                a[i][j] = ((a[i][j] - f * a[t][j]) % q + q) % q;
            if (want_r)
                for (std::size_t j = 0; j < nr; ++j)
                    out.r[i][j] = ((out.r[i][j] - f * out.r[t][j]) % q + q) % q;
        }
        for (std::size_t j = t + 1; j < nc; ++j) {
            if (a[t][j] == 0) continue;
            const std::int64_t f = a[t][j] / pw % q * uinv % q;
            for (std::size_t i = t; i < nr; ++i)
                a[i][j] = ((a[i][j] - f * a[i][t]) % q + q) % q;
            if (want_c)
                for (std::size_t i = 0; i < nc; ++i)
                    out.c[i][j] = ((out.c[i][j] - f * out.c[i][t]) % q + q) % q;
        }

        // Scale the pivot row so the diagonal entry is the bare power of p.
        a[t][t] = pw % q;
        if (want_r)
            for (std::size_t j = 0; j < nr; ++j) out.r[t][j] = out.r[t][j] * uinv % q;
    }

    out.diag.reserve(steps);
    for (std::size_t t = 0; t < steps; ++t) out.diag.push_back(a[t][t]);
    return out;
}

} // namespace locell
