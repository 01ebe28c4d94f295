#include <doctest.h>

#include "locell/errors.hpp"
#include "locell/intmat.hpp"
#include "locell/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace locell;

namespace {

// Oracle: invariant factors via determinantal divisors.  d_k = gcd of all
// k x k minors; the k-th invariant factor is d_k / d_{k-1}.
BigInt minor_det(const DenseMat& m, const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& cols) {
    std::size_t n = rows.size();
    if (n == 1) return m[rows[0]][cols[0]];
    BigInt det = 0;
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < n; ++j) {
        if (m[rows[0]][cols[j]] == 0) continue;
        std::vector<std::size_t> sub_cols;
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) sub_cols.push_back(cols[k]);
        BigInt term = m[rows[0]][cols[j]] * minor_det(m, sub_rows, sub_cols);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) { out.push_back(cur); return; }
        for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

std::vector<BigInt> invariants_by_minors(const DenseMat& m) {
    std::size_t nr = m.size(), nc = nr ? m[0].size() : 0;
    std::vector<BigInt> divisors;   // d_1, d_2, ...
    for (std::size_t k = 1; k <= std::min(nr, nc); ++k) {
        std::vector<std::vector<std::size_t>> rsets, csets;
        subsets(nr, k, rsets);
        subsets(nc, k, csets);
        BigInt g = 0;
        for (const auto& rs : rsets)
            for (const auto& cs : csets) {
                BigInt d = minor_det(m, rs, cs);
                if (d < 0) d = -d;
                g = g == 0 ? d : boost::multiprecision::gcd(g, d);
            }
        if (g == 0) break;
        divisors.push_back(g);
    }
    std::vector<BigInt> inv;
    BigInt prev = 1;
    for (const auto& d : divisors) {
        inv.push_back(d / prev);
        prev = d;
    }
    return inv;
}

DenseMat random_matrix(std::mt19937_64& rng, std::size_t maxdim) {
    std::uniform_int_distribution<int> dim(1, static_cast<int>(maxdim));
    std::uniform_int_distribution<int> val(-5, 5);
    std::size_t r = static_cast<std::size_t>(dim(rng));
    std::size_t c = static_cast<std::size_t>(dim(rng));
    DenseMat m(r, std::vector<BigInt>(c));
    for (auto& row : m)
        for (auto& x : row) x = val(rng);
    return m;
}

SparseMat to_sparse(const DenseMat& m) {
    SparseMat s;
    s.ncols = m.empty() ? 0 : m[0].size();
    s.rows.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < s.ncols; ++j)
            if (m[i][j] != 0)
                s.rows[i].emplace_back(static_cast<std::uint32_t>(j),
                                       static_cast<std::int64_t>(m[i][j]));
    return s;
}

} // namespace

TEST_CASE("smith normal form on fixed examples") {
    // diag(2,6) as relations 2x = 0, 6y = 0.
    DenseMat m{{2, 0}, {0, 6}};
    auto s = smith_normal_form(m);
    REQUIRE(s.invariants.size() == 2);
    CHECK(s.invariants[0] == 2);
    CHECK(s.invariants[1] == 6);

    // A classic: [[2,4,4],[-6,6,12],[10,-4,-16]] has SNF diag(2,6,12).
    DenseMat m2{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    auto s2 = smith_normal_form(m2);
    REQUIRE(s2.invariants.size() == 3);
    CHECK(s2.invariants[0] == 2);
    CHECK(s2.invariants[1] == 6);
    CHECK(s2.invariants[2] == 12);

    // Rank deficiency.
    DenseMat m3{{1, 2}, {2, 4}};
    auto s3 = smith_normal_form(m3);
    REQUIRE(s3.invariants.size() == 1);
    CHECK(s3.invariants[0] == 1);

    CHECK(smith_normal_form(DenseMat{}).invariants.empty());
    CHECK(smith_normal_form(DenseMat{{0, 0}, {0, 0}}).invariants.empty());
}

TEST_CASE("smith normal form matches determinantal divisors on random matrices") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 400; ++trial) {
        DenseMat m = random_matrix(rng, 4);
        CAPTURE(trial);
        auto fast = smith_normal_form(m).invariants;
        auto oracle = invariants_by_minors(m);
        CHECK(fast == oracle);
    }
}

TEST_CASE("sparse pipeline agrees with the dense engine") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 300; ++trial) {
        DenseMat m = random_matrix(rng, 6);
        CAPTURE(trial);
        auto dense = smith_normal_form(m).invariants;
        auto sparse = smith_of_sparse(to_sparse(m)).invariants;
        CHECK(dense == sparse);
    }
}

TEST_CASE("transform-tracking variant is consistent") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 150; ++trial) {
        DenseMat m = random_matrix(rng, 4);
        CAPTURE(trial);
        auto plain = smith_normal_form(m);
        auto tracked = smith_with_right_transforms(m);
        // Same nonzero diagonal.
        std::vector<BigInt> nz;
        for (const auto& d : tracked.diag)
            if (d != 0) nz.push_back(d);
        CHECK(nz == plain.invariants);
        CHECK(tracked.rank == plain.rank);
        // q * q_inv == identity.
        std::size_t n = tracked.q.size();
        CHECK(matmul(tracked.q, tracked.q_inv) == identity_matrix(n));
        CHECK(matmul(tracked.q_inv, tracked.q) == identity_matrix(n));
    }
}

TEST_CASE("row lattice accumulator") {
    RowHnf h(3);
    h.add_row({2, 0, 0});
    h.add_row({0, 2, 0});
    CHECK(h.rank() == 2);
    h.add_row({1, 1, 0});
    CHECK(h.rank() == 2);
    // Z^3 / <(2,0,0),(0,2,0),(1,1,0)> = Z/2 + Z  (the (1,1) vector halves
    // the index of the doubled sublattice).
    auto inv = cokernel_invariants(h);
    REQUIRE(inv.size() == 2);
    CHECK(inv[0] == 2);
    CHECK(inv[1] == 0);

    RowHnf full(2);
    full.add_row({1, 0});
    full.add_row({0, 1});
    CHECK(cokernel_invariants(full).empty());

    RowHnf empty(2);
    auto inv2 = cokernel_invariants(empty);
    REQUIRE(inv2.size() == 2);
    CHECK(inv2[0] == 0);
    CHECK(inv2[1] == 0);
}

TEST_CASE("row lattice accumulator matches direct smith form on random input") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> dim(1, 4);
        std::uniform_int_distribution<int> val(-5, 5);
        std::size_t rows = static_cast<std::size_t>(dim(rng)) + 2;
        std::size_t cols = static_cast<std::size_t>(dim(rng));
        DenseMat m(rows, std::vector<BigInt>(cols));
        for (auto& row : m)
            for (auto& x : row) x = val(rng);
        RowHnf h(cols);
        for (const auto& row : m)
            h.add_row(row);
        CAPTURE(trial);
        auto direct = smith_normal_form(m);
        std::vector<std::int64_t> expect = direct.nonunit();
        expect.insert(expect.end(), cols - direct.rank, 0);
        CHECK(cokernel_invariants(h) == expect);
    }
}

TEST_CASE("local diagonalization over prime power residues") {
    std::mt19937_64 rng(5);
    const std::pair<std::int64_t, std::int64_t> moduli[] = {{2, 8}, {3, 9}, {5, 25}, {2, 2}, {7, 7}};
    for (int trial = 0; trial < 300; ++trial) {
        auto [p, q] = moduli[trial % 5];
        std::uniform_int_distribution<int> dim(1, 5);
        std::uniform_int_distribution<std::int64_t> val(-q, q);
        std::size_t rows = dim(rng), cols = dim(rng);
        SmallMat a(rows, std::vector<std::int64_t>(cols));
        for (auto& row : a)
            for (auto& x : row) x = val(rng);
        CAPTURE(trial);

        LocalDiag ld = local_diagonalize(a, q, p, true, true);
        REQUIRE(ld.diag.size() == std::min(rows, cols));

        // Diagonal entries are powers of p with nondecreasing valuation.
        std::int64_t prev = 1;
        for (std::int64_t d : ld.diag) {
            std::int64_t e = d == 0 ? q : d;
            CHECK(q % e == 0);
            std::int64_t chain = std::gcd(e, prev);
            CHECK(chain == prev);      // prev divides e
            prev = e;
        }

        // r * a * c reproduces the diagonal mod q.
        auto mat_mul_mod = [&](const SmallMat& x, const SmallMat& y) {
            std::size_t n = x.size(), k = y.size(), m2 = k ? y[0].size() : 0;
            SmallMat out(n, std::vector<std::int64_t>(m2, 0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    if (x[i][j] % q == 0) continue;
                    for (std::size_t c = 0; c < m2; ++c)
                        out[i][c] = (out[i][c] + x[i][j] * y[j][c]) % q;
                }
            for (auto& row : out)
                for (auto& v : row) v = (v % q + q) % q;
            return out;
        };
        SmallMat product = mat_mul_mod(mat_mul_mod(ld.r, a), ld.c);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                std::int64_t want = i == j && i < ld.diag.size() ? ld.diag[i] : 0;
                CHECK(product[i][j] == want);
            }

        // The transforms are invertible mod q, i.e. nonsingular mod p.
        auto rank_mod_p = [&](const SmallMat& x) {
            std::vector<std::vector<std::uint32_t>> rows32;
            for (const auto& row : x) {
                std::vector<std::uint32_t> r32;
                for (std::int64_t v : row)
                    r32.push_back(static_cast<std::uint32_t>(((v % p) + p) % p));
                rows32.push_back(std::move(r32));
            }
            return locell::kernels::modp_rank(std::move(rows32),
                                              static_cast<std::uint32_t>(p));
        };
        CHECK(rank_mod_p(ld.r) == rows);
        CHECK(rank_mod_p(ld.c) == cols);
    }
}

TEST_CASE("local diagonalization rejects a modulus that is not a prime power") {
    CHECK_THROWS_AS((void)local_diagonalize({{1}}, 12, 2, false, false), DomainError);
    CHECK_THROWS_AS((void)local_diagonalize({{1}}, 9, 2, false, false), DomainError);
}
