#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace locell {

using BigInt = boost::multiprecision::cpp_int;
using DenseMat = std::vector<std::vector<BigInt>>;

// Rows as sorted (column, value) pairs, values nonzero and within int64.
struct SparseMat {
    std::size_t ncols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> rows;
};

struct SmithResult {
    std::vector<BigInt> invariants;   // nonzero diagonal entries, d1 | d2 | ...
    std::size_t rank = 0;             // == invariants.size()
    // Invariants that are not 1, as int64 (all realistic torsion fits).
    std::vector<std::int64_t> nonunit() const;
};

// Exact Smith normal form of a dense integer matrix.
SmithResult smith_normal_form(DenseMat m);

// Variant tracking the right transform: S = P * M * Q with Q unimodular.
// diag holds min(rows, cols) entries including zeros.
struct SmithTransforms {
    std::vector<BigInt> diag;
    DenseMat q;        // ncols x ncols
    DenseMat q_inv;
    std::size_t rank = 0;
};
SmithTransforms smith_with_right_transforms(DenseMat m);

// Smith normal form of a large sparse matrix: unit pivots are eliminated
// cheaply first, the small residue goes through the dense engine.
SmithResult smith_of_sparse(SparseMat m);

// Incremental integer row-echelon basis (lattice-preserving row reduction).
class RowHnf {
public:
    explicit RowHnf(std::size_t ncols) : ncols_(ncols) {}

    void add_row(std::vector<BigInt> row);
    std::size_t rank() const noexcept { return basis_.size(); }
    std::size_t ncols() const noexcept { return ncols_; }
    // Echelon basis of the row lattice, sorted by pivot column.
    const std::vector<std::vector<BigInt>>& basis() const noexcept { return basis_; }

private:
    std::size_t ncols_;
    std::vector<std::vector<BigInt>> basis_;   // pivot columns strictly increase
    std::vector<std::size_t> pivots_;
};

// Invariant factors of the abelian group Z^ncols / rowspace(rows); the list
// contains the non-unit torsion orders followed by one 0 per free factor.
std::vector<std::int64_t> cokernel_invariants(const RowHnf& lattice);

using SmallMat = std::vector<std::vector<std::int64_t>>;

// Diagonalization over Z/q for a prime power q = p^a.  All arithmetic stays
// below q, so there is no coefficient growth.  The result satisfies
// diag = r * input * c (mod q) with r, c invertible mod q; diagonal entries
// are exact powers of p in ascending valuation, 0 standing for q itself.
struct LocalDiag {
    std::int64_t modulus = 0;
    std::vector<std::int64_t> diag;     // length min(rows, cols)
    SmallMat r, c;                      // filled only when requested
};
LocalDiag local_diagonalize(SmallMat a, std::int64_t q, std::int64_t p,
                            bool want_r, bool want_c);

DenseMat identity_matrix(std::size_t n);
DenseMat matmul(const DenseMat& a, const DenseMat& b);

} // namespace locell
