#include "locell/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace locell::kernels {

std::vector<std::uint64_t> element_orders_serial(const StabilizerChain& chain, std::uint64_t count) {
    std::vector<std::uint64_t> orders(count);
    for (std::uint64_t i = 0; i < count; ++i)
        orders[i] = chain.element(i).order();
    return orders;
}

std::vector<std::uint64_t> element_orders(const StabilizerChain& chain, std::uint64_t count) {
    std::vector<std::uint64_t> orders(count);
    const std::int64_t n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i)
        orders[static_cast<std::uint64_t>(i)] = chain.element(static_cast<std::uint64_t>(i)).order();
    return orders;
}

namespace {

std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}

std::uint32_t invmod(std::uint32_t a, std::uint32_t p) {
    // Fermat; p is prime and a != 0 mod p.
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

template <bool Parallel>
std::uint32_t modp_rank_impl(std::vector<std::vector<std::uint32_t>>& rows, std::uint32_t p) {
    if (rows.empty()) return 0;
    const std::size_t ncols = rows[0].size();
    std::uint32_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        // First row at or below the pivot line with a nonzero entry here.
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] % p == 0)
            ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        const std::uint32_t inv = invmod(rows[rank][col] % p, p);
        for (std::size_t j = col; j < ncols; ++j)
            rows[rank][j] = mulmod(rows[rank][j] % p, inv, p);
        const std::vector<std::uint32_t>& prow = rows[rank];
        const std::int64_t nrows = static_cast<std::int64_t>(rows.size());
        const std::int64_t start = static_cast<std::int64_t>(rank) + 1;
        auto eliminate = [&](std::int64_t r) {
            std::vector<std::uint32_t>& row = rows[static_cast<std::size_t>(r)];
            std::uint32_t factor = row[col] % p;
            if (factor == 0) return;
            for (std::size_t j = col; j < ncols; ++j)
                row[j] = static_cast<std::uint32_t>(
                    (row[j] + static_cast<std::uint64_t>(p - factor) * prow[j]) % p);
        };
        if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
            for (std::int64_t r = start; r < nrows; ++r)
                eliminate(r);
        } else {
            for (std::int64_t r = start; r < nrows; ++r)
                eliminate(r);
        }
        ++rank;
    }
    return rank;
}

} // namespace

std::uint32_t modp_rank(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p) {
    return modp_rank_impl<true>(rows, p);
}

std::uint32_t modp_rank_serial(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p) {
    return modp_rank_impl<false>(rows, p);
}

} // namespace locell::kernels
