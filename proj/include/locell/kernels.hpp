#pragma once

#include "locell/perm_group.hpp"

#include <cstdint>
#include <vector>

// Data-parallel kernels with serial reference implementations.  The parallel
// versions are the default everywhere; the serial twins exist so tests can
// assert bit-identical results and the bench tool can compare timings.
namespace locell::kernels {

// orders[i] = element order of chain.element(i) for i < count.
std::vector<std::uint64_t> element_orders(const StabilizerChain& chain, std::uint64_t count);
std::vector<std::uint64_t> element_orders_serial(const StabilizerChain& chain, std::uint64_t count);

// Rank of a dense matrix over GF(p); destroys its argument.  Pivot choice is
// scan-order and independent of thread count.
std::uint32_t modp_rank(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p);
std::uint32_t modp_rank_serial(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p);

} // namespace locell::kernels
