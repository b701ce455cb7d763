#pragma once

// Exhaustive state-space kernels. Every kernel has a serial reference and an
// OpenMP implementation; the two return identical results for any thread
// count (distribution sums are bitwise stable across thread counts but may
// differ from the serial reference in the last bits).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mscs/lattice.hpp"
#include "mscs/structure.hpp"

namespace mscs::kernels {

/// phi at every lattice index. Values above M raise LevelOutOfRange.
using LevelTable = std::vector<std::uint8_t>;

inline constexpr std::uint64_t kNoIndex = ~std::uint64_t{0};

LevelTable tabulate_serial(const StructureFunction& phi,
                           const LatticeIndexer& lattice);
LevelTable tabulate_parallel(const StructureFunction& phi,
                             const LatticeIndexer& lattice);

/// out[x] = min over y >= x of table[y].
LevelTable upset_min_serial(const LevelTable& table,
                            const LatticeIndexer& lattice);
LevelTable upset_min_parallel(const LevelTable& table,
                              const LatticeIndexer& lattice);

/// out[x] = max over y <= x of table[y].
LevelTable downset_max_serial(const LevelTable& table,
                              const LatticeIndexer& lattice);
LevelTable downset_max_parallel(const LevelTable& table,
                                const LatticeIndexer& lattice);

/// Smallest index x with table[x] > upset_min[x], i.e. some y >= x maps
/// strictly lower. kNoIndex when phi is monotone.
std::uint64_t first_monotonicity_violation_serial(
    const LevelTable& table, const LevelTable& upset_min);
std::uint64_t first_monotonicity_violation_parallel(
    const LevelTable& table, const LevelTable& upset_min);

/// For component i (0-based), entry j is the smallest index of a vector x
/// with x_i = j, phi(x) = j and phi(l_i, x) != j for every l != j; kNoIndex
/// when no such context exists.
std::vector<std::uint64_t> relevance_witnesses_serial(
    const LevelTable& table, const LatticeIndexer& lattice, std::size_t i);
std::vector<std::uint64_t> relevance_witnesses_parallel(
    const LevelTable& table, const LatticeIndexer& lattice, std::size_t i);

/// mask[x] = 1 iff every y strictly below x has table[y] < table[x].
std::vector<std::uint8_t> upper_critical_mask_serial(
    const LevelTable& table, const LatticeIndexer& lattice);
std::vector<std::uint8_t> upper_critical_mask_parallel(
    const LevelTable& table, const LatticeIndexer& lattice);

/// System PMF: out[j] = sum over x with phi(x) = j of prod_i pmfs[i][x_i].
/// Every pmfs[i] must have M+1 entries. The parallel version sums fixed
/// blocks of kDistributionBlock vectors and combines them in a fixed
/// pairwise tree, so the result does not depend on the thread count.
inline constexpr std::uint64_t kDistributionBlock = 4096;

std::vector<double> accumulate_distribution_serial(
    const StructureFunction& phi, const LatticeIndexer& lattice,
    std::span<const std::vector<double>> pmfs);
std::vector<double> accumulate_distribution_parallel(
    const StructureFunction& phi, const LatticeIndexer& lattice,
    std::span<const std::vector<double>> pmfs);

}  // namespace mscs::kernels
