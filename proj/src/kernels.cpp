#include "mscs/kernels.hpp"

#include <algorithm>
#include <exception>
#include <mutex>

#include "mscs/error.hpp"

namespace mscs::kernels {

namespace {

constexpr std::uint64_t kTabulateBlock = 4096;

std::uint64_t block_count(std::uint64_t size, std::uint64_t block) {
  return (size + block - 1) / block;
}

[[noreturn]] void throw_out_of_range(const StructureFunction& phi,
                                     const LatticeIndexer& lattice,
                                     std::uint64_t index, Level value) {
  throw Error(ErrorKind::LevelOutOfRange,
              phi.name() + " maps " + to_string(lattice.vector_at(index)) +
                  " to " + std::to_string(value) + ", outside 0.." +
                  std::to_string(lattice.max_state()));
}

// Collects the first exception raised inside an OpenMP region so it can be
// rethrown on the calling thread.
class ExceptionSlot {
 public:
  template <typename F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

void tabulate_block(const StructureFunction& phi, const LatticeIndexer& lattice,
                    std::uint64_t begin, std::uint64_t end, LevelTable& out) {
  std::vector<Level> x(lattice.dimension());
  lattice.decode(begin, x);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    const Level v = phi(std::span<const Level>(x));
    if (v > lattice.max_state()) throw_out_of_range(phi, lattice, idx, v);
    out[idx] = static_cast<std::uint8_t>(v);
    lattice.next(x);
  }
}

// One pass of a running min/max along axis i over the line starting at
// `base`. Lines are indexed by everything except digit i.
template <typename Combine>
void sweep_line(LevelTable& t, std::uint64_t base, std::uint64_t stride,
                std::uint64_t radix, bool descending, Combine combine) {
  if (descending) {
    for (std::uint64_t d = radix - 1; d-- > 0;) {
      auto& cell = t[base + d * stride];
      cell = combine(cell, t[base + (d + 1) * stride]);
    }
  } else {
    for (std::uint64_t d = 1; d < radix; ++d) {
      auto& cell = t[base + d * stride];
      cell = combine(cell, t[base + (d - 1) * stride]);
    }
  }
}

std::uint64_t line_base(std::uint64_t line, std::uint64_t stride,
                        std::uint64_t radix) {
  return (line / stride) * radix * stride + line % stride;
}

template <typename Combine>
LevelTable axis_sweeps(const LevelTable& table, const LatticeIndexer& lattice,
                       bool descending, bool parallel, Combine combine) {
  LevelTable t = table;
  const std::uint64_t radix = lattice.radix();
  const auto lines = static_cast<std::int64_t>(lattice.size() / radix);
  for (std::size_t i = 0; i < lattice.dimension(); ++i) {
    const std::uint64_t stride = lattice.stride(i);
    if (parallel) {
#pragma omp parallel for schedule(static)
      for (std::int64_t line = 0; line < lines; ++line) {
        sweep_line(t, line_base(static_cast<std::uint64_t>(line), stride, radix),
                   stride, radix, descending, combine);
      }
    } else {
      for (std::int64_t line = 0; line < lines; ++line) {
        sweep_line(t, line_base(static_cast<std::uint64_t>(line), stride, radix),
                   stride, radix, descending, combine);
      }
    }
  }
  return t;
}

constexpr auto kMin = [](std::uint8_t a, std::uint8_t b) { return std::min(a, b); };
constexpr auto kMax = [](std::uint8_t a, std::uint8_t b) { return std::max(a, b); };

// Relevance for the contexts [line_begin, line_end) of axis i; fills best[j]
// with the smallest witness index found.
void relevance_lines(const LevelTable& t, const LatticeIndexer& lattice,
                     std::size_t i, std::int64_t line_begin,
                     std::int64_t line_end, std::vector<std::uint64_t>& best) {
  const std::uint64_t radix = lattice.radix();
  const std::uint64_t stride = lattice.stride(i);
  std::vector<unsigned> counts(radix);
  for (std::int64_t line = line_begin; line < line_end; ++line) {
    const std::uint64_t base =
        line_base(static_cast<std::uint64_t>(line), stride, radix);
    std::fill(counts.begin(), counts.end(), 0u);
    for (std::uint64_t l = 0; l < radix; ++l) ++counts[t[base + l * stride]];
    for (std::uint64_t j = 0; j < radix; ++j) {
      const std::uint64_t at = base + j * stride;
      if (t[at] == j && counts[j] == 1 && at < best[j]) best[j] = at;
    }
  }
}

bool is_upper_critical_at(const LevelTable& t, const LevelTable& down,
                          const LatticeIndexer& lattice, std::uint64_t idx) {
  const std::uint64_t radix = lattice.radix();
  for (std::size_t i = 0; i < lattice.dimension(); ++i) {
    const std::uint64_t stride = lattice.stride(i);
    if ((idx / stride) % radix == 0) continue;
    if (down[idx - stride] >= t[idx]) return false;
  }
  return true;
}

void check_pmfs(const LatticeIndexer& lattice,
                std::span<const std::vector<double>> pmfs) {
  if (pmfs.size() != lattice.dimension()) {
    throw Error(ErrorKind::ArityMismatch,
                "expected " + std::to_string(lattice.dimension()) +
                    " component distributions, got " +
                    std::to_string(pmfs.size()));
  }
  for (const auto& pmf : pmfs) {
    if (pmf.size() != lattice.radix()) {
      throw Error(ErrorKind::InvalidPMF,
                  "component PMF has " + std::to_string(pmf.size()) +
                      " entries, expected " + std::to_string(lattice.radix()));
    }
  }
}

// Sums the block [begin, end) into acc using incrementally maintained prefix
// products of the component probabilities.
void accumulate_block(const StructureFunction& phi,
                      const LatticeIndexer& lattice,
                      std::span<const std::vector<double>> pmfs,
                      std::uint64_t begin, std::uint64_t end, double* acc) {
  const std::size_t n = lattice.dimension();
  std::vector<Level> x(n);
  lattice.decode(begin, x);
  std::vector<double> prefix(n + 1);
  prefix[0] = 1.0;
  std::size_t dirty = 0;
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    for (std::size_t i = dirty; i < n; ++i)
      prefix[i + 1] = prefix[i] * pmfs[i][x[i]];
    const Level v = phi(std::span<const Level>(x));
    if (v > lattice.max_state()) throw_out_of_range(phi, lattice, idx, v);
    acc[v] += prefix[n];
    // Lexicographic increment; remember the most significant digit touched.
    std::size_t i = n;
    while (i-- > 0) {
      if (x[i] < lattice.max_state()) {
        ++x[i];
        break;
      }
      x[i] = 0;
    }
    dirty = i < n ? i : 0;
  }
}

}  // namespace

LevelTable tabulate_serial(const StructureFunction& phi,
                           const LatticeIndexer& lattice) {
  LevelTable out(lattice.size());
  tabulate_block(phi, lattice, 0, lattice.size(), out);
  return out;
}

LevelTable tabulate_parallel(const StructureFunction& phi,
                             const LatticeIndexer& lattice) {
  LevelTable out(lattice.size());
  const auto blocks =
      static_cast<std::int64_t>(block_count(lattice.size(), kTabulateBlock));
  ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t b = 0; b < blocks; ++b) {
    slot.run([&] {
      const std::uint64_t begin = static_cast<std::uint64_t>(b) * kTabulateBlock;
      const std::uint64_t end = std::min(begin + kTabulateBlock, lattice.size());
      tabulate_block(phi, lattice, begin, end, out);
    });
  }
  slot.rethrow();
  return out;
}

LevelTable upset_min_serial(const LevelTable& table,
                            const LatticeIndexer& lattice) {
  return axis_sweeps(table, lattice, /*descending=*/true, false, kMin);
}

LevelTable upset_min_parallel(const LevelTable& table,
                              const LatticeIndexer& lattice) {
  return axis_sweeps(table, lattice, /*descending=*/true, true, kMin);
}

LevelTable downset_max_serial(const LevelTable& table,
                              const LatticeIndexer& lattice) {
  return axis_sweeps(table, lattice, /*descending=*/false, false, kMax);
}

LevelTable downset_max_parallel(const LevelTable& table,
                                const LatticeIndexer& lattice) {
  return axis_sweeps(table, lattice, /*descending=*/false, true, kMax);
}

std::uint64_t first_monotonicity_violation_serial(const LevelTable& table,
                                                  const LevelTable& upset_min) {
  for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
    if (upset_min[idx] < table[idx]) return idx;
  }
  return kNoIndex;
}

std::uint64_t first_monotonicity_violation_parallel(
    const LevelTable& table, const LevelTable& upset_min) {
  const auto size = static_cast<std::int64_t>(table.size());
  std::uint64_t best = kNoIndex;
#pragma omp parallel for schedule(static) reduction(min : best)
  for (std::int64_t idx = 0; idx < size; ++idx) {
    const auto u = static_cast<std::uint64_t>(idx);
    if (upset_min[u] < table[u] && u < best) best = u;
  }
  return best;
}

std::vector<std::uint64_t> relevance_witnesses_serial(
    const LevelTable& table, const LatticeIndexer& lattice, std::size_t i) {
  std::vector<std::uint64_t> best(lattice.radix(), kNoIndex);
  relevance_lines(table, lattice, i, 0,
                  static_cast<std::int64_t>(lattice.size() / lattice.radix()),
                  best);
  return best;
}

std::vector<std::uint64_t> relevance_witnesses_parallel(
    const LevelTable& table, const LatticeIndexer& lattice, std::size_t i) {
  std::vector<std::uint64_t> best(lattice.radix(), kNoIndex);
  const auto lines = static_cast<std::int64_t>(lattice.size() / lattice.radix());
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(lattice.radix(), kNoIndex);
#pragma omp for schedule(static)
    for (std::int64_t line = 0; line < lines; ++line) {
      relevance_lines(table, lattice, i, line, line + 1, local);
    }
#pragma omp critical(mscs_relevance_merge)
    for (std::size_t j = 0; j < best.size(); ++j)
      best[j] = std::min(best[j], local[j]);
  }
  return best;
}

std::vector<std::uint8_t> upper_critical_mask_serial(
    const LevelTable& table, const LatticeIndexer& lattice) {
  const LevelTable down = downset_max_serial(table, lattice);
  std::vector<std::uint8_t> mask(table.size());
  for (std::uint64_t idx = 0; idx < table.size(); ++idx)
    mask[idx] = is_upper_critical_at(table, down, lattice, idx) ? 1 : 0;
  return mask;
}

std::vector<std::uint8_t> upper_critical_mask_parallel(
    const LevelTable& table, const LatticeIndexer& lattice) {
  const LevelTable down = downset_max_parallel(table, lattice);
  std::vector<std::uint8_t> mask(table.size());
  const auto size = static_cast<std::int64_t>(table.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t idx = 0; idx < size; ++idx) {
    const auto u = static_cast<std::uint64_t>(idx);
    mask[u] = is_upper_critical_at(table, down, lattice, u) ? 1 : 0;
  }
  return mask;
}

std::vector<double> accumulate_distribution_serial(
    const StructureFunction& phi, const LatticeIndexer& lattice,
    std::span<const std::vector<double>> pmfs) {
  check_pmfs(lattice, pmfs);
  std::vector<double> acc(lattice.radix(), 0.0);
  std::vector<Level> x(lattice.dimension(), 0);
  std::uint64_t idx = 0;
  do {
    double product = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) product *= pmfs[i][x[i]];
    const Level v = phi(std::span<const Level>(x));
    if (v > lattice.max_state()) throw_out_of_range(phi, lattice, idx, v);
    acc[v] += product;
    ++idx;
  } while (lattice.next(x));
  return acc;
}

std::vector<double> accumulate_distribution_parallel(
    const StructureFunction& phi, const LatticeIndexer& lattice,
    std::span<const std::vector<double>> pmfs) {
  check_pmfs(lattice, pmfs);
  const std::uint64_t width = lattice.radix();
  const std::uint64_t blocks = block_count(lattice.size(), kDistributionBlock);
  std::vector<double> partial(blocks * width, 0.0);
  ExceptionSlot slot;
  const auto block_total = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t b = 0; b < block_total; ++b) {
    slot.run([&] {
      const auto ub = static_cast<std::uint64_t>(b);
      const std::uint64_t begin = ub * kDistributionBlock;
      const std::uint64_t end =
          std::min(begin + kDistributionBlock, lattice.size());
      accumulate_block(phi, lattice, pmfs, begin, end, &partial[ub * width]);
    });
  }
  slot.rethrow();
  // Fixed-shape pairwise tree over blocks.
  for (std::uint64_t step = 1; step < blocks; step *= 2) {
    for (std::uint64_t b = 0; b + step < blocks; b += 2 * step) {
      for (std::uint64_t j = 0; j < width; ++j)
        partial[b * width + j] += partial[(b + step) * width + j];
    }
  }
  return std::vector<double>(partial.begin(),
                             partial.begin() + static_cast<std::ptrdiff_t>(width));
}

}  // namespace mscs::kernels
