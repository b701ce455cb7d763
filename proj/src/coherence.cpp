#include "mscs/coherence.hpp"

#include <algorithm>
#include <cassert>

#include "mscs/error.hpp"
#include "mscs/kernels.hpp"

namespace mscs {

namespace {

struct Tabulated {
  LatticeIndexer lattice;
  kernels::LevelTable table;
};

Tabulated tabulate(const StructureFunction& phi, Level max_state,
                   const EnumerationOptions& options) {
  LatticeIndexer lattice(phi.arity(), max_state, options.limit);
  auto table = kernels::tabulate_parallel(phi, lattice);
  return {std::move(lattice), std::move(table)};
}

MonotonicityResult monotonicity_from(const Tabulated& tab) {
  const auto upset = kernels::upset_min_parallel(tab.table, tab.lattice);
  const std::uint64_t first =
      kernels::first_monotonicity_violation_parallel(tab.table, upset);
  if (first == kernels::kNoIndex) return {};

  // The least x is known; scan its up-set in lexicographic order for the
  // least y. Every y >= x has a larger index.
  const std::size_t n = tab.lattice.dimension();
  std::vector<Level> x(n), y(n);
  tab.lattice.decode(first, x);
  for (std::uint64_t idx = first + 1; idx < tab.lattice.size(); ++idx) {
    if (tab.table[idx] >= tab.table[first]) continue;
    tab.lattice.decode(idx, y);
    bool above = true;
    for (std::size_t i = 0; i < n && above; ++i) above = x[i] <= y[i];
    if (above) {
      return {false, std::make_pair(StateVector(x), StateVector(y))};
    }
  }
  assert(false && "up-set minimum promised a violating y");
  return {};
}

std::vector<RelevanceEntry> relevance_from(const Tabulated& tab) {
  std::vector<RelevanceEntry> out;
  const Level max_state = tab.lattice.max_state();
  for (std::size_t i = 0; i < tab.lattice.dimension(); ++i) {
    const auto best =
        kernels::relevance_witnesses_parallel(tab.table, tab.lattice, i);
    for (Level j = 0; j <= max_state; ++j) {
      RelevanceEntry entry;
      entry.component = i;
      entry.level = j;
      if (best[j] != kernels::kNoIndex) {
        entry.pass = true;
        entry.witness = tab.lattice.vector_at(best[j]);
      } else {
        entry.note = "no context makes c" + std::to_string(i + 1) +
                     " decisive for level " + std::to_string(j);
      }
      out.push_back(std::move(entry));
    }
  }
  return out;
}

Level eval_basic(BasicKind kind, const StateVector& x) {
  return kind == BasicKind::Series ? eval_series(x.levels())
                                   : eval_parallel(x.levels());
}

void require_fits(const StateVector& x, Level max_state) {
  if (!x.fits(StateSpace(max_state))) {
    throw Error(ErrorKind::LevelOutOfRange,
                to_string(x) + " has a level above " +
                    std::to_string(max_state));
  }
}

}  // namespace

bool CoherenceReport::relevance_pass() const {
  return std::all_of(relevance.begin(), relevance.end(),
                     [](const RelevanceEntry& e) { return e.pass; });
}

bool CoherenceReport::boundary_pass() const {
  return std::all_of(boundary.begin(), boundary.end(),
                     [](const BoundaryEntry& e) { return e.pass; });
}

MonotonicityResult check_monotonicity(const StructureFunction& phi,
                                      Level max_state,
                                      const EnumerationOptions& options) {
  return monotonicity_from(tabulate(phi, max_state, options));
}

std::vector<RelevanceEntry> check_relevance(const StructureFunction& phi,
                                            Level max_state,
                                            const EnumerationOptions& options) {
  return relevance_from(tabulate(phi, max_state, options));
}

std::vector<BoundaryEntry> check_boundary(const StructureFunction& phi,
                                          Level max_state) {
  StateSpace space(max_state);
  std::vector<BoundaryEntry> out;
  for (Level j = 0; j <= space.max_state(); ++j) {
    const Level value = phi(constant_vector(phi.arity(), j));
    out.push_back({j, value, value == j});
  }
  return out;
}

CoherenceReport coherence_report(const StructureFunction& phi, Level max_state,
                                 const EnumerationOptions& options) {
  const Tabulated tab = tabulate(phi, max_state, options);
  CoherenceReport report;
  report.structure = phi.name();
  report.components = phi.arity();
  report.max_state = max_state;
  report.monotone = monotonicity_from(tab);
  report.relevance = relevance_from(tab);
  report.boundary = check_boundary(phi, max_state);
  report.overall =
      report.monotone.pass && report.relevance_pass() && report.boundary_pass();
  return report;
}

StructureBounds structure_bounds(const StructureFunction& phi,
                                 const StateVector& x) {
  const auto [low, high] = extreme_levels(x);
  return {low, phi(x), high};
}

LevelComparison redundancy_comparison(BasicKind kind, const StateVector& x,
                                      const StateVector& y) {
  const StateVector both = join(x, y);
  return {eval_basic(kind, both),
          std::max(eval_basic(kind, x), eval_basic(kind, y))};
}

LevelComparison composition_comparison(BasicKind kind, const StateVector& x,
                                       const StateVector& y) {
  const StateVector both = meet(x, y);
  return {eval_basic(kind, both),
          std::min(eval_basic(kind, x), eval_basic(kind, y))};
}

bool is_connection_vector(const StructureFunction& phi, const StateVector& x,
                          Level j) {
  return phi(x) == j;
}

UpperCriticalCheck check_upper_critical(const StructureFunction& phi,
                                        const StateVector& x, Level j,
                                        Level max_state,
                                        const EnumerationOptions& options) {
  require_fits(x, max_state);
  if (phi(x) != j) return {};

  // The box [0, x] holds prod (x_i + 1) vectors.
  std::uint64_t box = 1;
  for (Level level : x) {
    const std::uint64_t side = std::uint64_t{level} + 1;
    if (box > options.limit / side) {
      throw Error(ErrorKind::ExplosionLimit,
                  "down-set of " + to_string(x) +
                      " exceeds the enumeration limit of " +
                      std::to_string(options.limit) + " vectors");
    }
    box *= side;
  }

  std::vector<Level> y(x.size(), 0);
  while (true) {
    if (!std::equal(y.begin(), y.end(), x.begin()) &&
        phi(std::span<const Level>(y)) >= j) {
      return {false, StateVector(y)};
    }
    std::size_t i = y.size();
    while (i-- > 0) {
      if (y[i] < x[i]) {
        ++y[i];
        break;
      }
      y[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return {true, std::nullopt};
}

bool is_upper_critical(const StructureFunction& phi, const StateVector& x,
                       Level j, Level max_state,
                       const EnumerationOptions& options) {
  return check_upper_critical(phi, x, j, max_state, options).upper_critical;
}

UCVSet enumerate_ucv(const StructureFunction& phi, Level max_state, Level j,
                     const EnumerationOptions& options) {
  const Tabulated tab = tabulate(phi, max_state, options);
  const auto mask = kernels::upper_critical_mask_parallel(tab.table, tab.lattice);
  UCVSet set;
  set.level = j;
  for (std::uint64_t idx = 0; idx < tab.table.size(); ++idx) {
    if (mask[idx] && tab.table[idx] == j)
      set.vectors.push_back(tab.lattice.vector_at(idx));
  }
#ifndef NDEBUG
  for (std::size_t a = 0; a < set.vectors.size(); ++a)
    for (std::size_t b = a + 1; b < set.vectors.size(); ++b)
      assert(!leq(set.vectors[a], set.vectors[b]) &&
             !leq(set.vectors[b], set.vectors[a]));
#endif
  return set;
}

LevelLowerBound::LevelLowerBound(const StructureFunction& phi, StateVector ucv,
                                 Level j, Level max_state,
                                 const EnumerationOptions& options)
    : phi_(phi), ucv_(std::move(ucv)), level_(j) {
  if (ucv_.size() != phi.arity()) {
    throw Error(ErrorKind::ArityMismatch,
                "upper critical vector length does not match the arity");
  }
  if (!is_upper_critical(phi, ucv_, j, max_state, options)) {
    throw Error(ErrorKind::PreconditionViolated,
                to_string(ucv_) + " is not an upper critical connection "
                                  "vector to level " +
                    std::to_string(j));
  }
}

bool LevelLowerBound::holds(const StateVector& x) const {
  if (!leq(ucv_, x)) return true;
  return phi_(x) >= level_;
}

bool level_lower_bound_check(const StructureFunction& phi,
                             const StateVector& ucv, Level j,
                             const StateVector& x, Level max_state,
                             const EnumerationOptions& options) {
  return LevelLowerBound(phi, ucv, j, max_state, options).holds(x);
}

}  // namespace mscs
