#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mscs/core.hpp"
#include "mscs/lattice.hpp"
#include "mscs/structure.hpp"

namespace mscs {

struct EnumerationOptions {
  std::uint64_t limit = kDefaultEnumerationLimit;
};

struct MonotonicityResult {
  bool pass = true;
  /// Lexicographically least (x, y) with x <= y and phi(x) > phi(y).
  std::optional<std::pair<StateVector, StateVector>> counterexample;
};

struct RelevanceEntry {
  std::size_t component = 0;  // 0-based
  Level level = 0;
  bool pass = false;
  /// The vector (j_i, x) of the least witnessing context.
  std::optional<StateVector> witness;
  std::string note;
};

struct BoundaryEntry {
  Level level = 0;
  Level value = 0;  // phi(constant j)
  bool pass = false;
};

struct CoherenceReport {
  std::string structure;
  std::size_t components = 0;
  Level max_state = 0;
  MonotonicityResult monotone;
  std::vector<RelevanceEntry> relevance;
  std::vector<BoundaryEntry> boundary;
  bool overall = false;

  bool relevance_pass() const;
  bool boundary_pass() const;
};

MonotonicityResult check_monotonicity(const StructureFunction& phi,
                                      Level max_state,
                                      const EnumerationOptions& options = {});

/// One entry per (component, level), component-major.
std::vector<RelevanceEntry> check_relevance(
    const StructureFunction& phi, Level max_state,
    const EnumerationOptions& options = {});

std::vector<BoundaryEntry> check_boundary(const StructureFunction& phi,
                                          Level max_state);

CoherenceReport coherence_report(const StructureFunction& phi, Level max_state,
                                 const EnumerationOptions& options = {});

struct StructureBounds {
  Level low = 0;
  Level value = 0;
  Level high = 0;
};

StructureBounds structure_bounds(const StructureFunction& phi,
                                 const StateVector& x);

enum class BasicKind { Series, Parallel };

struct LevelComparison {
  Level component_level = 0;
  Level system_level = 0;
};

/// (phi(x v y), phi(x) v phi(y)).
LevelComparison redundancy_comparison(BasicKind kind, const StateVector& x,
                                      const StateVector& y);
/// (phi(x ^ y), phi(x) ^ phi(y)).
LevelComparison composition_comparison(BasicKind kind, const StateVector& x,
                                       const StateVector& y);

bool is_connection_vector(const StructureFunction& phi, const StateVector& x,
                          Level j);

struct UpperCriticalCheck {
  bool upper_critical = false;
  /// First vector strictly below x (lexicographic) with phi >= j.
  std::optional<StateVector> witness;
};

/// Brute force over the strict down-set of x.
UpperCriticalCheck check_upper_critical(const StructureFunction& phi,
                                        const StateVector& x, Level j,
                                        Level max_state,
                                        const EnumerationOptions& options = {});
bool is_upper_critical(const StructureFunction& phi, const StateVector& x,
                       Level j, Level max_state,
                       const EnumerationOptions& options = {});

struct UCVSet {
  Level level = 0;
  std::vector<StateVector> vectors;  // lexicographically sorted
};

UCVSet enumerate_ucv(const StructureFunction& phi, Level max_state, Level j,
                     const EnumerationOptions& options = {});

/// A verified upper critical connection vector to level j; answers whether
/// a vector above it reaches level j.
class LevelLowerBound {
 public:
  /// PreconditionViolated unless `ucv` is upper critical to level j.
  LevelLowerBound(const StructureFunction& phi, StateVector ucv, Level j,
                  Level max_state, const EnumerationOptions& options = {});

  /// ucv <= x implies phi(x) >= j.
  bool holds(const StateVector& x) const;

  const StateVector& ucv() const noexcept { return ucv_; }
  Level level() const noexcept { return level_; }

 private:
  StructureFunction phi_;
  StateVector ucv_;
  Level level_;
};

bool level_lower_bound_check(const StructureFunction& phi,
                             const StateVector& ucv, Level j,
                             const StateVector& x, Level max_state,
                             const EnumerationOptions& options = {});

}  // namespace mscs
