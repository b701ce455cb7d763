#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mscs/coherence.hpp"
#include "mscs/core.hpp"
#include "mscs/structure.hpp"

namespace mscs {

inline constexpr double kPmfTolerance = 1e-9;

/// P[X_i = j] for j = 0..M. May hold invalid data; validate_pmf says why.
struct ComponentDistribution {
  std::vector<double> pmf;

  Level max_state() const noexcept {
    return pmf.empty() ? 0 : static_cast<Level>(pmf.size() - 1);
  }
};

enum class PmfIssue { Ok, TooFewStates, NegativeMass, ExceedsOne, NormalizationError };

const char* to_string(PmfIssue issue) noexcept;

struct PmfDiagnostic {
  PmfIssue issue = PmfIssue::Ok;
  std::size_t entry = 0;   // offending entry for per-entry issues
  double residual = 0.0;   // sum - 1 for NormalizationError
  std::string message;

  bool ok() const noexcept { return issue == PmfIssue::Ok; }
};

PmfDiagnostic validate_pmf(const ComponentDistribution& d);

/// InvalidPMF unless every distribution validates and all share one M.
/// Returns that M.
Level require_valid_distributions(std::span<const ComponentDistribution> dists);

/// P_i(j) = sum_{k <= j} p_ik.
double component_cdf(const ComponentDistribution& d, Level j);

struct SystemDistribution {
  std::vector<double> pmf;
  std::vector<double> cdf;

  Level max_state() const noexcept {
    return static_cast<Level>(pmf.size() - 1);
  }
  static SystemDistribution from_pmf(std::vector<double> pmf);
};

/// Full enumeration of {0..M}^n under mutual independence.
SystemDistribution exact_system_distribution(
    const StructureExpr& e, std::span<const ComponentDistribution> dists,
    const EnumerationOptions& options = {});
SystemDistribution exact_system_distribution(
    const StructureFunction& phi, std::span<const ComponentDistribution> dists,
    const EnumerationOptions& options = {});

/// Series: 1 - prod (1 - P_i(j)). Parallel: prod P_i(j).
double closed_form_cdf(BasicKind kind,
                       std::span<const ComponentDistribution> dists, Level j);

struct CdfBounds {
  double lower = 0.0;  // prod P_i(j)
  double upper = 0.0;  // 1 - prod (1 - P_i(j))
};

CdfBounds cdf_bounds(BasicKind kind,
                     std::span<const ComponentDistribution> dists, Level j);

/// Slack used when comparing probabilities that are equal in exact
/// arithmetic (dominance hypothesis and conclusion).
inline constexpr double kDominanceSlack = 1e-12;

/// Requires P_i(j) >= P'_i(j) for every component and level
/// (HypothesisViolated otherwise); returns whether the system CDFs satisfy
/// P(j) >= P'(j) at every level.
bool dominance_check(const StructureExpr& e,
                     std::span<const ComponentDistribution> dists_primed,
                     std::span<const ComponentDistribution> dists,
                     const EnumerationOptions& options = {});

struct MonteCarloEstimate {
  double estimate = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double std_error = 0.0;
};

/// Fraction of `samples` independent draws with phi(X) <= j. Components are
/// drawn in index order by inverse CDF from one Rng(seed) stream.
MonteCarloEstimate monte_carlo_cdf(const StructureExpr& e,
                                   std::span<const ComponentDistribution> dists,
                                   Level j, std::uint64_t samples,
                                   std::uint64_t seed);

/// Estimates at every level from the same draws monte_carlo_cdf uses.
std::vector<MonteCarloEstimate> monte_carlo_distribution(
    const StructureExpr& e, std::span<const ComponentDistribution> dists,
    std::uint64_t samples, std::uint64_t seed);

}  // namespace mscs
