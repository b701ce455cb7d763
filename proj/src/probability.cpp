#include "mscs/probability.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "mscs/error.hpp"
#include "mscs/kernels.hpp"
#include "mscs/rng.hpp"

namespace mscs {

namespace {

std::string describe(double value) {
  std::ostringstream out;
  out << std::setprecision(12) << value;
  return out.str();
}

void require_level(Level j, Level max_state) {
  if (j > max_state) {
    throw Error(ErrorKind::LevelOutOfRange,
                "level " + std::to_string(j) + " exceeds max state " +
                    std::to_string(max_state));
  }
}

std::vector<std::vector<double>> pmf_table(
    std::span<const ComponentDistribution> dists) {
  std::vector<std::vector<double>> out;
  out.reserve(dists.size());
  for (const auto& d : dists) out.push_back(d.pmf);
  return out;
}

std::vector<std::uint64_t> sample_level_counts(
    const StructureExpr& e, std::span<const ComponentDistribution> dists,
    std::uint64_t samples, std::uint64_t seed) {
  const Level max_state = require_valid_distributions(dists);
  if (arity(e) != dists.size()) {
    throw Error(ErrorKind::ArityMismatch,
                "expression has arity " + std::to_string(arity(e)) + " but " +
                    std::to_string(dists.size()) +
                    " component distributions were given");
  }
  if (samples == 0) {
    throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
  }
  std::vector<std::vector<double>> cdfs;
  for (const auto& d : dists) {
    std::vector<double> cdf(d.pmf.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < d.pmf.size(); ++k) cdf[k] = acc += d.pmf[k];
    cdfs.push_back(std::move(cdf));
  }

  Rng rng(seed);
  std::vector<std::uint64_t> counts(max_state + 1u, 0);
  std::vector<Level> x(dists.size());
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double u = rng.uniform();
      Level k = 0;
      while (k < max_state && !(u < cdfs[i][k])) ++k;
      x[i] = k;
    }
    ++counts[eval_expr_unchecked(e, x)];
  }
  return counts;
}

}  // namespace

const char* to_string(PmfIssue issue) noexcept {
  switch (issue) {
    case PmfIssue::Ok: return "Ok";
    case PmfIssue::TooFewStates: return "TooFewStates";
    case PmfIssue::NegativeMass: return "NegativeMass";
    case PmfIssue::ExceedsOne: return "ExceedsOne";
    case PmfIssue::NormalizationError: return "NormalizationError";
  }
  return "Unknown";
}

PmfDiagnostic validate_pmf(const ComponentDistribution& d) {
  PmfDiagnostic diag;
  if (d.pmf.size() < 2 || d.pmf.size() > kMaxSupportedState + 1u) {
    diag.issue = PmfIssue::TooFewStates;
    diag.message = "a PMF needs between 2 and " +
                   std::to_string(kMaxSupportedState + 1u) + " entries, got " +
                   std::to_string(d.pmf.size());
    return diag;
  }
  for (std::size_t k = 0; k < d.pmf.size(); ++k) {
    if (!(d.pmf[k] >= 0.0)) {
      diag.issue = PmfIssue::NegativeMass;
      diag.entry = k;
      diag.message = "entry " + std::to_string(k) + " is negative (" +
                     describe(d.pmf[k]) + ")";
      return diag;
    }
  }
  for (std::size_t k = 0; k < d.pmf.size(); ++k) {
    if (d.pmf[k] > 1.0) {
      diag.issue = PmfIssue::ExceedsOne;
      diag.entry = k;
      diag.message = "entry " + std::to_string(k) + " exceeds 1 (" +
                     describe(d.pmf[k]) + ")";
      return diag;
    }
  }
  double sum = 0.0;
  for (double p : d.pmf) sum += p;
  if (std::abs(sum - 1.0) > kPmfTolerance) {
    diag.issue = PmfIssue::NormalizationError;
    diag.residual = sum - 1.0;
    diag.message = "entries sum to " + describe(sum) + " (residual " +
                   describe(diag.residual) + ")";
  }
  return diag;
}

Level require_valid_distributions(
    std::span<const ComponentDistribution> dists) {
  if (dists.empty()) {
    throw Error(ErrorKind::EmptyVector, "no component distributions given");
  }
  for (std::size_t i = 0; i < dists.size(); ++i) {
    const PmfDiagnostic diag = validate_pmf(dists[i]);
    if (!diag.ok()) {
      throw Error(ErrorKind::InvalidPMF, "component " + std::to_string(i + 1) +
                                             ": " + diag.message);
    }
    if (dists[i].pmf.size() != dists.front().pmf.size()) {
      throw Error(ErrorKind::InvalidPMF,
                  "component " + std::to_string(i + 1) + " has " +
                      std::to_string(dists[i].pmf.size()) +
                      " states, component 1 has " +
                      std::to_string(dists.front().pmf.size()));
    }
  }
  return dists.front().max_state();
}

double component_cdf(const ComponentDistribution& d, Level j) {
  require_level(j, d.max_state());
  double acc = 0.0;
  for (Level k = 0; k <= j; ++k) acc += d.pmf[k];
  return acc;
}

SystemDistribution SystemDistribution::from_pmf(std::vector<double> pmf) {
  SystemDistribution out;
  out.cdf.resize(pmf.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) out.cdf[k] = acc += pmf[k];
  out.pmf = std::move(pmf);
  return out;
}

SystemDistribution exact_system_distribution(
    const StructureFunction& phi, std::span<const ComponentDistribution> dists,
    const EnumerationOptions& options) {
  const Level max_state = require_valid_distributions(dists);
  if (phi.arity() != dists.size()) {
    throw Error(ErrorKind::ArityMismatch,
                phi.name() + " has arity " + std::to_string(phi.arity()) +
                    " but " + std::to_string(dists.size()) +
                    " component distributions were given");
  }
  LatticeIndexer lattice(phi.arity(), max_state, options.limit);
  const auto pmfs = pmf_table(dists);
  return SystemDistribution::from_pmf(
      kernels::accumulate_distribution_parallel(phi, lattice, pmfs));
}

SystemDistribution exact_system_distribution(
    const StructureExpr& e, std::span<const ComponentDistribution> dists,
    const EnumerationOptions& options) {
  if (arity(e) != dists.size()) {
    throw Error(ErrorKind::ArityMismatch,
                "expression has arity " + std::to_string(arity(e)) + " but " +
                    std::to_string(dists.size()) +
                    " component distributions were given");
  }
  return exact_system_distribution(StructureFunction::from_expr(e), dists,
                                   options);
}

double closed_form_cdf(BasicKind kind,
                       std::span<const ComponentDistribution> dists, Level j) {
  const Level max_state = require_valid_distributions(dists);
  require_level(j, max_state);
  double product = 1.0;
  if (kind == BasicKind::Series) {
    for (const auto& d : dists) product *= 1.0 - component_cdf(d, j);
    return 1.0 - product;
  }
  for (const auto& d : dists) product *= component_cdf(d, j);
  return product;
}

CdfBounds cdf_bounds(BasicKind /*kind*/,
                     std::span<const ComponentDistribution> dists, Level j) {
  // Both bounds hold for every coherent structure; the kind only selects
  // which one is attained.
  return {closed_form_cdf(BasicKind::Parallel, dists, j),
          closed_form_cdf(BasicKind::Series, dists, j)};
}

bool dominance_check(const StructureExpr& e,
                     std::span<const ComponentDistribution> dists_primed,
                     std::span<const ComponentDistribution> dists,
                     const EnumerationOptions& options) {
  const Level m_primed = require_valid_distributions(dists_primed);
  const Level m = require_valid_distributions(dists);
  if (dists_primed.size() != dists.size() || m_primed != m) {
    throw Error(ErrorKind::ArityMismatch,
                "the two distribution sets differ in size or state count");
  }
  for (std::size_t i = 0; i < dists.size(); ++i) {
    for (Level j = 0; j <= m; ++j) {
      const double p = component_cdf(dists[i], j);
      const double p_primed = component_cdf(dists_primed[i], j);
      if (p < p_primed - kDominanceSlack) {
        throw Error(ErrorKind::HypothesisViolated,
                    "component " + std::to_string(i + 1) + " at level " +
                        std::to_string(j) + ": P_i(j) = " + describe(p) +
                        " < P'_i(j) = " + describe(p_primed));
      }
    }
  }
  const SystemDistribution sys = exact_system_distribution(e, dists, options);
  const SystemDistribution sys_primed =
      exact_system_distribution(e, dists_primed, options);
  for (Level j = 0; j <= m; ++j) {
    if (sys.cdf[j] < sys_primed.cdf[j] - kDominanceSlack) return false;
  }
  return true;
}

std::vector<MonteCarloEstimate> monte_carlo_distribution(
    const StructureExpr& e, std::span<const ComponentDistribution> dists,
    std::uint64_t samples, std::uint64_t seed) {
  const auto counts = sample_level_counts(e, dists, samples, seed);
  std::vector<MonteCarloEstimate> out;
  std::uint64_t below = 0;
  for (std::uint64_t c : counts) {
    below += c;
    MonteCarloEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.estimate = static_cast<double>(below) / static_cast<double>(samples);
    est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) /
                              static_cast<double>(samples));
    out.push_back(est);
  }
  return out;
}

MonteCarloEstimate monte_carlo_cdf(const StructureExpr& e,
                                   std::span<const ComponentDistribution> dists,
                                   Level j, std::uint64_t samples,
                                   std::uint64_t seed) {
  require_level(j, require_valid_distributions(dists));
  return monte_carlo_distribution(e, dists, samples, seed)[j];
}

}  // namespace mscs
