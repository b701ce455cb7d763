#pragma once

// Brute-force oracles and random generators for tests. Nothing here touches
// the lattice kernels: every routine walks the state space with its own
// nested-loop enumeration straight from the definitions.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "mscs/core.hpp"
#include "mscs/probability.hpp"
#include "mscs/structure.hpp"

namespace mscs::oracle {

/// Every vector of {0..M}^n in lexicographic order (component 1 most
/// significant), built by recursion.
inline std::vector<StateVector> all_vectors(std::size_t n, Level max_state) {
  std::vector<StateVector> out;
  std::vector<Level> x(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      out.emplace_back(x);
      return;
    }
    for (Level l = 0; l <= max_state; ++l) {
      x[i] = l;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

/// First (x, y) in lexicographic pair order with x <= y and phi(x) > phi(y).
inline std::optional<std::pair<StateVector, StateVector>> first_monotonicity_violation(
    const StructureFunction& phi, Level max_state) {
  const auto space = all_vectors(phi.arity(), max_state);
  for (const auto& x : space) {
    for (const auto& y : space) {
      if (leq(x, y) && phi(x) > phi(y)) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

/// Condition 2 taken literally: is the context x a witness for (i, j)?
inline bool is_relevance_witness(const StructureFunction& phi,
                                 const StateVector& x, std::size_t i, Level j,
                                 Level max_state) {
  if (phi(update_at(x, i, j)) != j) return false;
  for (Level l = 0; l <= max_state; ++l) {
    if (l != j && phi(update_at(x, i, l)) == j) return false;
  }
  return true;
}

/// Least vector (j_i, x) over all contexts x, or nullopt.
inline std::optional<StateVector> first_relevance_witness(
    const StructureFunction& phi, std::size_t i, Level j, Level max_state) {
  for (const auto& x : all_vectors(phi.arity(), max_state)) {
    if (x[i] != j) continue;
    if (is_relevance_witness(phi, x, i, j, max_state)) return x;
  }
  return std::nullopt;
}

/// Definition of an upper critical connection vector over the whole space.
inline bool is_upper_critical(const StructureFunction& phi, const StateVector& x,
                              Level j, Level max_state) {
  if (phi(x) != j) return false;
  for (const auto& y : all_vectors(phi.arity(), max_state)) {
    if (strictly_below(y, x) && phi(y) >= j) return false;
  }
  return true;
}

/// System PMF by enumerating every vector and multiplying marginals.
inline std::vector<double> distribution(
    const StructureFunction& phi, const std::vector<ComponentDistribution>& dists) {
  const Level max_state = dists.front().max_state();
  std::vector<double> pmf(max_state + 1u, 0.0);
  for (const auto& x : all_vectors(phi.arity(), max_state)) {
    double p = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) p *= dists[i].pmf[x[i]];
    pmf[phi(x)] += p;
  }
  return pmf;
}

inline std::vector<double> cumulative(const std::vector<double>& pmf) {
  std::vector<double> cdf(pmf.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < pmf.size(); ++j) cdf[j] = acc += pmf[j];
  return cdf;
}

// ---------------------------------------------------------------------------
// Generators

using Engine = std::mt19937_64;

inline std::size_t uniform_int(Engine& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline StateVector random_vector(Engine& rng, std::size_t n, Level max_state) {
  std::vector<Level> x(n);
  for (auto& l : x) l = static_cast<Level>(uniform_int(rng, 0, max_state));
  return StateVector(std::move(x));
}

/// Random PMF with M+1 entries; occasionally puts exact zeros in.
inline ComponentDistribution random_pmf(Engine& rng, Level max_state) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(max_state + 1u);
  double total = 0.0;
  for (auto& v : w) {
    v = uniform_int(rng, 0, 5) == 0 ? 0.0 : u(rng);
    total += v;
  }
  if (total == 0.0) {
    w.back() = 1.0;
    total = 1.0;
  }
  for (auto& v : w) v /= total;
  return {w};
}

/// PMF whose CDF is pointwise >= the given one: CDF = max(F, G) for a random G.
inline ComponentDistribution dominated_below(Engine& rng,
                                             const ComponentDistribution& d) {
  const ComponentDistribution g = random_pmf(rng, d.max_state());
  std::vector<double> cdf(d.pmf.size());
  double fa = 0.0, ga = 0.0;
  for (std::size_t k = 0; k < d.pmf.size(); ++k) {
    fa += d.pmf[k];
    ga += g.pmf[k];
    cdf[k] = std::max(fa, ga);
  }
  cdf.back() = 1.0;
  std::vector<double> pmf(cdf.size());
  for (std::size_t k = 0; k < cdf.size(); ++k)
    pmf[k] = std::max(0.0, cdf[k] - (k ? cdf[k - 1] : 0.0));
  return {pmf};
}

/// Random expression over c1..cn with depth <= max_depth (a bare component
/// has depth 1).
inline StructureExpr random_expr(Engine& rng, std::size_t n, std::size_t max_depth) {
  std::function<StructureExpr(std::size_t)> rec = [&](std::size_t depth) {
    if (depth >= max_depth || uniform_int(rng, 0, 3) == 0)
      return StructureExpr::component(uniform_int(rng, 0, n - 1));
    const std::size_t kind = uniform_int(rng, 0, 2);
    const std::size_t min_children = kind == 2 ? 1 : 2;
    std::vector<StructureExpr> children;
    const std::size_t count = uniform_int(rng, min_children, 4);
    for (std::size_t c = 0; c < count; ++c) children.push_back(rec(depth + 1));
    if (kind == 0) return StructureExpr::series(std::move(children));
    if (kind == 1) return StructureExpr::parallel(std::move(children));
    const std::size_t k = uniform_int(rng, 1, children.size());
    return StructureExpr::k_out_of_n(k, std::move(children));
  };
  return rec(1);
}

/// Like random_expr but with arity exactly n (wrapped in a series with c_n
/// when the draw misses it).
inline StructureExpr random_full_expr(Engine& rng, std::size_t n,
                                      std::size_t max_depth) {
  StructureExpr e = random_expr(rng, n, max_depth);
  if (arity(e) != n) {
    e = StructureExpr::series({std::move(e), StructureExpr::component(n - 1)});
  }
  return e;
}

}  // namespace mscs::oracle
