#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mscs/core.hpp"

namespace mscs {

enum class NodeKind { Component, Series, Parallel, KOutOfN };

/// Expression tree over components. Component indices are stored 0-based;
/// the DSL and all printed text use 1-based indices (c1 is index 0).
struct StructureExpr {
  NodeKind kind = NodeKind::Component;
  std::size_t index = 0;  // Component only
  std::size_t k = 0;      // KOutOfN only
  std::vector<StructureExpr> children;

  static StructureExpr component(std::size_t index);
  static StructureExpr series(std::vector<StructureExpr> children);
  static StructureExpr parallel(std::vector<StructureExpr> children);
  static StructureExpr k_out_of_n(std::size_t k,
                                  std::vector<StructureExpr> children);

  friend bool operator==(const StructureExpr&,
                         const StructureExpr&) = default;
};

Level eval_series(std::span<const Level> x);
Level eval_parallel(std::span<const Level> x);

/// The (n-k+1)-th smallest entry, i.e. the system works at level >= l when at
/// least k components do.
Level eval_k_out_of_n(std::size_t k, std::span<const Level> x);

/// Largest component index referenced (1-based count n).
std::size_t arity(const StructureExpr& e);

/// Requires x.size() == arity(e).
Level eval_expr(const StructureExpr& e, std::span<const Level> x);
inline Level eval_expr(const StructureExpr& e, const StateVector& x) {
  return eval_expr(e, x.levels());
}

/// Evaluation without the arity check; x must be at least arity(e) long.
Level eval_expr_unchecked(const StructureExpr& e, std::span<const Level> x);

StructureExpr parse_expr(std::string_view text);
std::string format_expr(const StructureExpr& e);

/// A structure function phi : S^n -> S of fixed arity. Wraps either an
/// expression or an arbitrary callable (used for planted non-coherent
/// functions in tests and checks).
class StructureFunction {
 public:
  using Callable = std::function<Level(std::span<const Level>)>;

  StructureFunction(std::size_t arity, Callable fn, std::string name);

  /// n defaults to arity(e); a larger n declares unused trailing components.
  static StructureFunction from_expr(const StructureExpr& e);
  static StructureFunction from_expr(const StructureExpr& e, std::size_t n);

  static StructureFunction series(std::size_t n);
  static StructureFunction parallel(std::size_t n);
  static StructureFunction k_out_of_n(std::size_t k, std::size_t n);

  std::size_t arity() const noexcept { return arity_; }
  const std::string& name() const noexcept { return name_; }

  Level operator()(std::span<const Level> x) const { return fn_(x); }
  Level operator()(const StateVector& x) const;

 private:
  std::size_t arity_;
  Callable fn_;
  std::string name_;
};

}  // namespace mscs
