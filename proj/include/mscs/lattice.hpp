#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mscs/core.hpp"

namespace mscs {

inline constexpr std::uint64_t kDefaultEnumerationLimit = 100'000'000;

/// (M+1)^n, or ExplosionLimit when it exceeds `limit`.
std::uint64_t checked_space_size(std::size_t n, Level max_state,
                                 std::uint64_t limit);

/// Bijection between {0..M}^n and [0, (M+1)^n) in lexicographic order with
/// component 1 as the most significant digit.
class LatticeIndexer {
 public:
  LatticeIndexer(std::size_t n, Level max_state,
                 std::uint64_t limit = kDefaultEnumerationLimit);

  std::size_t dimension() const noexcept { return n_; }
  Level max_state() const noexcept { return max_state_; }
  std::uint64_t radix() const noexcept { return max_state_ + 1u; }
  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t stride(std::size_t i) const noexcept { return strides_[i]; }

  std::uint64_t index_of(std::span<const Level> x) const;
  void decode(std::uint64_t index, std::span<Level> out) const;
  StateVector vector_at(std::uint64_t index) const;

  /// Lexicographic successor in place; false after the last vector.
  bool next(std::span<Level> x) const noexcept;

 private:
  std::size_t n_;
  Level max_state_;
  std::uint64_t size_;
  std::vector<std::uint64_t> strides_;
};

}  // namespace mscs
