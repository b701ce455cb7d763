#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mscs {

/// A component or system performance level: 0 is complete failure, M is
/// perfect functioning.
using Level = unsigned;

inline constexpr Level kMaxSupportedState = 255;

/// The level set {0, 1, ..., M}.
class StateSpace {
 public:
  explicit StateSpace(Level max_state);

  Level max_state() const noexcept { return max_state_; }
  std::size_t level_count() const noexcept { return max_state_ + 1u; }

 private:
  Level max_state_;
};

/// Component levels x_1..x_n. Never empty.
class StateVector {
 public:
  StateVector(std::initializer_list<Level> levels);
  explicit StateVector(std::vector<Level> levels);

  std::size_t size() const noexcept { return levels_.size(); }
  Level operator[](std::size_t i) const { return levels_[i]; }
  std::span<const Level> levels() const noexcept { return levels_; }
  auto begin() const noexcept { return levels_.begin(); }
  auto end() const noexcept { return levels_.end(); }

  /// True when every level lies in the space.
  bool fits(const StateSpace& space) const noexcept;

  friend bool operator==(const StateVector&, const StateVector&) = default;
  friend auto operator<=>(const StateVector&, const StateVector&) = default;

 private:
  std::vector<Level> levels_;
};

StateVector meet(const StateVector& x, const StateVector& y);
StateVector join(const StateVector& x, const StateVector& y);
bool leq(const StateVector& x, const StateVector& y);
bool strictly_below(const StateVector& x, const StateVector& y);

/// The vector (j_i, x): a copy of x with position i (0-based) set to j.
StateVector update_at(const StateVector& x, std::size_t i, Level j);

StateVector constant_vector(std::size_t n, Level j);

/// (minimum entry, maximum entry).
std::pair<Level, Level> extreme_levels(const StateVector& x);

/// "[2,0,3]"
std::string to_string(const StateVector& x);

/// Parses comma-separated levels such as "2,0,3". Whitespace around entries
/// is ignored.
StateVector parse_state_vector(std::string_view text);

}  // namespace mscs
