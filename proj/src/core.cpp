#include "mscs/core.hpp"

#include <algorithm>
#include <charconv>

#include "mscs/error.hpp"

namespace mscs {

namespace {

void require_same_length(const StateVector& x, const StateVector& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::LengthMismatch,
                "state vectors differ in length (" + std::to_string(x.size()) +
                    " vs " + std::to_string(y.size()) + ")");
  }
}

template <typename Op>
StateVector zip_with(const StateVector& x, const StateVector& y, Op op) {
  require_same_length(x, y);
  std::vector<Level> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = op(x[i], y[i]);
  return StateVector(std::move(out));
}

}  // namespace

StateSpace::StateSpace(Level max_state) : max_state_(max_state) {
  if (max_state < 1 || max_state > kMaxSupportedState) {
    throw Error(ErrorKind::InvalidStateSpace,
                "max state must lie in [1, " +
                    std::to_string(kMaxSupportedState) + "], got " +
                    std::to_string(max_state));
  }
}

StateVector::StateVector(std::initializer_list<Level> levels)
    : StateVector(std::vector<Level>(levels)) {}

StateVector::StateVector(std::vector<Level> levels)
    : levels_(std::move(levels)) {
  if (levels_.empty()) {
    throw Error(ErrorKind::EmptyVector, "state vector must not be empty");
  }
}

bool StateVector::fits(const StateSpace& space) const noexcept {
  return std::all_of(levels_.begin(), levels_.end(),
                     [&](Level l) { return l <= space.max_state(); });
}

StateVector meet(const StateVector& x, const StateVector& y) {
  return zip_with(x, y, [](Level a, Level b) { return std::min(a, b); });
}

StateVector join(const StateVector& x, const StateVector& y) {
  return zip_with(x, y, [](Level a, Level b) { return std::max(a, b); });
}

bool leq(const StateVector& x, const StateVector& y) {
  require_same_length(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > y[i]) return false;
  }
  return true;
}

bool strictly_below(const StateVector& x, const StateVector& y) {
  return leq(x, y) && x != y;
}

StateVector update_at(const StateVector& x, std::size_t i, Level j) {
  if (i >= x.size()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "component index " + std::to_string(i + 1) +
                    " exceeds vector length " + std::to_string(x.size()));
  }
  std::vector<Level> out(x.begin(), x.end());
  out[i] = j;
  return StateVector(std::move(out));
}

StateVector constant_vector(std::size_t n, Level j) {
  return StateVector(std::vector<Level>(n, j));
}

std::pair<Level, Level> extreme_levels(const StateVector& x) {
  auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return {*lo, *hi};
}

std::string to_string(const StateVector& x) {
  std::string out = "[";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(x[i]);
  }
  out += ']';
  return out;
}

StateVector parse_state_vector(std::string_view text) {
  std::vector<Level> levels;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view field =
        text.substr(pos, comma == std::string_view::npos ? text.npos
                                                         : comma - pos);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
      field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t'))
      field.remove_suffix(1);
    Level value = 0;
    auto [end, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() ||
        end != field.data() + field.size()) {
      throw Error(ErrorKind::InvalidArgument,
                  "invalid state vector entry '" + std::string(field) + "'");
    }
    levels.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return StateVector(std::move(levels));
}

}  // namespace mscs
