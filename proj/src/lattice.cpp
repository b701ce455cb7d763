#include "mscs/lattice.hpp"

#include "mscs/error.hpp"

namespace mscs {

std::uint64_t checked_space_size(std::size_t n, Level max_state,
                                 std::uint64_t limit) {
  const std::uint64_t radix = std::uint64_t{max_state} + 1;
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (size > limit / radix) {
      throw Error(ErrorKind::ExplosionLimit,
                  "state space (" + std::to_string(radix) + ")^" +
                      std::to_string(n) + " exceeds the enumeration limit of " +
                      std::to_string(limit) + " vectors");
    }
    size *= radix;
  }
  return size;
}

LatticeIndexer::LatticeIndexer(std::size_t n, Level max_state,
                               std::uint64_t limit)
    : n_(n), max_state_(max_state) {
  if (n == 0) throw Error(ErrorKind::EmptyVector, "dimension must be >= 1");
  [[maybe_unused]] const StateSpace space(max_state);
  size_ = checked_space_size(n, max_state, limit);
  strides_.resize(n);
  std::uint64_t s = 1;
  for (std::size_t i = n; i-- > 0;) {
    strides_[i] = s;
    s *= radix();
  }
}

std::uint64_t LatticeIndexer::index_of(std::span<const Level> x) const {
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < n_; ++i) index += x[i] * strides_[i];
  return index;
}

void LatticeIndexer::decode(std::uint64_t index, std::span<Level> out) const {
  for (std::size_t i = n_; i-- > 0;) {
    out[i] = static_cast<Level>(index % radix());
    index /= radix();
  }
}

StateVector LatticeIndexer::vector_at(std::uint64_t index) const {
  std::vector<Level> levels(n_);
  decode(index, levels);
  return StateVector(std::move(levels));
}

bool LatticeIndexer::next(std::span<Level> x) const noexcept {
  for (std::size_t i = n_; i-- > 0;) {
    if (x[i] < max_state_) {
      ++x[i];
      return true;
    }
    x[i] = 0;
  }
  return false;
}

}  // namespace mscs
