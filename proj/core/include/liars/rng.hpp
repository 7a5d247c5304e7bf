#pragma once

#include <cstddef>
#include <cstdint>

namespace liars {

// Counter-based generator: draw n of stream s is a pure function of
// (seed, s, n), so streams can be split without coordination.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  double uniform();
  double uniform(double lo, double hi);
  std::size_t index(std::size_t n);
  double normal();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace liars
