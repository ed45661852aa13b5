#ifndef ZDCOLOR_RNG_HPP
#define ZDCOLOR_RNG_HPP

#include <cstdint>
#include <limits>

namespace zdcolor {

/// SplitMix64 (Steele, Lea, Flood 2014). Satisfies UniformRandomBitGenerator;
/// `split()` derives an independent stream. Output is bit-identical across
/// platforms, and so is `below()`, unlike std::uniform_int_distribution.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection. bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = (*this)();
      if (r >= threshold) return r % bound;
    }
  }

  SplitMix64 split() { return SplitMix64((*this)()); }

 private:
  std::uint64_t state_;
};

}  // namespace zdcolor

#endif  // ZDCOLOR_RNG_HPP
