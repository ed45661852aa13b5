#ifndef ZDCOLOR_TESTS_SUPPORT_HPP
#define ZDCOLOR_TESTS_SUPPORT_HPP

#include <cstdint>

#include "zdcolor/census.hpp"

namespace zdcolor::testing {

// A proper coloring of `box` drawn by heat-bath sweeps from the fill start state.
inline ProperColoring random_coloring(const Box& box, int q, std::uint64_t seed, std::uint64_t sweeps = 30) {
  return glauber_sample(SamplerConfig{box, q, PartialColoring(box.grown(1), q), sweeps, seed});
}

}  // namespace zdcolor::testing

#endif
