#ifndef ZDCOLOR_CENSUS_HPP
#define ZDCOLOR_CENSUS_HPP

// Exact counts of proper colorings, entropy series, and a heat-bath sampler.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zdcolor/lattice.hpp"
#include "zdcolor/rng.hpp"
#include "zdcolor/search.hpp"

namespace zdcolor {

enum class CountMethod {
  automatic,
  transfer_matrix,  ///< slice by slice along the first axis
  dfs,              ///< backtracking enumeration
};

struct CountReport {
  Box region;
  int q = 0;
  /// Empty for free boundary conditions. Sites inside the region are pinned,
  /// sites outside exclude their color from adjacent region sites.
  PartialColoring constraints;
  BigInt count = 0;
  double log_count_per_site = 0.0;  ///< ln(count)/|region|, 0 when count == 0
  CountMethod method = CountMethod::automatic;
};

class SizeCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caps: the transfer matrix handles slices with at most `kMaxSliceStates`
/// proper slice colorings; backtracking handles at most `kMaxDfsSites` sites.
constexpr std::size_t kMaxSliceStates = 20'000;
constexpr std::size_t kMaxDfsSites = 24;

CountReport count_exact(const Box& region, int q, const PartialColoring& constraints,
                        CountMethod method = CountMethod::automatic);
CountReport count_exact(const Box& region, int q, CountMethod method = CountMethod::automatic);

/// Natural log of a nonnegative big integer (-inf for 0).
double big_log(const BigInt& x);

struct EntropyPoint {
  Index n = 0;
  BigInt count = 0;
  double per_site = 0.0;
};

/// ln(#colorings of [n]^d)/n^d for each n. With `frozen`, the boundary
/// d[n]^d is fixed to the frozen q-coloring (needs q <= d+1).
std::vector<EntropyPoint> entropy_series(int d, int q, const std::vector<Index>& ns, bool frozen = false);

struct SamplerConfig {
  Box region;
  int q = 0;
  PartialColoring boundary;
  std::uint64_t steps = 0;  ///< sweeps
  std::uint64_t seed = 0;
};

/// Systematic-scan heat bath: each sweep visits the sites in row-major order
/// and redraws each uniformly among colors absent from its neighbors
/// (including boundary sites). The start state comes from fill or search.
class GlauberSampler {
 public:
  /// Throws std::domain_error (UNSAT) when no start state exists.
  explicit GlauberSampler(const SamplerConfig& cfg);

  void sweep();
  void run(std::uint64_t sweeps) {
    for (std::uint64_t i = 0; i < sweeps; ++i) sweep();
  }
  /// One site update; exposes the kernel for tests.
  void update(std::size_t site);

  std::span<const Color> state() const { return state_; }
  ProperColoring coloring() const { return ProperColoring(cfg_.region, cfg_.q, state_); }
  /// Legal colors at a site given the current neighbors.
  ColorMask legal(std::size_t site) const;

 private:
  SamplerConfig cfg_;
  std::vector<Color> state_;
  std::vector<ColorMask> fixed_;  ///< colors excluded by the boundary
  std::vector<std::vector<std::size_t>> adj_;
  SplitMix64 rng_;
};

ProperColoring glauber_sample(const SamplerConfig& cfg);

}  // namespace zdcolor

#endif  // ZDCOLOR_CENSUS_HPP
