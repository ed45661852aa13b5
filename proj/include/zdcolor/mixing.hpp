#ifndef ZDCOLOR_MIXING_HPP
#define ZDCOLOR_MIXING_HPP

// Finite-window witnesses against strong irreducibility and strong spatial
// mixing, and connectivity of the pivot, N-pivot and Kempe move graphs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zdcolor/frozen.hpp"
#include "zdcolor/lattice.hpp"
#include "zdcolor/search.hpp"

namespace zdcolor {

/// The tube configuration around the first axis. Unit vectors are indexed
/// e_1..e_2d with e_{2d-i+1} = -e_i; the tube is {m e_1 + e_t : 2 <= t <= 2d-1}
/// and carries (m + t) mod (q-2). Off the tube, odd sites get q-2 and even
/// sites q-1; `swapped` exchanges those two.
struct TubeRule {
  int d = 2;
  int q = 4;
  bool swapped = false;

  Color operator()(const Coord& i) const;
  int dim() const { return d; }
  int colors() const { return q; }
  bool on_tube(const Coord& i) const;
};

/// Unit vector e_t, 1 <= t <= 2d, with e_{2d-t+1} = -e_t.
Coord signed_unit(int d, int t);

struct MixingWitness {
  TubeRule x;
  TubeRule y;
  int d = 2;
  int q = 4;
  /// Gap between U = {0} and V = {n e_1}.
  Index n = 0;

  Coord u() const { return Coord::zero(d); }
  Coord v() const { return Coord::unit(d, 0, n); }
  /// Tube sites with |m| <= radius.
  CoordSet tube(Index radius) const;
};

/// Requires d+2 <= q <= 2d.
MixingWitness tssm_witness(int d, int q, Index n = 1);
/// Same construction without the range check; used to probe other q.
MixingWitness tube_candidate(int d, int q, Index n = 1);

struct ForcingResult {
  bool forced = false;
  /// Axis colors m e_1 for -radius <= m <= radius after propagation (-1 if open).
  std::vector<Color> axis;
  std::optional<Coord> first_unforced;
};

/// Pins z to x on U and the tube inside B_radius, runs arc consistency on the
/// not-equal constraints, and checks that every axis site m e_1 with
/// |m| <= radius-1 is forced to x's color. Sets the witness gap to radius-1.
ForcingResult verify_forcing(MixingWitness& w, Index radius);

/// Complete backtracking check on B_radius: for every axis site and every
/// color other than x's, no proper coloring agreeing with x on U and the tube
/// uses that color there.
bool axis_forced_exhaustive(const MixingWitness& w, Index radius);

struct SiViolation {
  LiftedColoringRule x;
  int q = 3;
  Index n = 1;
  Color y_at_origin = 0;
  /// Proper fillings of B_n agreeing with x on dB_n.
  BigInt fillings = 0;
  bool unique_filling_is_x = false;
  /// No filling carries y's color at the origin.
  bool violated = false;
};

/// x frozen, y = x + 1 mod q, U = dB_n, V = {0}; decided by enumeration.
/// Requires 3 <= q <= d+1.
SiViolation si_violation_witness(int d, int q, Index n);

enum class MoveKind { pivot, npivot, kempe };

struct MoveSpec {
  MoveKind kind = MoveKind::pivot;
  int block = 1;  ///< N for N-pivot moves

  static MoveSpec parse(const std::string& text);  ///< "pivot", "npivot:N", "kempe"
  std::string str() const;
};

struct MoveGraphReport {
  std::uint64_t state_count = 0;
  std::uint64_t component_count = 0;
  std::uint64_t largest_component = 0;
  /// Twice the largest BFS eccentricity of a component's first state.
  std::uint64_t diameter_bound = 0;
  std::vector<std::uint64_t> component_sizes;
  MoveSpec move;

  bool connected() const { return component_count <= 1; }
};

class StateCapExceeded : public std::runtime_error {
 public:
  explicit StateCapExceeded(std::uint64_t cap)
      : std::runtime_error("state space exceeds the cap of " + std::to_string(cap) + " colorings"), cap_(cap) {}
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t cap_;
};

/// Enumerates every proper coloring of `box` agreeing with `boundary`
/// (supported outside the box) and explores the move graph by BFS.
MoveGraphReport move_graph(const Box& box, const PartialColoring& boundary, int q, MoveSpec move,
                           std::uint64_t state_cap = 10'000'000);

}  // namespace zdcolor

#endif  // ZDCOLOR_MIXING_HPP
