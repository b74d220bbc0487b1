#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ternrev/circuit.hpp"
#include "ternrev/perm.hpp"

namespace ternrev {

enum class Direction { forward, bidirectional };
enum class TieBreak { seeded, exhaustive };

inline constexpr std::uint64_t kDefaultSeed = 0x5eed'2018'0864ULL;

struct SynthOptions {
  Direction direction = Direction::bidirectional;
  TieBreak tie_break = TieBreak::seeded;
  std::uint64_t seed = kDefaultSeed;
  /// Maximum number of explored branches in exhaustive mode.
  std::size_t branch_limit = 1 << 14;
  CostModel cost;
  int max_gates = 100;
};

class SynthesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All single- or zero-controlled gates on two lines with a non-identity
/// base, ordered by (target, control, base). Exactly 40 gates.
std::vector<Gate> elementary_library(int lines = 2);

/// Sum over all inputs of the number of trits in which the output word
/// differs from the input word. Zero exactly for the identity.
int distance(const Perm& p);

/// Transformation-based synthesis of a two-trit reversible function.
///
/// Rows are settled in index order. For the first row i with g(i) != i the
/// engine considers every library gate that fixes rows 0..i-1, applied on the
/// output side (g <- g then e) and, in bidirectional mode, on the input side
/// when the gate moves the preimage of i closer to i. The winner has the
/// smallest total distance of the resulting g, then the lowest gate cost,
/// then a seeded random draw. When no admissible gate lowers the distance,
/// the cheapest gate that moves g(i) closer to i is taken instead, so every
/// row always settles.
///
/// In exhaustive mode the result is the cheapest member of mmd_plus_all.
/// Throws SynthesisError if more than opts.max_gates gates would be emitted.
Circuit mmd_plus(const Perm& f, const SynthOptions& opts = {});

struct MmdAllResult {
  /// Distinct circuits, sorted by raw cost (then by text).
  std::vector<Circuit> circuits;
  bool truncated = false;
};

/// Every circuit reachable by branching on all ties of mmd_plus, up to
/// opts.branch_limit explored branches.
MmdAllResult mmd_plus_all(const Perm& f, const SynthOptions& opts = {});

}  // namespace ternrev
