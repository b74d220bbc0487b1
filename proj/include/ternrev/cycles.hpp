#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ternrev/circuit.hpp"
#include "ternrev/mmd.hpp"
#include "ternrev/perm.hpp"

namespace ternrev {

/// Ordered cycle factors. Composing them left to right reproduces the source
/// permutation; when `disjoint` holds no point occurs in two factors.
struct CycleDecomposition {
  std::vector<Cycle> factors;
  bool disjoint = true;
};

enum class StrategyKind { natural, three_cycles, transpositions };

struct Strategy {
  StrategyKind kind = StrategyKind::natural;
  /// Try every rotation of each cycle before splitting into transpositions.
  bool pivot_search = false;
};

/// Disjoint cycles of `p` in canonical form, ordered by their minimum point.
CycleDecomposition natural_cycles(const Perm& p);

/// (a1..ak) = (a1 a2 a3)(a1 a4 a5)...; even lengths end with (a1 ak).
std::vector<Cycle> three_cycle_factors(const Cycle& c);

/// Rotates `c` to start at c[rotation] = b, then (b b2)(b b3)...(b bk).
std::vector<Cycle> transposition_factors(const Cycle& c, std::size_t rotation = 0);

/// The one controlled gate swapping two words that differ in a single trit.
/// Empty when the words differ in both trits.
std::optional<Gate> single_gate_transposition(Point a, Point b);

/// One-gate circuit for cheap transpositions, mmd_plus otherwise.
Circuit synth_factor(const Cycle& c, const SynthOptions& opts = {});

/// Appends `next` to `acc`, merging the single outermost gate pair at the
/// junction when both gates share target and controls. Returns the cost
/// removed by the merge.
int join_with_border_merge(Circuit& acc, const Circuit& next, const CostModel& m = {});

struct DisjointOrdering {
  std::vector<std::size_t> order;
  int border_saving = 0;
};

/// Searches every cascade order of circuits realizing pairwise disjoint cycles
/// and returns one with the largest junction saving, the lexicographically
/// smallest order on ties. Throws std::invalid_argument if two circuits do
/// not commute.
DisjointOrdering order_disjoint(std::span<const Circuit> circuits, const CostModel& m = {});

/// Cascades `circuits` in `order` with junction merges.
Circuit cascade(std::span<const Circuit> circuits, std::span<const std::size_t> order, const CostModel& m = {});

struct PivotChoice {
  std::size_t rotation = 0;
  int total_cost = 0;
};

/// Sum of synth_factor costs over the transposition factors of `c` at a
/// given rotation.
int transposition_cost(const Cycle& c, std::size_t rotation, const SynthOptions& opts = {});
/// Rotation minimizing transposition_cost; the first one on ties.
PivotChoice best_pivot(const Cycle& c, const SynthOptions& opts = {});

/// Factor circuits of one natural cycle under `s`, before any merging.
std::vector<Cycle> strategy_factors(const Cycle& c, const Strategy& s, const SynthOptions& opts = {});

/// Cycle-based synthesis: split into natural cycles, factor each per strategy,
/// synthesize factors, chain factors of one cycle in product order, and order
/// the per-cycle circuits with order_disjoint.
Circuit synth_cycles(const Perm& f, const Strategy& s, const SynthOptions& opts = {});

}  // namespace ternrev
