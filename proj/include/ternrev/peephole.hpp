#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ternrev/circuit.hpp"

namespace ternrev {

/// A local rewrite of two adjacent gates.
struct RewriteRule {
  std::string name;
  /// Replacement for the pair, or nullopt when the rule does not apply.
  std::function<std::optional<std::vector<Gate>>(const Gate&, const Gate&)> rewrite;
  /// Raw cost change of one application under the default cost model.
  int cost_delta = 0;
};

/// Rules A, B and C for a gate G controlled on one line by two different
/// values: the pair becomes a simple G followed by G^-1 controlled by the
/// third value. A: {0,1} (8 -> 3), B: {0,2} (6 -> 5), C: {1,2} (6 -> 5).
/// The pair may appear in either order.
const std::vector<RewriteRule>& template_rules();

/// Checks every rule on every base, target line and pair order of the
/// two-line library against the simulated permutations. Throws
/// std::logic_error naming the first unsound instance.
void verify_rules(const std::vector<RewriteRule>& rules);

/// Fuses adjacent gates with the same target and the same controls into one
/// gate with the composed base; pairs that compose to I are dropped.
Circuit merge_pass(const Circuit& c);

/// One left-to-right sweep applying the template rules to adjacent pairs.
/// A rewrite is kept only when it lowers the raw cost under `m`.
Circuit template_pass(const Circuit& c, const CostModel& m = {});

/// merge_pass and template_pass alternated until neither changes the circuit.
Circuit optimize(const Circuit& c, const CostModel& m = {});

}  // namespace ternrev
