#pragma once

#include <array>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ternrev/circuit.hpp"
#include "ternrev/perm.hpp"

namespace ternrev {

/// An n-line circuit of the multiplexed class: lines 0..n-3 select one of
/// 3^(n-2) two-line circuits acting on the bottom pair (x,y) = (n-2, n-1).
/// subcircuits[s] is active when the control word has index s.
struct MuxSpec {
  int lines = 3;
  std::vector<Circuit> subcircuits;

  /// Throws std::invalid_argument on a wrong count or a non-two-line member.
  void validate() const;
};

/// The 3^n-point permutation (controls, x, y) -> (controls, C_s(x, y)).
Perm mux_perm(const MuxSpec& m);

/// Simple gates on a control line that bring each control value to 2 in
/// turn and restore it after the third block.
enum class ControlSequence {
  shift,      // X, X, X
  alternate,  // N, XT, P12
};

std::array<BaseGate, 3> control_bases(ControlSequence seq);

/// Builds the cascade realizing mux_perm(m). For three lines this is
///   s0 on c, lift(C0), s1 on c, lift(C1), s2 on c, lift(C2)
/// where lift shifts a two-line circuit to lines (x,y) and adds the control
/// c = 2 to every gate. More lines recurse: each block is itself a composite
/// of one line fewer, lifted under the top control line.
Circuit compose_mux(const MuxSpec& m, ControlSequence seq = ControlSequence::shift);

Circuit compose_3x3(const Circuit& c0, const Circuit& c1, const Circuit& c2,
                    ControlSequence seq = ControlSequence::shift);

struct NeighborViolation {
  std::size_t gate_index;
  /// Lines of the gate (target and controls) in ascending order.
  std::vector<int> lines;
};

/// Gates whose target and control lines do not form one run of adjacent
/// lines. Two-line circuits never violate.
std::vector<NeighborViolation> near_neighbor_check(const Circuit& c);

/// Cost model for lifted gates: simple 1, plus 2 per control on 2 and 4 per
/// control on 0 or 1 once a gate has two or more controls.
CostModel extended_cost_model();

/// Number of n-line circuits in the class: (9!)^(3^(n-2)).
boost::multiprecision::cpp_int class_size(int n);
std::string class_size_string(int n);

}  // namespace ternrev
