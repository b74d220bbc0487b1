#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ternrev/perm.hpp"
#include "ternrev/trit.hpp"

namespace ternrev {

struct Control {
  int line = 0;
  Trit value;
  friend bool operator==(const Control&, const Control&) = default;
};

/// A base gate acting on `target`, active only on words where every control
/// line carries its control value. Controls are kept sorted by line.
class Gate {
 public:
  /// Throws std::invalid_argument for base I, duplicate control lines or a
  /// control on the target line.
  Gate(BaseGate base, int target, std::vector<Control> controls = {});

  static Gate simple(BaseGate base, int target) { return Gate(base, target); }
  static Gate controlled(BaseGate base, int target, int control_line, int value) {
    return Gate(base, target, {Control{control_line, Trit(value)}});
  }

  BaseGate base() const { return base_; }
  int target() const { return target_; }
  const std::vector<Control>& controls() const { return controls_; }
  bool is_simple() const { return controls_.empty(); }
  /// Largest line index touched by the gate.
  int max_line() const;

  /// True when every control is satisfied by the word `index` on `lines` lines.
  bool active_on(std::size_t index, int lines) const;

  Gate with_base(BaseGate base) const { return Gate(base, target_, controls_); }
  Gate inverse() const { return with_base(base_inverse(base_)); }

  friend bool operator==(const Gate&, const Gate&) = default;

 private:
  BaseGate base_;
  int target_;
  std::vector<Control> controls_;
};

/// Gates in application order: gates()[0] acts first.
class Circuit {
 public:
  explicit Circuit(int lines = 2);
  Circuit(int lines, std::vector<Gate> gates);

  int lines() const { return lines_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  void push_back(Gate g);
  void append(const Circuit& other);

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int lines_;
  std::vector<Gate> gates_;
};

/// Costs of the three single-control gate classes. Shift gates implied by
/// controls on 0 or 1 are folded into `ctrl01`; they are never materialized.
struct CostModel {
  int simple = 1;
  int ctrl2 = 2;
  int ctrl01 = 4;
  /// Price gates with two or more controls as simple + sum of per-control
  /// costs instead of rejecting them. The values are model-dependent.
  bool allow_multi_control = false;
};

enum class CostMode { raw, adjusted };

class CostError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

Perm gate_semantics(const Gate& g, int lines);
Perm simulate(const Circuit& c);

int gate_cost(const Gate& g, const CostModel& m = {});
int circuit_cost(const Circuit& c, const CostModel& m = {}, CostMode mode = CostMode::raw);
/// Number of adjacent gate pairs that share a shift gate on a control line
/// (controls on the same line with values 0 and 1, in either order).
int shared_shift_pairs(const Circuit& c);

Circuit circuit_inverse(const Circuit& c);

/// Line name used by the text format: x,y for two lines, l0..l(n-1) otherwise.
std::string line_name(int line, int lines);

/// One gate per line, e.g. "P12 x @ y=2". Circuits on more than two lines
/// start with a "# lines: n" header so the line count survives a round trip.
std::string format_circuit(const Circuit& c);
std::string format_gate(const Gate& g, int lines);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line_number, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + what), line_number_(line_number) {}
  std::size_t line_number() const { return line_number_; }

 private:
  std::size_t line_number_;
};

/// Parses the text format. `lines` overrides the line count; otherwise it
/// comes from the header, else 2 when x/y names are used, else the highest
/// named line + 1.
Circuit parse_circuit(std::string_view text, std::optional<int> lines = std::nullopt);

/// Columnar diagram, one row per circuit line. Control dots are drawn by
/// value: '●' for 2, '◐' for 1, '○' for 0.
std::string draw_circuit(const Circuit& c);

}  // namespace ternrev
