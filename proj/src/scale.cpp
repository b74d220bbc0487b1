#include "ternrev/scale.hpp"

#include <algorithm>
#include <stdexcept>

namespace ternrev {

namespace {

// Shifts a circuit down by `offset` lines into a `lines`-line circuit and
// adds `extra` to every gate's controls.
Circuit lift(const Circuit& c, int lines, int offset, const std::vector<Control>& extra) {
  Circuit out(lines);
  for (const Gate& g : c.gates()) {
    std::vector<Control> ctrls = extra;
    for (const Control& k : g.controls()) ctrls.push_back({k.line + offset, k.value});
    out.push_back(Gate(g.base(), g.target() + offset, std::move(ctrls)));
  }
  return out;
}

Circuit compose_range(int lines, std::span<const Circuit> subs, const std::array<BaseGate, 3>& seq) {
  if (lines == 2) return subs.front();
  const std::size_t block = subs.size() / 3;
  Circuit out(lines);
  for (std::size_t b = 0; b < 3; ++b) {
    out.push_back(Gate::simple(seq[b], 0));
    Circuit inner = compose_range(lines - 1, subs.subspan(b * block, block), seq);
    out.append(lift(inner, lines, 1, {Control{0, Trit(2)}}));
  }
  return out;
}

}  // namespace

void MuxSpec::validate() const {
  if (lines < 2) throw std::invalid_argument("a multiplexed circuit needs at least two lines");
  if (subcircuits.size() != pow3(lines - 2)) {
    throw std::invalid_argument("expected " + std::to_string(pow3(lines - 2)) + " subcircuits, got " +
                                std::to_string(subcircuits.size()));
  }
  for (const Circuit& c : subcircuits) {
    if (c.lines() != 2) throw std::invalid_argument("subcircuits must be two-line circuits");
  }
}

Perm mux_perm(const MuxSpec& m) {
  m.validate();
  std::vector<Perm> parts;
  parts.reserve(m.subcircuits.size());
  for (const Circuit& c : m.subcircuits) parts.push_back(simulate(c));
  const std::size_t size = pow3(m.lines);
  std::vector<Point> image(size);
  for (std::size_t w = 0; w < size; ++w) {
    const std::size_t s = w / 9;
    image[w] = static_cast<Point>(s * 9 + parts[s][w % 9]);
  }
  return Perm(std::move(image));
}

std::array<BaseGate, 3> control_bases(ControlSequence seq) {
  if (seq == ControlSequence::alternate) return {BaseGate::N, BaseGate::XT, BaseGate::P12};
  return {BaseGate::X, BaseGate::X, BaseGate::X};
}

Circuit compose_mux(const MuxSpec& m, ControlSequence seq) {
  m.validate();
  return compose_range(m.lines, m.subcircuits, control_bases(seq));
}

Circuit compose_3x3(const Circuit& c0, const Circuit& c1, const Circuit& c2, ControlSequence seq) {
  return compose_mux(MuxSpec{3, {c0, c1, c2}}, seq);
}

std::vector<NeighborViolation> near_neighbor_check(const Circuit& c) {
  std::vector<NeighborViolation> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gates()[i];
    std::vector<int> used{g.target()};
    for (const Control& k : g.controls()) used.push_back(k.line);
    std::sort(used.begin(), used.end());
    if (used.back() - used.front() + 1 != static_cast<int>(used.size())) out.push_back({i, std::move(used)});
  }
  return out;
}

CostModel extended_cost_model() {
  CostModel m;
  m.allow_multi_control = true;
  return m;
}

boost::multiprecision::cpp_int class_size(int n) {
  if (n < 2) throw std::invalid_argument("class_size needs n >= 2");
  boost::multiprecision::cpp_int result = 1;
  const boost::multiprecision::cpp_int two_line = 362880;
  for (std::size_t k = 0; k < pow3(n - 2); ++k) result *= two_line;
  return result;
}

std::string class_size_string(int n) { return class_size(n).str(); }

}  // namespace ternrev
