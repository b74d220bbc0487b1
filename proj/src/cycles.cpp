#include "ternrev/cycles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ternrev {

namespace {

constexpr std::size_t kTwoLinePoints = 9;

bool mergeable(const Gate& a, const Gate& b) {
  return a.target() == b.target() && a.controls() == b.controls();
}

}  // namespace

CycleDecomposition natural_cycles(const Perm& p) {
  CycleDecomposition d;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start] || p[start] == start) continue;
    std::vector<Point> pts;
    for (Point x = static_cast<Point>(start); !seen[x]; x = p[x]) {
      seen[x] = true;
      pts.push_back(x);
    }
    d.factors.emplace_back(std::move(pts));
  }
  return d;
}

std::vector<Cycle> three_cycle_factors(const Cycle& c) {
  const auto& a = c.points();
  const std::size_t k = a.size();
  if (k <= 3) return {c};
  std::vector<Cycle> out;
  std::size_t j = 1;
  for (; j + 1 < k; j += 2) out.push_back(Cycle{a[0], a[j], a[j + 1]});
  if (j < k) out.push_back(Cycle{a[0], a[j]});
  return out;
}

std::vector<Cycle> transposition_factors(const Cycle& c, std::size_t rotation) {
  Cycle r = c.rotated(rotation);
  std::vector<Cycle> out;
  for (std::size_t j = 1; j < r.length(); ++j) out.push_back(Cycle{r[0], r[j]});
  return out;
}

std::optional<Gate> single_gate_transposition(Point a, Point b) {
  if (a == b || a >= kTwoLinePoints || b >= kTwoLinePoints) {
    throw std::invalid_argument("single_gate_transposition needs two distinct points below 9");
  }
  const int ax = static_cast<int>(a / 3), ay = static_cast<int>(a % 3);
  const int bx = static_cast<int>(b / 3), by = static_cast<int>(b % 3);
  int target, control, va, vb, shared;
  if (ax == bx) {
    target = 1, control = 0, va = ay, vb = by, shared = ax;
  } else if (ay == by) {
    target = 0, control = 1, va = ax, vb = bx, shared = ay;
  } else {
    return std::nullopt;
  }
  // The base swapping va and vb while fixing the third value.
  const int fixed = 3 - va - vb;
  int img[3];
  img[va] = vb;
  img[vb] = va;
  img[fixed] = fixed;
  BaseGate base = *base_from_image(img[0], img[1], img[2]);
  return Gate::controlled(base, target, control, shared);
}

Circuit synth_factor(const Cycle& c, const SynthOptions& opts) {
  if (c.length() == 2) {
    if (auto g = single_gate_transposition(c[0], c[1])) return Circuit(2, {*g});
  }
  return mmd_plus(perm_from_cycle(c, kTwoLinePoints), opts);
}

int join_with_border_merge(Circuit& acc, const Circuit& next, const CostModel& m) {
  if (acc.lines() != next.lines()) throw std::invalid_argument("joining circuits of different widths");
  if (acc.empty() || next.empty() || !mergeable(acc.gates().back(), next.gates().front())) {
    acc.append(next);
    return 0;
  }
  const Gate& last = acc.gates().back();
  const Gate& first = next.gates().front();
  const int before = gate_cost(last, m) + gate_cost(first, m);
  BaseGate merged = base_compose(last.base(), first.base());

  std::vector<Gate> gates(acc.gates().begin(), acc.gates().end() - 1);
  int after = 0;
  if (merged != BaseGate::I) {
    gates.push_back(last.with_base(merged));
    after = gate_cost(gates.back(), m);
  }
  gates.insert(gates.end(), next.gates().begin() + 1, next.gates().end());
  acc = Circuit(acc.lines(), std::move(gates));
  return before - after;
}

Circuit cascade(std::span<const Circuit> circuits, std::span<const std::size_t> order, const CostModel& m) {
  if (circuits.empty()) return Circuit(2);
  Circuit out(circuits.front().lines());
  for (std::size_t i : order) join_with_border_merge(out, circuits[i], m);
  return out;
}

DisjointOrdering order_disjoint(std::span<const Circuit> circuits, const CostModel& m) {
  std::vector<Perm> perms;
  perms.reserve(circuits.size());
  for (const Circuit& c : circuits) perms.push_back(simulate(c));
  for (std::size_t i = 0; i < perms.size(); ++i) {
    for (std::size_t j = i + 1; j < perms.size(); ++j) {
      if (perm_compose(perms[i], perms[j]) != perm_compose(perms[j], perms[i])) {
        throw std::invalid_argument("order_disjoint: circuits do not commute");
      }
    }
  }

  int unmerged = 0;
  for (const Circuit& c : circuits) unmerged += circuit_cost(c, m);

  std::vector<std::size_t> order(circuits.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  DisjointOrdering best{order, 0};
  if (circuits.size() < 2) return best;
  bool first = true;
  do {
    const int saving = unmerged - circuit_cost(cascade(circuits, order, m), m);
    if (first || saving > best.border_saving) {
      best = {order, saving};
      first = false;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

int transposition_cost(const Cycle& c, std::size_t rotation, const SynthOptions& opts) {
  int total = 0;
  for (const Cycle& t : transposition_factors(c, rotation)) total += circuit_cost(synth_factor(t, opts), opts.cost);
  return total;
}

PivotChoice best_pivot(const Cycle& c, const SynthOptions& opts) {
  PivotChoice best{0, transposition_cost(c, 0, opts)};
  for (std::size_t r = 1; r < c.length(); ++r) {
    const int cost = transposition_cost(c, r, opts);
    if (cost < best.total_cost) best = {r, cost};
  }
  return best;
}

std::vector<Cycle> strategy_factors(const Cycle& c, const Strategy& s, const SynthOptions& opts) {
  switch (s.kind) {
    case StrategyKind::natural: return {c};
    case StrategyKind::three_cycles: return three_cycle_factors(c);
    case StrategyKind::transpositions: {
      const std::size_t rotation = s.pivot_search && c.length() > 2 ? best_pivot(c, opts).rotation : 0;
      return transposition_factors(c, rotation);
    }
  }
  return {c};
}

Circuit synth_cycles(const Perm& f, const Strategy& s, const SynthOptions& opts) {
  if (f.size() != kTwoLinePoints) throw std::invalid_argument("cycle synthesis needs a 9-point permutation");
  std::vector<Circuit> groups;
  for (const Cycle& c : natural_cycles(f).factors) {
    Circuit chain(2);
    for (const Cycle& factor : strategy_factors(c, s, opts)) {
      join_with_border_merge(chain, synth_factor(factor, opts), opts.cost);
    }
    groups.push_back(std::move(chain));
  }
  DisjointOrdering ord = order_disjoint(groups, opts.cost);
  return cascade(groups, ord.order, opts.cost);
}

}  // namespace ternrev
