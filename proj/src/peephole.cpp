#include "ternrev/peephole.hpp"

#include <stdexcept>

#include "ternrev/mmd.hpp"

namespace ternrev {

namespace {

// Matches G<u on line> next to G<v on line> with all other controls equal,
// where {u,v} = {lo,hi}. Returns [G with the remaining controls,
// G^-1 with the remaining controls plus the third value on that line].
std::optional<std::vector<Gate>> split_pair(const Gate& a, const Gate& b, int lo, int hi) {
  if (a.base() != b.base() || a.target() != b.target()) return std::nullopt;
  const auto& ca = a.controls();
  const auto& cb = b.controls();
  if (ca.empty() || ca.size() != cb.size()) return std::nullopt;

  int split_line = -1;
  std::vector<Control> rest;
  for (std::size_t k = 0; k < ca.size(); ++k) {
    if (ca[k].line != cb[k].line) return std::nullopt;
    if (ca[k].value == cb[k].value) {
      rest.push_back(ca[k]);
      continue;
    }
    if (split_line >= 0) return std::nullopt;
    const int u = ca[k].value.value(), v = cb[k].value.value();
    if (!((u == lo && v == hi) || (u == hi && v == lo))) return std::nullopt;
    split_line = ca[k].line;
  }
  if (split_line < 0) return std::nullopt;

  std::vector<Control> inv_controls = rest;
  inv_controls.push_back({split_line, Trit(3 - lo - hi)});
  return std::vector<Gate>{Gate(a.base(), a.target(), std::move(rest)),
                           Gate(base_inverse(a.base()), a.target(), std::move(inv_controls))};
}

RewriteRule make_rule(std::string name, int lo, int hi, int delta) {
  return RewriteRule{std::move(name),
                     [lo, hi](const Gate& a, const Gate& b) { return split_pair(a, b, lo, hi); }, delta};
}

bool same_slot(const Gate& a, const Gate& b) { return a.target() == b.target() && a.controls() == b.controls(); }

}  // namespace

const std::vector<RewriteRule>& template_rules() {
  static const std::vector<RewriteRule> rules = [] {
    std::vector<RewriteRule> r = {
        make_rule("A", 0, 1, -5),
        make_rule("B", 0, 2, -1),
        make_rule("C", 1, 2, -1),
    };
    verify_rules(r);
    return r;
  }();
  return rules;
}

void verify_rules(const std::vector<RewriteRule>& rules) {
  const CostModel m;
  for (const RewriteRule& rule : rules) {
    bool fired = false;
    for (const Gate& a : elementary_library(2)) {
      for (const Gate& b : elementary_library(2)) {
        auto rep = rule.rewrite(a, b);
        if (!rep) continue;
        fired = true;
        Circuit lhs(2, {a, b});
        Circuit rhs(2, *rep);
        if (simulate(lhs) != simulate(rhs)) {
          throw std::logic_error("rewrite rule " + rule.name + " is unsound on " + format_gate(a, 2) + "; " +
                                 format_gate(b, 2));
        }
        if (circuit_cost(rhs, m) - circuit_cost(lhs, m) != rule.cost_delta) {
          throw std::logic_error("rewrite rule " + rule.name + " has an unexpected cost change");
        }
      }
    }
    if (!fired) throw std::logic_error("rewrite rule " + rule.name + " never matches");
  }
}

Circuit merge_pass(const Circuit& c) {
  std::vector<Gate> out;
  out.reserve(c.size());
  for (const Gate& g : c.gates()) {
    if (!out.empty() && same_slot(out.back(), g)) {
      BaseGate merged = base_compose(out.back().base(), g.base());
      if (merged == BaseGate::I) {
        out.pop_back();
      } else {
        out.back() = out.back().with_base(merged);
      }
      continue;
    }
    out.push_back(g);
  }
  return Circuit(c.lines(), std::move(out));
}

Circuit template_pass(const Circuit& c, const CostModel& m) {
  const auto& rules = template_rules();
  const auto& gs = c.gates();
  std::vector<Gate> out;
  out.reserve(gs.size());
  std::size_t k = 0;
  while (k < gs.size()) {
    if (k + 1 < gs.size()) {
      bool applied = false;
      for (const RewriteRule& rule : rules) {
        auto rep = rule.rewrite(gs[k], gs[k + 1]);
        if (!rep) continue;
        int before = gate_cost(gs[k], m) + gate_cost(gs[k + 1], m);
        int after = 0;
        for (const Gate& g : *rep) after += gate_cost(g, m);
        if (after >= before) continue;
        out.insert(out.end(), rep->begin(), rep->end());
        k += 2;
        applied = true;
        break;
      }
      if (applied) continue;
    }
    out.push_back(gs[k]);
    ++k;
  }
  return Circuit(c.lines(), std::move(out));
}

Circuit optimize(const Circuit& c, const CostModel& m) {
  Circuit cur = c;
  for (;;) {
    Circuit next = template_pass(merge_pass(cur), m);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

}  // namespace ternrev
