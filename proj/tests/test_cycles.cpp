#include <doctest.h>

#include <algorithm>
#include <random>

#include "ternrev/cycles.hpp"

using namespace ternrev;

namespace {

const Perm kF1({4, 3, 7, 5, 8, 1, 2, 6, 0});
const Perm kF2({0, 7, 1, 4, 3, 8, 6, 2, 5});

Perm random_perm(std::mt19937& rng) {
  std::vector<Point> img{0, 1, 2, 3, 4, 5, 6, 7, 8};
  std::shuffle(img.begin(), img.end(), rng);
  return Perm(img);
}

std::vector<int> gate_costs(const Circuit& c) {
  std::vector<int> out;
  for (const Gate& g : c.gates()) out.push_back(gate_cost(g));
  return out;
}

}  // namespace

TEST_CASE("natural cycles") {
  const auto d1 = natural_cycles(kF1);
  CHECK(d1.disjoint);
  CHECK(d1.factors == std::vector<Cycle>{Cycle{0, 4, 8}, Cycle{1, 3, 5}, Cycle{2, 7, 6}});
  CHECK(natural_cycles(Perm::identity(9)).factors.empty());
  CHECK(natural_cycles(kF2).factors == std::vector<Cycle>{Cycle{1, 7, 2}, Cycle{3, 4}, Cycle{5, 8}});

  std::mt19937 rng(2);
  for (int k = 0; k < 200; ++k) {
    Perm p = random_perm(rng);
    CHECK(perm_from_cycles(natural_cycles(p).factors, 9) == p);
  }
}

TEST_CASE("three-cycle factors") {
  CHECK(three_cycle_factors(Cycle{0, 4, 8}) == std::vector<Cycle>{Cycle{0, 4, 8}});
  CHECK(three_cycle_factors(Cycle{3, 4}) == std::vector<Cycle>{Cycle{3, 4}});
  CHECK(three_cycle_factors(Cycle{1, 2, 3, 4, 5}) == std::vector<Cycle>{Cycle{1, 2, 3}, Cycle{1, 4, 5}});
  for (std::size_t len = 2; len <= 9; ++len) {
    std::vector<Point> pts(len);
    for (std::size_t i = 0; i < len; ++i) pts[i] = static_cast<Point>((i * 4) % 9);
    const Cycle c(pts);
    const auto fs = three_cycle_factors(c);
    CHECK(perm_from_cycles(fs, 9) == perm_from_cycle(c, 9));
    for (const Cycle& f : fs) CHECK(f.length() <= 3);
  }
}

TEST_CASE("transposition factors") {
  CHECK(transposition_factors(Cycle{0, 4, 8}, 0) == std::vector<Cycle>{Cycle{0, 4}, Cycle{0, 8}});
  const Cycle c{1, 3, 5, 7};
  CHECK(transposition_factors(c, 3) == std::vector<Cycle>{Cycle{7, 1}, Cycle{7, 3}, Cycle{7, 5}});
  CHECK(transposition_factors(Cycle{3, 4}, 0) == std::vector<Cycle>{Cycle{3, 4}});
  for (std::size_t r = 0; r < c.length(); ++r) {
    CHECK(perm_from_cycles(transposition_factors(c, r), 9) == perm_from_cycle(c, 9));
  }
}

TEST_CASE("single gate transpositions for all 36 pairs") {
  CHECK(single_gate_transposition(5, 8) == Gate::controlled(BaseGate::P12, 0, 1, 2));
  CHECK(single_gate_transposition(3, 4) == Gate::controlled(BaseGate::P01, 1, 0, 1));
  CHECK_FALSE(single_gate_transposition(0, 4).has_value());
  int present = 0;
  for (Point a = 0; a < 9; ++a) {
    for (Point b = a + 1; b < 9; ++b) {
      const bool one_digit = (a / 3 == b / 3) != (a % 3 == b % 3);
      const auto g = single_gate_transposition(a, b);
      CHECK(g.has_value() == one_digit);
      if (!g) continue;
      ++present;
      CHECK(simulate(Circuit(2, {*g})) == perm_from_cycle(Cycle{a, b}, 9));
      CHECK(single_gate_transposition(b, a) == g);
    }
  }
  CHECK(present == 18);
  CHECK_THROWS(single_gate_transposition(3, 3));
  CHECK_THROWS(single_gate_transposition(3, 9));
}

TEST_CASE("factor synthesis") {
  const Circuit t58 = synth_factor(Cycle{5, 8});
  CHECK(t58.size() == 1);
  CHECK(circuit_cost(t58) == 2);
  for (const Cycle& c : {Cycle{2, 7, 6}, Cycle{1, 3, 5}, Cycle{0, 4, 8}, Cycle{2, 7}}) {
    CHECK(simulate(synth_factor(c)) == perm_from_cycle(c, 9));
  }
}

TEST_CASE("border merging") {
  Circuit a(2, {Gate::simple(BaseGate::X, 0), Gate::controlled(BaseGate::N, 1, 0, 2)});
  Circuit b(2, {Gate::controlled(BaseGate::N, 1, 0, 2), Gate::simple(BaseGate::X, 1)});
  Circuit acc = a;
  CHECK(join_with_border_merge(acc, b) == 4);
  CHECK(acc == Circuit(2, {Gate::simple(BaseGate::X, 0), Gate::simple(BaseGate::X, 1)}));

  Circuit c(2, {Gate::controlled(BaseGate::P12, 1, 0, 2)});
  acc = a;
  CHECK(join_with_border_merge(acc, c) == 2);
  CHECK(acc.gates().back() == Gate::controlled(BaseGate::XT, 1, 0, 2));

  Circuit d(2, {Gate::controlled(BaseGate::N, 1, 0, 1)});
  acc = a;
  CHECK(join_with_border_merge(acc, d) == 0);
  CHECK(acc.size() == 3);
}

TEST_CASE("disjoint ordering") {
  Circuit one = synth_factor(Cycle{0, 4, 8});
  const auto single = order_disjoint(std::vector<Circuit>{one});
  CHECK(single.order == std::vector<std::size_t>{0});
  CHECK(single.border_saving == 0);

  const std::vector<Circuit> unmatched{Circuit(2, {Gate::controlled(BaseGate::P12, 0, 1, 2)}),
                                       Circuit(2, {Gate::controlled(BaseGate::P01, 1, 0, 1)})};
  CHECK(order_disjoint(unmatched).border_saving == 0);

  const std::vector<Circuit> clash{Circuit(2, {Gate::simple(BaseGate::X, 0)}),
                                   Circuit(2, {Gate::simple(BaseGate::P01, 0)})};
  CHECK_THROWS_AS(order_disjoint(clash), std::invalid_argument);
}

TEST_CASE("strategies are correct on random functions") {
  std::mt19937 rng(4);
  for (int k = 0; k < 200; ++k) {
    const Perm f = random_perm(rng);
    for (StrategyKind s : {StrategyKind::natural, StrategyKind::three_cycles, StrategyKind::transpositions}) {
      CHECK(simulate(synth_cycles(f, {s})) == f);
    }
    CHECK(simulate(synth_cycles(f, {StrategyKind::transpositions, true})) == f);
  }
  for (StrategyKind s : {StrategyKind::natural, StrategyKind::three_cycles, StrategyKind::transpositions}) {
    CHECK(synth_cycles(Perm::identity(9), {s}).empty());
  }
}

TEST_CASE("transposition strategy on the second worked example") {
  const Circuit c = synth_cycles(kF2, {StrategyKind::transpositions});
  CHECK(simulate(c) == kF2);
  CHECK(circuit_cost(c) == 14);
  auto costs = gate_costs(c);
  std::sort(costs.begin(), costs.end());
  CHECK(costs == std::vector<int>{2, 4, 4, 4});
}

TEST_CASE("pivot search") {
  const Cycle c{1, 3, 5, 7};
  const auto best = best_pivot(c);
  for (std::size_t r = 0; r < c.length(); ++r) CHECK(best.total_cost <= transposition_cost(c, r));
  CHECK(best.total_cost == transposition_cost(c, best.rotation));
  CHECK(transposition_cost(c, 0) > transposition_cost(c, 3));

  const Cycle t{0, 4, 8};
  int lo = 1 << 20;
  for (std::size_t r = 0; r < 3; ++r) lo = std::min(lo, transposition_cost(t, r));
  CHECK(best_pivot(t).total_cost == lo);

  // 3-cycle whose points pairwise differ in one digit: every factor is one gate.
  const Cycle row{0, 1, 2};
  for (std::size_t r = 0; r < 3; ++r) {
    int sum = 0;
    for (const Cycle& f : transposition_factors(row, r)) sum += gate_cost(*single_gate_transposition(f[0], f[1]));
    CHECK(transposition_cost(row, r) == sum);
  }
}
