#include <doctest.h>

#include <algorithm>
#include <random>

#include "ternrev/mmd.hpp"

using namespace ternrev;

namespace {

const Perm kF1({4, 3, 7, 5, 8, 1, 2, 6, 0});
const Perm kF2({0, 7, 1, 4, 3, 8, 6, 2, 5});

int oracle_distance(const Perm& p) {
  int d = 0;
  for (Point i = 0; i < 9; ++i) d += (i / 3 != p[i] / 3) + (i % 3 != p[i] % 3);
  return d;
}

Perm random_perm(std::mt19937& rng) {
  std::vector<Point> img{0, 1, 2, 3, 4, 5, 6, 7, 8};
  std::shuffle(img.begin(), img.end(), rng);
  return Perm(img);
}

}  // namespace

TEST_CASE("elementary library") {
  const auto lib = elementary_library(2);
  CHECK(lib.size() == 40);
  CHECK(std::find(lib.begin(), lib.end(), Gate::controlled(BaseGate::N, 0, 1, 1)) != lib.end());
  for (const Gate& g : lib) {
    CHECK(g.base() != BaseGate::I);
    CHECK(g.controls().size() <= 1);
  }
  for (std::size_t i = 0; i < lib.size(); ++i) {
    for (std::size_t j = i + 1; j < lib.size(); ++j) CHECK(gate_semantics(lib[i], 2) != gate_semantics(lib[j], 2));
  }
}

TEST_CASE("distance") {
  CHECK(distance(Perm::identity(9)) == 0);
  CHECK(distance(Perm({0, 1, 2, 3, 4, 8, 6, 7, 5})) == 2);
  CHECK(distance(kF1) == oracle_distance(kF1));
  std::mt19937 rng(1);
  for (int k = 0; k < 100; ++k) {
    Perm p = random_perm(rng);
    CHECK(distance(p) == oracle_distance(p));
    CHECK((distance(p) == 0) == p.is_identity());
  }
}

TEST_CASE("identity synthesizes to the empty circuit") {
  CHECK(mmd_plus(Perm::identity(9)).empty());
  CHECK(mmd_plus_all(Perm::identity(9)).circuits.front().empty());
}

TEST_CASE("(5,8) is one gate of cost 2") {
  const Perm t({0, 1, 2, 3, 4, 8, 6, 7, 5});
  const Circuit c = mmd_plus(t);
  CHECK(c == Circuit(2, {Gate::controlled(BaseGate::P12, 0, 1, 2)}));
  CHECK(circuit_cost(c) == 2);
  const auto all = mmd_plus_all(t);
  REQUIRE_FALSE(all.circuits.empty());
  CHECK(circuit_cost(all.circuits.front()) == 2);
}

TEST_CASE("worked examples") {
  const Circuit c1 = mmd_plus(kF1);
  CHECK(simulate(c1) == kF1);
  CHECK(circuit_cost(c1) == 18);
  CHECK(c1.size() <= 10);

  const Circuit c2 = mmd_plus(kF2);
  CHECK(simulate(c2) == kF2);
  CHECK(circuit_cost(c2) == 14);
  CHECK(c2.size() <= 6);
}

TEST_CASE("every enumerated circuit is correct and sorted") {
  for (const Perm& f : {kF1, kF2}) {
    const auto all = mmd_plus_all(f);
    REQUIRE_FALSE(all.circuits.empty());
    int prev = 0;
    for (const Circuit& c : all.circuits) {
      CHECK(simulate(c) == f);
      CHECK(circuit_cost(c) >= prev);
      prev = circuit_cost(c);
    }
    SynthOptions ex;
    ex.tie_break = TieBreak::exhaustive;
    CHECK(mmd_plus(f, ex) == all.circuits.front());
    CHECK(circuit_cost(all.circuits.front()) <= circuit_cost(mmd_plus(f)));
  }
}

TEST_CASE("seeded synthesis is deterministic and always correct") {
  std::mt19937 rng(99);
  for (int k = 0; k < 300; ++k) {
    const Perm f = random_perm(rng);
    SynthOptions so;
    so.seed = rng();
    const Circuit c = mmd_plus(f, so);
    CHECK(simulate(c) == f);
    CHECK(mmd_plus(f, so) == c);
    SynthOptions fwd = so;
    fwd.direction = Direction::forward;
    CHECK(simulate(mmd_plus(f, fwd)) == f);
  }
}

TEST_CASE("gate budget is enforced") {
  SynthOptions so;
  so.max_gates = 1;
  CHECK_THROWS_AS(mmd_plus(kF1, so), SynthesisError);
}
