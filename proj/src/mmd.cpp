#include "ternrev/mmd.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "mmd_engine.hpp"

namespace ternrev {

namespace detail {

const std::vector<LibGate>& library2() {
  static const std::vector<LibGate> lib = [] {
    std::vector<LibGate> out;
    for (const Gate& g : elementary_library(2)) {
      Perm p = gate_semantics(g, 2);
      Perm q = perm_inverse(p);
      LibGate lg{g, to_table(p), to_table(q), 0, kPoints};
      for (int x = 0; x < kPoints; ++x) {
        if (lg.image[x] != x) {
          lg.first_moved = static_cast<std::uint8_t>(x);
          break;
        }
      }
      out.push_back(std::move(lg));
    }
    for (auto& lg : out) {
      Gate inv = lg.gate.inverse();
      auto it = std::find_if(out.begin(), out.end(), [&](const LibGate& o) { return o.gate == inv; });
      lg.inverse_index = static_cast<std::uint8_t>(it - out.begin());
    }
    return out;
  }();
  return lib;
}

Table to_table(const Perm& p) {
  if (p.size() != kPoints) throw std::invalid_argument("two-line synthesis needs a 9-point permutation");
  Table t{};
  for (int i = 0; i < kPoints; ++i) t[i] = static_cast<std::uint8_t>(p[i]);
  return t;
}

Perm to_perm(const Table& t) { return Perm(std::vector<Point>(t.begin(), t.end())); }

}  // namespace detail

namespace {

using detail::hamming;
using detail::kPoints;
using detail::LibGate;
using detail::Table;

// splitmix64: fixed output across platforms and standard libraries.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

 private:
  std::uint64_t state_;
};

struct Move {
  bool input_side;
  std::uint8_t gate;
};

struct State {
  Table g;
  std::vector<Move> moves;
};

struct Candidate {
  Move move;
  Table next;
  int dist;
  int cost;
};

Table apply_output(const Table& g, const Table& e) {
  Table r;
  for (int x = 0; x < kPoints; ++x) r[x] = e[g[x]];
  return r;
}

Table apply_input(const Table& g, const Table& e) {
  Table r;
  for (int x = 0; x < kPoints; ++x) r[x] = g[e[x]];
  return r;
}

int first_unsettled(const Table& g) {
  for (int x = 0; x < kPoints; ++x) {
    if (g[x] != x) return x;
  }
  return kPoints;
}

// The set of equally good moves for the current state; empty only when g is
// the identity.
std::vector<Candidate> best_moves(const State& s, const SynthOptions& opts, const std::vector<int>& costs) {
  const auto& lib = detail::library2();
  const int row = first_unsettled(s.g);
  if (row == kPoints) return {};
  const int dist = detail::table_distance(s.g);

  Table inv{};
  for (int x = 0; x < kPoints; ++x) inv[s.g[x]] = static_cast<std::uint8_t>(x);
  const int out_gap = hamming(s.g[row], row);
  const int pre = inv[row];
  const int in_gap = hamming(pre, row);

  std::vector<Candidate> improving;
  std::vector<Candidate> progressing;
  for (std::size_t k = 0; k < lib.size(); ++k) {
    const LibGate& lg = lib[k];
    if (lg.first_moved < row) continue;
    const int cost = costs[k];

    Table out_next = apply_output(s.g, lg.image);
    Candidate out{{false, static_cast<std::uint8_t>(k)}, out_next, detail::table_distance(out_next), cost};
    if (out.dist < dist) improving.push_back(out);
    if (hamming(lg.image[s.g[row]], row) < out_gap) progressing.push_back(out);

    // Input side: the new preimage of row under (e then g) is e^-1(pre);
    // only gates routing it closer to row are considered.
    if (opts.direction == Direction::bidirectional && hamming(lg.inverse[pre], row) < in_gap) {
      Table in_next = apply_input(s.g, lg.image);
      Candidate in{{true, static_cast<std::uint8_t>(k)}, in_next, detail::table_distance(in_next), cost};
      if (in.dist < dist) improving.push_back(in);
      progressing.push_back(in);
    }
  }

  // No admissible gate lowers the distance: fall back to gates that still move
  // row i forward, which always exist on the output side.
  std::vector<Candidate>& pool = improving.empty() ? progressing : improving;
  int best_dist = std::numeric_limits<int>::max();
  int best_cost = std::numeric_limits<int>::max();
  for (const Candidate& c : pool) {
    if (c.dist < best_dist || (c.dist == best_dist && c.cost < best_cost)) {
      best_dist = c.dist;
      best_cost = c.cost;
    }
  }
  std::vector<Candidate> ties;
  for (const Candidate& c : pool) {
    if (c.dist == best_dist && c.cost == best_cost) ties.push_back(c);
  }
  return ties;
}

// Input-side moves become inverted gates at the input end in move order;
// output-side moves become inverted gates at the output end, latest first.
Circuit emit(const std::vector<Move>& moves) {
  const auto& lib = detail::library2();
  Circuit front(2);
  std::vector<Gate> back;
  for (const Move& m : moves) {
    const Gate& inv = lib[lib[m.gate].inverse_index].gate;
    if (m.input_side) {
      front.push_back(inv);
    } else {
      back.push_back(inv);
    }
  }
  for (auto it = back.rbegin(); it != back.rend(); ++it) front.push_back(*it);
  return front;
}

std::vector<int> library_costs(const CostModel& m) {
  std::vector<int> costs;
  for (const LibGate& lg : detail::library2()) costs.push_back(gate_cost(lg.gate, m));
  return costs;
}

Circuit seeded_run(const Table& f, const SynthOptions& opts) {
  const std::vector<int> costs = library_costs(opts.cost);
  SplitMix rng(opts.seed);
  State s{f, {}};
  for (;;) {
    std::vector<Candidate> ties = best_moves(s, opts, costs);
    if (ties.empty()) break;
    if (static_cast<int>(s.moves.size()) >= opts.max_gates) {
      throw SynthesisError("mmd_plus exceeded " + std::to_string(opts.max_gates) + " gates");
    }
    const Candidate& pick = ties.size() == 1 ? ties.front() : ties[rng.below(ties.size())];
    s.g = pick.next;
    s.moves.push_back(pick.move);
  }
  return emit(s.moves);
}

struct Explorer {
  const SynthOptions& opts;
  std::vector<int> costs;
  std::vector<std::vector<Move>> finished;
  std::size_t branches = 0;
  bool truncated = false;

  void run(State s) {
    for (;;) {
      if (truncated) return;
      std::vector<Candidate> ties = best_moves(s, opts, costs);
      if (ties.empty()) {
        finished.push_back(s.moves);
        return;
      }
      if (static_cast<int>(s.moves.size()) >= opts.max_gates) {
        throw SynthesisError("mmd_plus exceeded " + std::to_string(opts.max_gates) + " gates");
      }
      if (ties.size() > 1) {
        branches += ties.size() - 1;
        if (branches > opts.branch_limit) {
          truncated = true;
          // Still finish the first branch so every result set is non-empty.
          ties.resize(1);
        }
      }
      for (std::size_t k = 1; k < ties.size(); ++k) {
        State child{ties[k].next, s.moves};
        child.moves.push_back(ties[k].move);
        run(std::move(child));
      }
      s.g = ties.front().next;
      s.moves.push_back(ties.front().move);
    }
  }
};

}  // namespace

std::vector<Gate> elementary_library(int lines) {
  if (lines != 2) throw std::invalid_argument("the elementary library is defined for two lines");
  std::vector<Gate> lib;
  for (int target = 0; target < 2; ++target) {
    const int other = 1 - target;
    for (int ctrl = -1; ctrl <= 2; ++ctrl) {
      for (BaseGate b : kGateBases) {
        if (ctrl < 0) {
          lib.push_back(Gate::simple(b, target));
        } else {
          lib.push_back(Gate::controlled(b, target, other, ctrl));
        }
      }
    }
  }
  return lib;
}

int distance(const Perm& p) {
  int lines = 0;
  while (pow3(lines) < p.size()) ++lines;
  if (pow3(lines) != p.size()) throw std::invalid_argument("distance needs a 3^n-point permutation");
  int d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (int l = 0; l < lines; ++l) d += digit_of(i, l, lines) != digit_of(p[i], l, lines);
  }
  return d;
}

MmdAllResult mmd_plus_all(const Perm& f, const SynthOptions& opts) {
  Explorer ex{opts, library_costs(opts.cost), {}, 0, false};
  ex.run(State{detail::to_table(f), {}});

  std::vector<std::pair<int, std::string>> keys;
  std::vector<Circuit> circuits;
  std::set<std::string> seen;
  for (const auto& moves : ex.finished) {
    Circuit c = emit(moves);
    std::string text = format_circuit(c);
    if (!seen.insert(text).second) continue;
    keys.emplace_back(circuit_cost(c, opts.cost), std::move(text));
    circuits.push_back(std::move(c));
  }
  std::vector<std::size_t> order(circuits.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

  MmdAllResult result;
  result.truncated = ex.truncated;
  for (std::size_t i : order) result.circuits.push_back(std::move(circuits[i]));
  return result;
}

Circuit mmd_plus(const Perm& f, const SynthOptions& opts) {
  if (opts.max_gates < 1) throw std::invalid_argument("max_gates must be at least 1");
  if (opts.tie_break == TieBreak::exhaustive) return std::move(mmd_plus_all(f, opts).circuits.front());
  return seeded_run(detail::to_table(f), opts);
}

}  // namespace ternrev
