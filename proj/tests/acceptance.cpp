// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ternrev/bench.hpp"
#include "ternrev/cycles.hpp"
#include "ternrev/mmd.hpp"
#include "ternrev/peephole.hpp"
#include "ternrev/scale.hpp"

using namespace ternrev;
namespace fs = std::filesystem;

namespace {

const Perm kF1({4, 3, 7, 5, 8, 1, 2, 6, 0});
const Perm kF2({0, 7, 1, 4, 3, 8, 6, 2, 5});

struct Report {
  std::vector<std::string> notes;
  bool ok = true;

  void check(bool cond, const std::string& what) {
    if (!cond) ok = false;
    notes.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
  }
  void info(const std::string& what) { notes.push_back("     " + what); }
};

std::string str(double v, int prec = 2) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(prec);
  ss << v;
  return ss.str();
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol + 1e-9; }

// ---------------------------------------------------------------------------
// Criterion 2

void criterion2(Report& r) {
  const auto d = natural_cycles(kF1);
  r.check(d.factors == std::vector<Cycle>{Cycle{0, 4, 8}, Cycle{1, 3, 5}, Cycle{2, 7, 6}},
          "natural_cycles(F1) = " + format_cycles(d.factors));

  // Circuits of cost 14, 20 and 10 for the three cycles: the synthesized
  // (0 4 8), the transposition chain (1 3)(1 5), and the five-gate circuit
  // P12<2_x> N<2_y> X<2_x> N<2_y> N<2_x> for (2 7 6).
  const Circuit c048 = synth_factor(Cycle{0, 4, 8});
  Circuit c135 = synth_factor(Cycle{1, 3});
  c135.append(synth_factor(Cycle{1, 5}));
  const Circuit c276 = parse_circuit("P12 y @ x=2\nN x @ y=2\nX y @ x=2\nN x @ y=2\nN y @ x=2\n");
  const std::vector<Circuit> given{c048, c135, c276};
  const std::vector<Cycle> cycles{Cycle{0, 4, 8}, Cycle{1, 3, 5}, Cycle{2, 7, 6}};
  bool realize = true;
  for (std::size_t i = 0; i < 3; ++i) realize = realize && simulate(given[i]) == perm_from_cycle(cycles[i], 9);
  r.check(realize && circuit_cost(c048) == 14 && circuit_cost(c135) == 20 && circuit_cost(c276) == 10,
          "per-cycle circuits with costs " + std::to_string(circuit_cost(c048)) + "/" +
              std::to_string(circuit_cost(c276)) + "/" + std::to_string(circuit_cost(c135)) +
              " for (0 4 8)/(2 7 6)/(1 3 5) realize their cycles");

  const DisjointOrdering ord = order_disjoint(given);
  const Circuit total = cascade(given, ord.order);
  std::string order_text;
  for (std::size_t k : ord.order) order_text += format_cycle(cycles[k]);
  const auto pos = [&](std::size_t k) { return std::find(ord.order.begin(), ord.order.end(), k) - ord.order.begin(); };
  r.check(ord.border_saving == 4, "border saving " + std::to_string(ord.border_saving) + " (order " + order_text + ")");
  r.check(pos(2) + 1 == pos(0), "(2 7 6) immediately precedes (0 4 8)");
  r.check(circuit_cost(total) == 40 && simulate(total) == kF1,
          "natural-strategy total cost " + std::to_string(circuit_cost(total)) + " realizes F1");

  const int expected[3] = {14, 20, 10};
  for (std::size_t i = 0; i < 3; ++i) {
    const int c = circuit_cost(mmd_plus(perm_from_cycle(cycles[i], 9)));
    r.check(within(c, expected[i], 4),
            "mmd cost of " + format_cycle(cycles[i]) + " = " + std::to_string(c) + " (target " +
                std::to_string(expected[i]) + " +/- 4)");
  }
  const Circuit m = mmd_plus(kF1);
  r.check(simulate(m) == kF1 && circuit_cost(m) >= 14 && circuit_cost(m) <= 22 && m.size() <= 10,
          "mmd_plus(F1): cost " + std::to_string(circuit_cost(m)) + " in [14,22], " + std::to_string(m.size()) +
              " gates <= 10");
  const Circuit nat = synth_cycles(kF1, {StrategyKind::natural});
  r.info("library natural strategy on F1 (synthesized cycles): cost " + std::to_string(circuit_cost(nat)));
}

// ---------------------------------------------------------------------------
// Criterion 3

void criterion3(Report& r) {
  const Circuit t = synth_cycles(kF2, {StrategyKind::transpositions});
  std::vector<int> costs;
  for (const Gate& g : t.gates()) costs.push_back(gate_cost(g));
  std::sort(costs.begin(), costs.end());
  r.check(simulate(t) == kF2 && circuit_cost(t) == 14 && costs == std::vector<int>{2, 4, 4, 4},
          "transposition strategy on F2: cost " + std::to_string(circuit_cost(t)) + ", gate costs {2,4,4,4}");

  const Circuit m = mmd_plus(kF2);
  r.check(simulate(m) == kF2 && circuit_cost(m) <= 16 && m.size() <= 6,
          "mmd_plus(F2): cost " + std::to_string(circuit_cost(m)) + " <= 16, " + std::to_string(m.size()) +
              " gates <= 6");

  const std::vector<Cycle> alt{Cycle{2, 1}, Cycle{2, 7}, Cycle{3, 4}, Cycle{5, 8}};
  Circuit acc(2);
  int f27 = 0;
  for (const Cycle& c : alt) {
    const Circuit f = synth_factor(c);
    if (c == Cycle{2, 7}) f27 = circuit_cost(f);
    join_with_border_merge(acc, f);
  }
  r.check(perm_from_cycles(alt, 9) == kF2 && simulate(acc) == kF2 && circuit_cost(acc) == 16,
          "(2 1)(2 7)(3 4)(5 8) evaluates to cost " + std::to_string(circuit_cost(acc)));
  r.check(within(f27, 6, 2), "(2 7) factor cost " + std::to_string(f27) + " (target 6 +/- 2)");
}

// ---------------------------------------------------------------------------
// Criterion 4

void criterion4(Report& r) {
  const Cycle c{1, 3, 5, 7};
  const int from1 = transposition_cost(c, 0);
  const int from7 = transposition_cost(c, 3);
  r.check(from1 > from7, "rotation from 1 costs " + std::to_string(from1) + " > rotation from 7 costs " +
                             std::to_string(from7));
  r.check(within(from1, 28, 4), "rotation from 1: " + std::to_string(from1) + " (target 28 +/- 4)");
  r.check(within(from7, 18, 4), "rotation from 7: " + std::to_string(from7) + " (target 18 +/- 4)");
  const PivotChoice best = best_pivot(c);
  bool minimal = true;
  for (std::size_t k = 0; k < c.length(); ++k) minimal = minimal && best.total_cost <= transposition_cost(c, k);
  r.check(minimal, "best_pivot rotation " + std::to_string(best.rotation) + " cost " + std::to_string(best.total_cost) +
                       " is minimal");
}

// ---------------------------------------------------------------------------
// Criterion 5

void criterion5(Report& r) {
  struct Want {
    const char* name;
    int u, v, before, after;
  };
  const Want wants[] = {{"A", 0, 1, 8, 3}, {"B", 0, 2, 6, 5}, {"C", 1, 2, 6, 5}};
  const auto& rules = template_rules();
  int instances = 0;
  bool all_ok = true;
  for (const Want& w : wants) {
    const RewriteRule* rule = nullptr;
    for (const RewriteRule& k : rules) {
      if (k.name == w.name) rule = &k;
    }
    if (!rule) {
      all_ok = false;
      continue;
    }
    for (BaseGate b : kGateBases) {
      for (int target = 0; target < 2; ++target) {
        for (int order = 0; order < 2; ++order) {
          const int first = order ? w.v : w.u, second = order ? w.u : w.v;
          const Gate g1 = Gate::controlled(b, target, 1 - target, first);
          const Gate g2 = Gate::controlled(b, target, 1 - target, second);
          const auto rep = rule->rewrite(g1, g2);
          ++instances;
          if (!rep) {
            all_ok = false;
            continue;
          }
          const Circuit lhs(2, {g1, g2}), rhs(2, *rep);
          all_ok = all_ok && simulate(lhs) == simulate(rhs) && circuit_cost(lhs) == w.before &&
                   circuit_cost(rhs) == w.after;
        }
      }
    }
  }
  r.check(all_ok && instances == 60,
          std::to_string(instances) + " instances (3 rules x 5 bases x 2 orders x 2 line assignments) sound, "
                                      "costs 8->3, 6->5, 6->5");
}

// ---------------------------------------------------------------------------
// Criterion 6

// A single-control or simple gate acting on the digits of a word, built
// without the library.
struct OracleGate {
  std::array<std::uint8_t, 9> image;
  int cost;
};

std::vector<OracleGate> oracle_library() {
  static const int shapes[5][3] = {{2, 1, 0}, {1, 0, 2}, {0, 2, 1}, {2, 0, 1}, {1, 2, 0}};
  std::vector<OracleGate> out;
  for (int target = 0; target < 2; ++target) {
    for (int ctrl = -1; ctrl < 3; ++ctrl) {
      for (const auto& s : shapes) {
        OracleGate g{};
        for (int w = 0; w < 9; ++w) {
          int d[2] = {w / 3, w % 3};
          if (ctrl < 0 || d[1 - target] == ctrl) d[target] = s[d[target]];
          g.image[w] = static_cast<std::uint8_t>(3 * d[0] + d[1]);
        }
        g.cost = ctrl < 0 ? 1 : ctrl == 2 ? 2 : 4;
        out.push_back(g);
      }
    }
  }
  return out;
}

std::uint64_t pack(const std::array<std::uint8_t, 9>& t) {
  std::uint64_t k = 0;
  for (int i = 0; i < 9; ++i) k = k * 9 + t[i];
  return k;
}

// Minimal raw cost of every function reachable from the identity, by a
// uniform-cost search with a bucket queue (gate costs are 1, 2 or 4).
std::map<std::uint64_t, int> oracle_costs() {
  const auto lib = oracle_library();
  std::map<std::uint64_t, int> best;
  std::vector<std::vector<std::array<std::uint8_t, 9>>> buckets(1);
  buckets[0].push_back({0, 1, 2, 3, 4, 5, 6, 7, 8});
  best[pack(buckets[0][0])] = 0;
  for (std::size_t cost = 0; cost < buckets.size(); ++cost) {
    for (std::size_t i = 0; i < buckets[cost].size(); ++i) {
      const auto cur = buckets[cost][i];
      if (best[pack(cur)] != static_cast<int>(cost)) continue;
      for (const OracleGate& g : lib) {
        std::array<std::uint8_t, 9> next{};
        for (int w = 0; w < 9; ++w) next[w] = g.image[cur[w]];
        const int nc = static_cast<int>(cost) + g.cost;
        auto [it, fresh] = best.try_emplace(pack(next), nc);
        if (!fresh && it->second <= nc) continue;
        it->second = nc;
        if (buckets.size() <= static_cast<std::size_t>(nc)) buckets.resize(nc + 1);
        buckets[nc].push_back(next);
      }
    }
  }
  return best;
}

void criterion6(Report& r) {
  const auto best = oracle_costs();
  r.info("search reached " + std::to_string(best.size()) + " functions");
  bool reach_all = best.size() == kTwoTritFunctions;
  bool single_ok = true, mmd_ok = true;
  int opt58 = -1;
  std::ostringstream gaps;
  int total_gap = 0, worst_gap = 0;
  for (Point a = 0; a < 9; ++a) {
    for (Point b = a + 1; b < 9; ++b) {
      std::array<std::uint8_t, 9> t{0, 1, 2, 3, 4, 5, 6, 7, 8};
      std::swap(t[a], t[b]);
      const int opt = best.at(pack(t));
      if (a == 5 && b == 8) opt58 = opt;
      if (auto g = single_gate_transposition(a, b)) single_ok = single_ok && (opt == 2 || opt == 4) && opt == gate_cost(*g);
      const int m = circuit_cost(mmd_plus(perm_from_cycle(Cycle{a, b}, 9)));
      mmd_ok = mmd_ok && m >= opt;
      total_gap += m - opt;
      worst_gap = std::max(worst_gap, m - opt);
      gaps << " (" << a << " " << b << "):" << opt << "/" << m;
    }
  }
  r.check(reach_all, "the 40-gate library generates all 9! functions");
  r.check(single_ok, "every one-digit transposition has optimum 2 or 4 equal to its single gate cost");
  r.check(opt58 == 2, "(5 8) optimum " + std::to_string(opt58));
  r.check(mmd_ok, "mmd_plus cost >= optimum for all 36 transpositions; total gap " + std::to_string(total_gap) +
                      ", worst gap " + std::to_string(worst_gap));
  r.info("optimum/mmd per pair:" + gaps.str());
}

// ---------------------------------------------------------------------------
// Criteria 1, 7, 9

struct FullRun {
  BenchResult result;
  double seconds = 0;
  std::string error;
};

FullRun full_run(const BenchOptions& o) {
  FullRun fr;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    fr.result = run_benchmark(o);
  } catch (const std::exception& e) {
    fr.error = e.what();
  }
  fr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return fr;
}

void criterion1(Report& r, const FullRun& fr) {
  if (!fr.error.empty()) {
    r.check(false, "benchmark aborted: " + fr.error);
    return;
  }
  std::size_t verified = 0;
  for (const auto& rec : fr.result.records) verified += rec.verified;
  r.check(fr.result.records.size() == kTwoTritFunctions && verified == kTwoTritFunctions,
          std::to_string(verified) + " of " + std::to_string(kTwoTritFunctions) +
              " functions verified for all four methods (" + std::to_string(4 * verified) + " circuits)");
  r.check(fr.seconds <= 30 * 60, "runtime " + str(fr.seconds, 1) + " s on " +
                                     std::to_string(std::max(1u, std::thread::hardware_concurrency())) + " thread(s)");
}

void criterion7(Report& r, const FullRun& fr) {
  if (!fr.error.empty()) {
    r.check(false, "no benchmark data");
    return;
  }
  const BenchStats& s = fr.result.stats;
  const double a = 100 * *s.a, b = 100 * *s.b, c = 100 * *s.c, d = 100 * *s.d;
  r.check(within(a, 96.7, 5), "A = P(mmd <= natural) = " + str(a) + "% (target 96.7 +/- 5)");
  r.check(within(b, 54.4, 8), "B = P(mmd < natural) = " + str(b) + "% (target 54.4 +/- 8)");
  r.check(within(c, 69.9, 8), "C = P(natural < three_cycles) = " + str(c) + "% (target 69.9 +/- 8)");
  r.check(within(d, 1.9, 2), "D = P(transpositions < mmd) = " + str(d) + "% (target 1.9 +/- 2)");
  r.check(s.counts.mmd_le_natural >= s.counts.mmd_lt_natural, "A >= B");
  r.info("flags: raw costs, seed " + std::to_string(s.options.seed) +
         " xor rank, bidirectional MMD+, Hamming distance, pivot search off");

  // Context for C: how the two cycle strategies differ by cycle structure.
  std::uint64_t short_only = 0, nat_eq = 0;
  for (const auto& rec : fr.result.records) {
    bool has_long = false;
    for (const Cycle& cy : natural_cycles(rec.perm).factors) has_long = has_long || cy.length() > 3;
    short_only += !has_long;
    nat_eq += rec[Method::natural].cost_raw == rec[Method::three_cycles].cost_raw;
  }
  r.info("functions with only cycles of length <= 3: " + str(100.0 * short_only / kTwoTritFunctions) +
         "%; natural = three_cycles cost: " + str(100.0 * nat_eq / kTwoTritFunctions) + "%");
  for (StatCost sc : {StatCost::adjusted, StatCost::optimized}) {
    BenchOptions o = s.options;
    o.cost = sc;
    const BenchStats alt = compute_stats(fr.result.records, o);
    r.info(std::string("under ") + std::string(stat_cost_name(sc)) + " costs: A " + str(100 * *alt.a) + "%, B " +
           str(100 * *alt.b) + "%, C " + str(100 * *alt.c) + "%, D " + str(100 * *alt.d) + "%");
  }
}

std::string read_file(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void criterion9(Report& r, const FullRun& fr, const BenchOptions& o) {
  if (!fr.error.empty()) {
    r.check(false, "no benchmark data");
    return;
  }
  const fs::path dir = fs::temp_directory_path() / "ternrev-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  export_csv(fr.result.records, o.methods, dir / "run1.csv");
  // Second run: 8 checkpointed shards, merged.
  const auto t0 = std::chrono::steady_clock::now();
  for (unsigned i = 0; i < 8; ++i) run_shard(ShardJob{dir / "shards", 8, i}, o);
  const BenchStats merged = merge_shards(dir / "shards", 8, o);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string a = read_file(dir / "run1.csv");
  const std::string b = read_file(dir / "shards" / "records.csv");
  r.check(!a.empty() && a == b, "in-memory run and 8-shard run give byte-identical CSV (" +
                                    std::to_string(a.size()) + " bytes; second run " + str(secs, 1) + " s)");
  r.check(merged == fr.result.stats, "merged shard statistics equal the in-memory statistics");
  fs::remove_all(dir);
}

// ---------------------------------------------------------------------------
// Criterion 8

void criterion8(Report& r) {
  std::mt19937 rng(20240601);
  const auto lib = elementary_library(2);
  bool perms_ok = true, seq_ok = true, nn_ok = true;
  int with_violation = 0;
  for (int k = 0; k < 100; ++k) {
    // Half the triples avoid simple gates on y so both sides of the iff occur.
    const bool avoid = k % 2 == 0;
    std::vector<Circuit> subs;
    bool has_simple_y = false;
    for (int s = 0; s < 3; ++s) {
      Circuit c(2);
      const int n = static_cast<int>(rng() % 7);
      while (static_cast<int>(c.size()) < n) {
        const Gate& g = lib[rng() % lib.size()];
        const bool simple_y = g.is_simple() && g.target() == 1;
        if (avoid && simple_y) continue;
        has_simple_y = has_simple_y || simple_y;
        c.push_back(g);
      }
      subs.push_back(c);
    }
    const MuxSpec spec{3, subs};
    const Perm want = mux_perm(spec);
    const Circuit shift = compose_3x3(subs[0], subs[1], subs[2], ControlSequence::shift);
    const Circuit alt = compose_3x3(subs[0], subs[1], subs[2], ControlSequence::alternate);
    perms_ok = perms_ok && simulate(shift) == want && want.size() == 27;
    seq_ok = seq_ok && simulate(alt) == simulate(shift);
    const bool violates = !near_neighbor_check(shift).empty();
    with_violation += violates;
    nn_ok = nn_ok && violates == has_simple_y && violates == !near_neighbor_check(alt).empty();
  }
  r.check(perms_ok, "simulate(compose_3x3) = mux_perm on all 27 points for 100 random triples");
  r.check(nn_ok, "near-neighbor violations iff a subcircuit has a simple gate on y (" +
                     std::to_string(with_violation) + " of 100 triples violate)");
  r.check(seq_ok, "X,X,X and N,XT,P12 control sequences give identical perms");
  const std::string cs = class_size_string(3);
  r.check(cs == "47784725839872000", "class_size(3) = " + cs);
}

}  // namespace

int main() {
  std::vector<std::pair<int, Report>> reports;
  const auto run = [&](int id, const std::function<void(Report&)>& f) {
    Report r;
    try {
      f(r);
    } catch (const std::exception& e) {
      r.check(false, std::string("exception: ") + e.what());
    }
    reports.emplace_back(id, std::move(r));
  };

  BenchOptions o;
  std::cerr << "running the full benchmark (" << kTwoTritFunctions << " functions)...\n";
  const FullRun fr = full_run(o);

  run(1, [&](Report& r) { criterion1(r, fr); });
  run(2, criterion2);
  run(3, criterion3);
  run(4, criterion4);
  run(5, criterion5);
  run(6, criterion6);
  run(7, [&](Report& r) { criterion7(r, fr); });
  run(8, criterion8);
  run(9, [&](Report& r) { criterion9(r, fr, o); });

  std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  static const char* titles[] = {"",
                                 "exhaustive correctness",
                                 "worked example F1",
                                 "worked example F2",
                                 "pivot rotation",
                                 "template soundness",
                                 "search oracle on transpositions",
                                 "benchmark statistics",
                                 "multiplexed composition",
                                 "determinism"};
  bool all = true;
  for (const auto& [id, r] : reports) {
    for (const std::string& n : r.notes) std::cout << "    " << n << "\n";
    std::cout << "criterion " << id << " (" << titles[id] << "): " << (r.ok ? "PASS" : "FAIL") << "\n";
    all = all && r.ok;
  }
  int passed = 0;
  for (const auto& [id, r] : reports) passed += r.ok;
  std::cout << passed << "/" << reports.size() << " criteria passed\n";
  return all ? 0 : 1;
}
