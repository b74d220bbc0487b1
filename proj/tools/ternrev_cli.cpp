// ternrev: command-line front end for the synthesis library.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ternrev/bench.hpp"
#include "ternrev/circuit.hpp"
#include "ternrev/cycles.hpp"
#include "ternrev/mmd.hpp"
#include "ternrev/peephole.hpp"
#include "ternrev/scale.hpp"

using namespace ternrev;

namespace {

std::uint64_t parse_seed(const std::string& s) {
  std::size_t used = 0;
  std::uint64_t v = std::stoull(s, &used, 0);
  if (used != s.size()) throw std::invalid_argument("bad seed '" + s + "'");
  return v;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TERNREV_SEED"); env && *env) return parse_seed(env);
  return kDefaultSeed;
}

// "4,3,7,5,8,1,2,6,0" or cycle notation "(0 4 8)(1 3 5)".
Perm read_perm(const std::string& text) {
  if (text.find('(') != std::string::npos) {
    auto cycles = parse_cycles(text);
    return perm_from_cycles(cycles, 9);
  }
  Perm p = parse_perm(text);
  if (p.size() != 9) throw std::invalid_argument("expected a 9-entry permutation");
  return p;
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Circuit read_circuit(const std::string& path, std::optional<int> lines = std::nullopt) {
  return parse_circuit(slurp(path), lines);
}

void print_costs(const Circuit& c, const CostModel& m) {
  std::cout << "# cost raw=" << circuit_cost(c, m) << " adjusted=" << circuit_cost(c, m, CostMode::adjusted)
            << " optimized=" << circuit_cost(optimize(c, m), m) << " gates=" << c.size() << "\n";
}

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_method(item));
  }
  if (out.empty()) throw std::invalid_argument("no methods given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ternary reversible circuit synthesis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string perm_text, method_text = "mmd", seed_text, circuit_path;
  bool pivot = false, do_opt = false, draw = false;

  auto* synth = app.add_subcommand("synth", "Synthesize a two-trit function");
  synth->add_option("--perm", perm_text, "Image list or cycle notation")->required();
  synth->add_option("--method", method_text, "mmd | natural | 3cyc | transp")->capture_default_str();
  synth->add_option("--seed", seed_text, "Tie-break seed (default: $TERNREV_SEED or built-in)");
  synth->add_flag("--pivot-search", pivot, "Try every rotation before splitting into transpositions");
  synth->add_flag("--optimize", do_opt, "Print the template-optimized circuit");
  synth->add_flag("--draw", draw, "Also print a diagram");

  auto* verify = app.add_subcommand("verify", "Check a circuit file against a function");
  verify->add_option("--perm", perm_text)->required();
  verify->add_option("--circuit", circuit_path, "Circuit file, - for stdin")->required();

  auto* opt = app.add_subcommand("optimize", "Apply gate merging and templates");
  opt->add_option("--circuit", circuit_path)->required();
  opt->add_flag("--draw", draw);

  std::string strategy_text = "natural";
  auto* decompose = app.add_subcommand("decompose", "Cycle decomposition and factors");
  decompose->add_option("--perm", perm_text)->required();
  decompose->add_option("--strategy", strategy_text, "natural | 3cyc | transp")->capture_default_str();
  decompose->add_option("--seed", seed_text);
  decompose->add_flag("--pivot-search", pivot);

  std::string methods_text = "mmd,natural,three_cycles,transpositions", out_dir, cost_text = "raw";
  unsigned shards = 1, threads = 0;
  std::optional<unsigned> shard;
  std::uint64_t chunk = 4096, limit = 0;
  bool merge = false;
  auto* bench = app.add_subcommand("bench", "Exhaustive benchmark over all 9! functions");
  bench->add_option("--methods", methods_text)->capture_default_str();
  bench->add_option("--out", out_dir, "Output directory")->required();
  bench->add_option("--shards", shards)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--shard", shard, "Run only this shard (default: all, then merge)");
  bench->add_option("--seed", seed_text);
  bench->add_option("--cost", cost_text, "raw | adjusted | optimized")->capture_default_str();
  bench->add_flag("--pivot-search", pivot);
  bench->add_option("--threads", threads, "Worker threads, 0 = hardware")->capture_default_str();
  bench->add_option("--chunk", chunk, "Ranks per checkpoint")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--limit", limit, "Stop a shard after this many ranks (0 = no limit)");
  bench->add_flag("--merge", merge, "Only merge completed shards");

  std::vector<std::string> parts;
  std::string sequence_text = "shift";
  auto* compose3 = app.add_subcommand("compose3", "Build a 3-line circuit from three 2-line circuits");
  compose3->add_option("circuits", parts, "Circuits for control value 0, 1, 2")->required()->expected(3);
  compose3->add_option("--sequence", sequence_text, "shift | alternate")->capture_default_str();
  compose3->add_flag("--draw", draw);

  CLI11_PARSE(app, argc, argv);

  try {
    const std::uint64_t seed = seed_text.empty() ? default_seed() : parse_seed(seed_text);
    SynthOptions so;
    so.seed = seed;

    if (*synth) {
      const Perm f = read_perm(perm_text);
      Circuit c = synthesize(f, parse_method(method_text), so, pivot);
      if (do_opt) c = optimize(c, so.cost);
      std::cout << format_circuit(c);
      if (draw) std::cout << draw_circuit(c);
      print_costs(c, so.cost);
      return 0;
    }

    if (*verify) {
      const Perm f = read_perm(perm_text);
      const Circuit c = read_circuit(circuit_path, 2);
      const Perm got = simulate(c);
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (got[i] != f[i]) {
          std::cout << "mismatch at input " << i << ": expected " << f[i] << ", got " << got[i] << "\n";
          return 1;
        }
      }
      std::cout << "ok\n";
      return 0;
    }

    if (*opt) {
      const Circuit c = optimize(read_circuit(circuit_path), so.cost);
      std::cout << format_circuit(c);
      if (draw) std::cout << draw_circuit(c);
      print_costs(c, so.cost);
      return 0;
    }

    if (*decompose) {
      const Perm f = read_perm(perm_text);
      Strategy s{StrategyKind::natural, pivot};
      const Method m = parse_method(strategy_text);
      if (m == Method::three_cycles) s.kind = StrategyKind::three_cycles;
      else if (m == Method::transpositions) s.kind = StrategyKind::transpositions;
      else if (m != Method::natural) throw std::invalid_argument("strategy must be natural, 3cyc or transp");
      const CycleDecomposition d = natural_cycles(f);
      std::cout << "cycles " << (d.factors.empty() ? "()" : format_cycles(d.factors)) << "\n";
      for (const Cycle& c : d.factors) {
        const auto factors = strategy_factors(c, s, so);
        std::cout << format_cycle(c) << " =";
        for (const Cycle& k : factors) {
          std::cout << ' ' << format_cycle(k) << ':' << circuit_cost(synth_factor(k, so), so.cost);
        }
        std::cout << "\n";
      }
      return 0;
    }

    if (*bench) {
      BenchOptions bo;
      bo.methods = parse_methods(methods_text);
      bo.cost = parse_stat_cost(cost_text);
      bo.seed = seed;
      bo.pivot_search = pivot;
      bo.threads = threads;
      if (shard && *shard >= shards) throw std::invalid_argument("--shard must be below --shards");
      if (!merge) {
        for (unsigned i = 0; i < shards; ++i) {
          if (shard && *shard != i) continue;
          ShardJob job{out_dir, shards, i, chunk, limit};
          const ShardProgress p = run_shard(job, bo);
          std::cerr << "shard " << i << "/" << shards << ": " << p.counts.functions << " functions"
                    << (p.complete() ? ", complete" : ", paused") << "\n";
        }
      }
      if (merge || !shard) {
        const BenchStats st = merge_shards(out_dir, shards, bo);
        auto pct = [](const std::optional<double>& v) {
          std::ostringstream ss;
          if (v) ss << std::fixed << std::setprecision(2) << 100.0 * *v << "%";
          else ss << "n/a";
          return ss.str();
        };
        std::cout << "functions " << st.counts.functions << "\nA " << pct(st.a) << "\nB " << pct(st.b) << "\nC "
                  << pct(st.c) << "\nD " << pct(st.d) << "\n";
      }
      return 0;
    }

    if (*compose3) {
      const ControlSequence seq = sequence_text == "alternate" ? ControlSequence::alternate
                                  : sequence_text == "shift"   ? ControlSequence::shift
                                                               : throw std::invalid_argument("bad --sequence");
      const Circuit c =
          compose_3x3(read_circuit(parts[0], 2), read_circuit(parts[1], 2), read_circuit(parts[2], 2), seq);
      std::cout << format_circuit(c);
      if (draw) std::cout << draw_circuit(c);
      std::cout << "# perm " << format_perm(simulate(c)) << "\n";
      print_costs(c, extended_cost_model());
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
