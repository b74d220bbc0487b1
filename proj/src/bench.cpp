#include "ternrev/bench.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ternrev/cycles.hpp"
#include "ternrev/peephole.hpp"

namespace ternrev {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view method_name(Method m) {
  switch (m) {
    case Method::mmd: return "mmd";
    case Method::natural: return "natural";
    case Method::three_cycles: return "three_cycles";
    case Method::transpositions: return "transpositions";
  }
  return "?";
}

Method parse_method(std::string_view s) {
  if (s == "mmd") return Method::mmd;
  if (s == "natural") return Method::natural;
  if (s == "three_cycles" || s == "3cyc") return Method::three_cycles;
  if (s == "transpositions" || s == "transp") return Method::transpositions;
  throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

std::string_view stat_cost_name(StatCost c) {
  switch (c) {
    case StatCost::raw: return "raw";
    case StatCost::adjusted: return "adjusted";
    case StatCost::optimized: return "optimized";
  }
  return "?";
}

StatCost parse_stat_cost(std::string_view s) {
  if (s == "raw") return StatCost::raw;
  if (s == "adjusted") return StatCost::adjusted;
  if (s == "optimized") return StatCost::optimized;
  throw std::invalid_argument("unknown cost mode '" + std::string(s) + "'");
}

Perm perm_from_rank(std::uint64_t rank) {
  if (rank >= kTwoTritFunctions) throw std::out_of_range("rank out of range");
  std::vector<Point> pool = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<Point> image;
  image.reserve(9);
  std::uint64_t fact = kTwoTritFunctions;
  for (std::uint64_t k = 9; k > 0; --k) {
    fact /= k;
    const std::uint64_t digit = rank / fact;
    rank %= fact;
    image.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return Perm(std::move(image));
}

std::uint64_t perm_rank(const Perm& p) {
  if (p.size() != 9) throw std::invalid_argument("perm_rank needs a 9-point permutation");
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < 9; ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < 9; ++j) smaller += p[j] < p[i];
    rank = rank * (9 - i) + smaller;
  }
  return rank;
}

FunctionRange::iterator::iterator(std::uint64_t rank, std::uint64_t end) : rank_(rank), end_(end) {
  if (rank_ < end_) current_ = perm_from_rank(rank_);
}

FunctionRange::iterator& FunctionRange::iterator::operator++() {
  if (++rank_ < end_) {
    std::vector<Point> img = current_.image();
    std::next_permutation(img.begin(), img.end());
    current_ = Perm(std::move(img));
  }
  return *this;
}

FunctionRange::FunctionRange(std::uint64_t begin, std::uint64_t end) : begin_(begin), end_(end) {
  if (begin_ > end_ || end_ > kTwoTritFunctions) throw std::out_of_range("bad function range");
}

FunctionRange all_functions() { return FunctionRange(); }

bool BenchOptions::has(Method m) const { return std::find(methods.begin(), methods.end(), m) != methods.end(); }

int MethodResult::cost(StatCost c) const {
  switch (c) {
    case StatCost::raw: return cost_raw;
    case StatCost::adjusted: return cost_adj;
    case StatCost::optimized: return cost_opt;
  }
  return cost_raw;
}

void StatCounts::add(const BenchRecord& r, const BenchOptions& opts) {
  ++functions;
  const auto cost = [&](Method m) { return r[m].cost(opts.cost); };
  if (opts.has(Method::mmd) && opts.has(Method::natural)) {
    mmd_le_natural += cost(Method::mmd) <= cost(Method::natural);
    mmd_lt_natural += cost(Method::mmd) < cost(Method::natural);
  }
  if (opts.has(Method::natural) && opts.has(Method::three_cycles)) {
    natural_lt_three += cost(Method::natural) < cost(Method::three_cycles);
  }
  if (opts.has(Method::transpositions) && opts.has(Method::mmd)) {
    transpositions_lt_mmd += cost(Method::transpositions) < cost(Method::mmd);
  }
}

StatCounts& StatCounts::operator+=(const StatCounts& o) {
  functions += o.functions;
  mmd_le_natural += o.mmd_le_natural;
  mmd_lt_natural += o.mmd_lt_natural;
  natural_lt_three += o.natural_lt_three;
  transpositions_lt_mmd += o.transpositions_lt_mmd;
  return *this;
}

BenchStats make_stats(const StatCounts& counts, const BenchOptions& opts) {
  BenchStats s;
  s.counts = counts;
  s.options = opts;
  if (counts.functions == 0) return s;
  const double n = static_cast<double>(counts.functions);
  if (opts.has(Method::mmd) && opts.has(Method::natural)) {
    s.a = static_cast<double>(counts.mmd_le_natural) / n;
    s.b = static_cast<double>(counts.mmd_lt_natural) / n;
  }
  if (opts.has(Method::natural) && opts.has(Method::three_cycles)) s.c = static_cast<double>(counts.natural_lt_three) / n;
  if (opts.has(Method::transpositions) && opts.has(Method::mmd)) {
    s.d = static_cast<double>(counts.transpositions_lt_mmd) / n;
  }
  return s;
}

BenchStats compute_stats(const std::vector<BenchRecord>& records, const BenchOptions& opts) {
  StatCounts counts;
  for (const BenchRecord& r : records) counts.add(r, opts);
  return make_stats(counts, opts);
}

SynthOptions function_options(std::uint64_t rank, const BenchOptions& opts) {
  SynthOptions so;
  so.seed = opts.seed ^ rank;
  return so;
}

Circuit synthesize(const Perm& f, Method m, const SynthOptions& so, bool pivot_search) {
  switch (m) {
    case Method::mmd: return mmd_plus(f, so);
    case Method::natural: return synth_cycles(f, {StrategyKind::natural}, so);
    case Method::three_cycles: return synth_cycles(f, {StrategyKind::three_cycles}, so);
    case Method::transpositions: return synth_cycles(f, {StrategyKind::transpositions, pivot_search}, so);
  }
  throw std::invalid_argument("unknown method");
}

BenchRecord bench_function(std::uint64_t rank, const BenchOptions& opts) {
  BenchRecord r;
  r.rank = rank;
  r.perm = perm_from_rank(rank);
  const SynthOptions so = function_options(rank, opts);
  for (Method m : opts.methods) {
    Circuit c = synthesize(r.perm, m, so, opts.pivot_search);
    if (simulate(c) != r.perm) throw VerificationError(rank, m);
    MethodResult& res = r.results[static_cast<std::size_t>(m)];
    res.cost_raw = circuit_cost(c, so.cost);
    res.cost_adj = circuit_cost(c, so.cost, CostMode::adjusted);
    Circuit opt = optimize(c, so.cost);
    if (simulate(opt) != r.perm) throw VerificationError(rank, m);
    res.cost_opt = circuit_cost(opt, so.cost);
    res.gates = static_cast<int>(c.size());
  }
  r.verified = true;
  return r;
}

namespace {

std::vector<BenchRecord> run_range(const BenchOptions& opts, std::uint64_t begin, std::uint64_t end) {
  std::vector<BenchRecord> records(end - begin);
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, end - begin)));
  if (threads <= 1) {
    for (std::uint64_t r = begin; r < end; ++r) records[r - begin] = bench_function(r, opts);
    return records;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  const std::uint64_t span = end - begin;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t lo = begin + span * t / threads;
    const std::uint64_t hi = begin + span * (t + 1) / threads;
    pool.emplace_back([&, t, lo, hi] {
      try {
        for (std::uint64_t r = lo; r < hi; ++r) records[r - begin] = bench_function(r, opts);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return records;
}

json options_json(const BenchOptions& opts) {
  json methods = json::array();
  for (Method m : opts.methods) methods.push_back(std::string(method_name(m)));
  return json{{"seed", opts.seed},
              {"cost", std::string(stat_cost_name(opts.cost))},
              {"pivot_search", opts.pivot_search},
              {"methods", methods}};
}

json counts_json(const StatCounts& c) {
  return json{{"functions", c.functions},
              {"mmd_le_natural", c.mmd_le_natural},
              {"mmd_lt_natural", c.mmd_lt_natural},
              {"natural_lt_three_cycles", c.natural_lt_three},
              {"transpositions_lt_mmd", c.transpositions_lt_mmd}};
}

StatCounts counts_from_json(const json& j) {
  StatCounts c;
  c.functions = j.at("functions").get<std::uint64_t>();
  c.mmd_le_natural = j.at("mmd_le_natural").get<std::uint64_t>();
  c.mmd_lt_natural = j.at("mmd_lt_natural").get<std::uint64_t>();
  c.natural_lt_three = j.at("natural_lt_three_cycles").get<std::uint64_t>();
  c.transpositions_lt_mmd = j.at("transpositions_lt_mmd").get<std::uint64_t>();
  return c;
}

json fraction(const std::optional<double>& f) { return f ? json(*f) : json(nullptr); }

json stats_json(const BenchStats& s) {
  return json{
      {"tool", "ternrev"},
      {"version", std::string(kToolVersion)},
      {"metadata",
       {{"options", options_json(s.options)},
        {"synthesis",
         {{"direction", "bidirectional"}, {"tie_break", "seeded (base seed xor rank)"}, {"distance", "trit hamming"}}}}},
      {"counts", counts_json(s.counts)},
      {"fractions", {{"A", fraction(s.a)}, {"B", fraction(s.b)}, {"C", fraction(s.c)}, {"D", fraction(s.d)}}}};
}

void write_text_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os << text;
    if (!os.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

BenchResult run_benchmark(const BenchOptions& opts, std::uint64_t begin, std::uint64_t end) {
  if (begin > end || end > kTwoTritFunctions) throw std::out_of_range("bad rank range");
  BenchResult out;
  out.records = run_range(opts, begin, end);
  out.stats = compute_stats(out.records, opts);
  return out;
}

std::pair<std::uint64_t, std::uint64_t> shard_range(unsigned shards, unsigned index, std::uint64_t total) {
  if (shards == 0 || index >= shards) throw std::invalid_argument("shard index out of range");
  return {total * index / shards, total * (index + 1) / shards};
}

fs::path shard_csv_path(const ShardJob& job) {
  return job.out_dir / ("shard-" + std::to_string(job.index) + "-of-" + std::to_string(job.shards) + ".csv");
}

fs::path shard_checkpoint_path(const ShardJob& job) {
  return job.out_dir / ("shard-" + std::to_string(job.index) + "-of-" + std::to_string(job.shards) + ".ckpt.json");
}

namespace {

struct Checkpoint {
  ShardProgress progress;
  std::uintmax_t csv_bytes = 0;
};

Checkpoint load_checkpoint(const ShardJob& job, const BenchOptions& opts) {
  std::ifstream is(shard_checkpoint_path(job));
  if (!is) throw CheckpointError("cannot read checkpoint " + shard_checkpoint_path(job).string());
  try {
    json j = json::parse(is);
    Checkpoint c;
    if (j.at("shard").get<unsigned>() != job.index || j.at("shards").get<unsigned>() != job.shards) {
      throw CheckpointError("checkpoint belongs to a different shard");
    }
    if (j.at("options") != options_json(opts)) throw CheckpointError("checkpoint was written with different options");
    c.progress.next_rank = j.at("next_rank").get<std::uint64_t>();
    c.progress.end_rank = j.at("end_rank").get<std::uint64_t>();
    c.progress.counts = counts_from_json(j.at("counts"));
    c.csv_bytes = j.at("csv_bytes").get<std::uintmax_t>();
    auto [lo, hi] = shard_range(job.shards, job.index, job.total);
    if (c.progress.end_rank != hi || c.progress.next_rank < lo || c.progress.next_rank > hi ||
        c.progress.counts.functions != c.progress.next_rank - lo) {
      throw CheckpointError("checkpoint rank bookkeeping is inconsistent");
    }
    return c;
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("corrupt checkpoint: ") + e.what());
  }
}

void save_checkpoint(const ShardJob& job, const BenchOptions& opts, const Checkpoint& c) {
  json j{{"shard", job.index},
         {"shards", job.shards},
         {"options", options_json(opts)},
         {"next_rank", c.progress.next_rank},
         {"end_rank", c.progress.end_rank},
         {"csv_bytes", c.csv_bytes},
         {"counts", counts_json(c.progress.counts)}};
  write_text_atomic(shard_checkpoint_path(job), j.dump(2) + "\n");
}

}  // namespace

ShardProgress run_shard(const ShardJob& job, const BenchOptions& opts) {
  if (job.chunk == 0) throw std::invalid_argument("chunk must be positive");
  fs::create_directories(job.out_dir);
  const fs::path csv = shard_csv_path(job);

  Checkpoint ck;
  if (fs::exists(shard_checkpoint_path(job))) {
    ck = load_checkpoint(job, opts);
    if (!fs::exists(csv) || fs::file_size(csv) < ck.csv_bytes) {
      throw CheckpointError("shard CSV is shorter than its checkpoint");
    }
    // Drop rows written after the last checkpoint.
    fs::resize_file(csv, ck.csv_bytes);
  } else {
    auto [lo, hi] = shard_range(job.shards, job.index, job.total);
    ck.progress.next_rank = lo;
    ck.progress.end_rank = hi;
    std::ofstream os(csv, std::ios::binary | std::ios::trunc);
    write_csv_header(os, opts.methods);
    if (!os.flush()) throw std::runtime_error("cannot write " + csv.string());
    os.close();
    ck.csv_bytes = fs::file_size(csv);
    save_checkpoint(job, opts, ck);
  }

  std::uint64_t done = 0;
  while (!ck.progress.complete() && (job.max_ranks == 0 || done < job.max_ranks)) {
    std::uint64_t step = std::min(job.chunk, ck.progress.end_rank - ck.progress.next_rank);
    if (job.max_ranks) step = std::min(step, job.max_ranks - done);
    std::vector<BenchRecord> records = run_range(opts, ck.progress.next_rank, ck.progress.next_rank + step);
    {
      std::ofstream os(csv, std::ios::binary | std::ios::app);
      for (const BenchRecord& r : records) {
        write_csv_row(os, r, opts.methods);
        ck.progress.counts.add(r, opts);
      }
      if (!os.flush()) throw std::runtime_error("cannot append to " + csv.string());
    }
    ck.csv_bytes = fs::file_size(csv);
    ck.progress.next_rank += step;
    done += step;
    save_checkpoint(job, opts, ck);
  }
  return ck.progress;
}

BenchStats merge_shards(const fs::path& out_dir, unsigned shards, const BenchOptions& opts, std::uint64_t total) {
  StatCounts counts;
  std::ofstream out(out_dir / "records.csv", std::ios::binary | std::ios::trunc);
  write_csv_header(out, opts.methods);
  for (unsigned i = 0; i < shards; ++i) {
    ShardJob job{out_dir, shards, i, 1, 0, total};
    Checkpoint ck = load_checkpoint(job, opts);
    if (!ck.progress.complete()) throw CheckpointError("shard " + std::to_string(i) + " is incomplete");
    counts += ck.progress.counts;
    std::ifstream in(shard_csv_path(job), std::ios::binary);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) out << line << '\n';
  }
  if (!out.flush()) throw std::runtime_error("cannot write merged records");
  BenchStats stats = make_stats(counts, opts);
  write_text_atomic(out_dir / "stats.json", stats_json(stats).dump(2) + "\n");
  return stats;
}

void write_csv_header(std::ostream& os, const std::vector<Method>& methods) {
  os << "rank,perm";
  for (Method m : methods) {
    const std::string n(method_name(m));
    os << ',' << n << "_cost_raw," << n << "_cost_adj," << n << "_cost_opt," << n << "_gates";
  }
  os << ",verified\n";
}

void write_csv_row(std::ostream& os, const BenchRecord& r, const std::vector<Method>& methods) {
  os << r.rank << ",\"" << format_perm(r.perm) << '"';
  for (Method m : methods) {
    const MethodResult& res = r[m];
    os << ',' << res.cost_raw << ',' << res.cost_adj << ',' << res.cost_opt << ',' << res.gates;
  }
  os << ',' << (r.verified ? 1 : 0) << '\n';
}

void export_csv(const std::vector<BenchRecord>& records, const std::vector<Method>& methods, const fs::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write_csv_header(os, methods);
  for (const BenchRecord& r : records) write_csv_row(os, r, methods);
  if (!os.flush()) throw std::runtime_error("write failed: " + path.string());
}

CsvImport import_csv(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty CSV: " + path.string());
  auto header = split_csv(line);
  if (header.size() < 3 || header[0] != "rank" || header[1] != "perm" || header.back() != "verified" ||
      (header.size() - 3) % 4 != 0) {
    throw std::runtime_error("unexpected CSV header in " + path.string());
  }
  CsvImport out;
  for (std::size_t k = 2; k + 1 < header.size(); k += 4) {
    const std::string& col = header[k];
    out.methods.push_back(parse_method(col.substr(0, col.size() - std::string("_cost_raw").size())));
  }
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != header.size()) throw std::runtime_error("bad field count on CSV line " + std::to_string(line_no));
    BenchRecord r;
    r.rank = std::stoull(f[0]);
    r.perm = parse_perm(f[1]);
    for (std::size_t m = 0; m < out.methods.size(); ++m) {
      MethodResult& res = r.results[static_cast<std::size_t>(out.methods[m])];
      res.cost_raw = std::stoi(f[2 + 4 * m]);
      res.cost_adj = std::stoi(f[3 + 4 * m]);
      res.cost_opt = std::stoi(f[4 + 4 * m]);
      res.gates = std::stoi(f[5 + 4 * m]);
    }
    r.verified = f.back() == "1";
    out.records.push_back(std::move(r));
  }
  return out;
}

void export_json(const std::vector<BenchRecord>& records, const BenchStats& stats, const fs::path& path,
                 bool with_records) {
  json j = stats_json(stats);
  if (with_records) {
    json rows = json::array();
    for (const BenchRecord& r : records) {
      json row{{"rank", r.rank}, {"perm", format_perm(r.perm)}, {"verified", r.verified}};
      for (Method m : stats.options.methods) {
        const MethodResult& res = r[m];
        row[std::string(method_name(m))] = {
            {"cost_raw", res.cost_raw}, {"cost_adj", res.cost_adj}, {"cost_opt", res.cost_opt}, {"gates", res.gates}};
      }
      rows.push_back(std::move(row));
    }
    j["records"] = std::move(rows);
  }
  write_text_atomic(path, j.dump(2) + "\n");
}

}  // namespace ternrev
