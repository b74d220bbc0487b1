#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ternrev/circuit.hpp"
#include "ternrev/mmd.hpp"
#include "ternrev/perm.hpp"

namespace ternrev {

inline constexpr std::uint64_t kTwoTritFunctions = 362880;  // 9!
inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Method { mmd = 0, natural = 1, three_cycles = 2, transpositions = 3 };
inline constexpr std::array<Method, 4> kAllMethods = {Method::mmd, Method::natural, Method::three_cycles,
                                                      Method::transpositions};

std::string_view method_name(Method m);
/// Accepts the column names (mmd, natural, three_cycles, transpositions) and
/// the CLI short forms 3cyc and transp.
Method parse_method(std::string_view s);

/// Which recorded cost feeds the statistics.
enum class StatCost { raw, adjusted, optimized };
std::string_view stat_cost_name(StatCost c);
StatCost parse_stat_cost(std::string_view s);

/// Lexicographic rank of a 9-point image table (factorial number system).
Perm perm_from_rank(std::uint64_t rank);
std::uint64_t perm_rank(const Perm& p);

/// All 9! two-trit reversible functions in lexicographic order.
class FunctionRange {
 public:
  class iterator {
   public:
    using value_type = Perm;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(std::uint64_t rank, std::uint64_t end);
    const Perm& operator*() const { return current_; }
    std::uint64_t rank() const { return rank_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.rank_ == b.rank_; }

   private:
    std::uint64_t rank_ = 0;
    std::uint64_t end_ = 0;
    Perm current_;
  };

  FunctionRange(std::uint64_t begin = 0, std::uint64_t end = kTwoTritFunctions);
  iterator begin() const { return iterator(begin_, end_); }
  iterator end() const { return iterator(end_, end_); }
  std::uint64_t size() const { return end_ - begin_; }

 private:
  std::uint64_t begin_;
  std::uint64_t end_;
};

FunctionRange all_functions();

struct BenchOptions {
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  StatCost cost = StatCost::raw;
  std::uint64_t seed = kDefaultSeed;
  /// Rotation search for the transposition method.
  bool pivot_search = false;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  bool has(Method m) const;
};

struct MethodResult {
  int cost_raw = 0;
  int cost_adj = 0;
  int cost_opt = 0;
  int gates = 0;

  int cost(StatCost c) const;
  friend bool operator==(const MethodResult&, const MethodResult&) = default;
};

struct BenchRecord {
  std::uint64_t rank = 0;
  Perm perm;
  /// Indexed by Method; only the benchmarked methods are meaningful.
  std::array<MethodResult, 4> results{};
  bool verified = false;

  const MethodResult& operator[](Method m) const { return results[static_cast<std::size_t>(m)]; }
  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

/// Counts behind the four comparison fractions. Folding is associative, so
/// shards aggregate independently.
struct StatCounts {
  std::uint64_t functions = 0;
  std::uint64_t mmd_le_natural = 0;             // A
  std::uint64_t mmd_lt_natural = 0;             // B
  std::uint64_t natural_lt_three = 0;           // C
  std::uint64_t transpositions_lt_mmd = 0;      // D

  void add(const BenchRecord& r, const BenchOptions& opts);
  StatCounts& operator+=(const StatCounts& o);
  friend bool operator==(const StatCounts&, const StatCounts&) = default;
};

struct BenchStats {
  StatCounts counts;
  /// Fractions in [0,1]; empty when a method needed by the comparison was
  /// not benchmarked.
  std::optional<double> a, b, c, d;
  BenchOptions options;

  friend bool operator==(const BenchStats& x, const BenchStats& y) { return x.counts == y.counts; }
};

BenchStats make_stats(const StatCounts& counts, const BenchOptions& opts);
BenchStats compute_stats(const std::vector<BenchRecord>& records, const BenchOptions& opts);

class VerificationError : public std::runtime_error {
 public:
  VerificationError(std::uint64_t rank, Method m)
      : std::runtime_error("verification failed for rank " + std::to_string(rank) + " (" +
                           std::string(method_name(m)) + ")"),
        rank_(rank) {}
  std::uint64_t rank() const { return rank_; }

 private:
  std::uint64_t rank_;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-function options: the tie-break seed is base seed xor rank, so the
/// result of a function does not depend on how ranks are sharded.
SynthOptions function_options(std::uint64_t rank, const BenchOptions& opts);

/// Synthesizes `f` with one method; no verification.
Circuit synthesize(const Perm& f, Method m, const SynthOptions& so, bool pivot_search = false);

/// Synthesizes one function with every selected method and verifies each
/// circuit. Throws VerificationError on a mismatch.
BenchRecord bench_function(std::uint64_t rank, const BenchOptions& opts);

struct BenchResult {
  std::vector<BenchRecord> records;
  BenchStats stats;
};

/// In-memory run over ranks [begin, end).
BenchResult run_benchmark(const BenchOptions& opts, std::uint64_t begin = 0, std::uint64_t end = kTwoTritFunctions);

/// Rank range [first, second) of shard `index` out of `shards`.
std::pair<std::uint64_t, std::uint64_t> shard_range(unsigned shards, unsigned index,
                                                    std::uint64_t total = kTwoTritFunctions);

struct ShardJob {
  std::filesystem::path out_dir;
  unsigned shards = 1;
  unsigned index = 0;
  /// Ranks per checkpoint.
  std::uint64_t chunk = 4096;
  /// Stop after this many ranks in this call (for tests of resume); 0 = no limit.
  std::uint64_t max_ranks = 0;
  std::uint64_t total = kTwoTritFunctions;
};

std::filesystem::path shard_csv_path(const ShardJob& job);
std::filesystem::path shard_checkpoint_path(const ShardJob& job);

struct ShardProgress {
  std::uint64_t next_rank = 0;
  std::uint64_t end_rank = 0;
  StatCounts counts;
  bool complete() const { return next_rank >= end_rank; }
};

/// Runs (or resumes) one shard, appending rows to the shard CSV and
/// rewriting the checkpoint after every chunk.
ShardProgress run_shard(const ShardJob& job, const BenchOptions& opts);

/// Concatenates completed shard CSVs into records.csv and writes stats.json.
BenchStats merge_shards(const std::filesystem::path& out_dir, unsigned shards, const BenchOptions& opts,
                        std::uint64_t total = kTwoTritFunctions);

/// CSV: rank, perm, per method <m>_cost_raw/<m>_cost_adj/<m>_cost_opt/<m>_gates, verified.
void write_csv_header(std::ostream& os, const std::vector<Method>& methods);
void write_csv_row(std::ostream& os, const BenchRecord& r, const std::vector<Method>& methods);
void export_csv(const std::vector<BenchRecord>& records, const std::vector<Method>& methods,
                const std::filesystem::path& path);

struct CsvImport {
  std::vector<Method> methods;
  std::vector<BenchRecord> records;
};
CsvImport import_csv(const std::filesystem::path& path);

/// Stats and metadata; records are included when `with_records` is set.
void export_json(const std::vector<BenchRecord>& records, const BenchStats& stats,
                 const std::filesystem::path& path, bool with_records = true);

}  // namespace ternrev
