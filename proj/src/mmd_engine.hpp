#pragma once
// Internal two-line fast path shared by the synthesizers and the BFS oracle.

#include <array>
#include <cstdint>
#include <vector>

#include "ternrev/circuit.hpp"

namespace ternrev::detail {

inline constexpr int kPoints = 9;
using Table = std::array<std::uint8_t, kPoints>;

struct LibGate {
  Gate gate;
  Table image;
  Table inverse;
  std::uint8_t inverse_index;
  /// Smallest point the gate moves; the gate fixes every row below it.
  std::uint8_t first_moved;
};

/// The 40-gate elementary library with precomputed image tables.
const std::vector<LibGate>& library2();

inline constexpr int hamming(int a, int b) { return (a / 3 != b / 3) + (a % 3 != b % 3); }

inline int table_distance(const Table& g) {
  int d = 0;
  for (int x = 0; x < kPoints; ++x) d += hamming(g[x], x);
  return d;
}

Table to_table(const Perm& p);
Perm to_perm(const Table& t);

}  // namespace ternrev::detail
