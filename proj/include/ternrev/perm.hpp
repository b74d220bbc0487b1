#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ternrev {

using Point = std::uint32_t;

/// A bijection on {0..size-1} stored as a dense image table:
/// image[i] is where input i is sent.
class Perm {
 public:
  Perm() = default;
  /// Throws std::invalid_argument unless `image` is a bijection.
  explicit Perm(std::vector<Point> image);

  static Perm identity(std::size_t size);

  std::size_t size() const { return image_.size(); }
  Point operator[](std::size_t i) const { return image_[i]; }
  const std::vector<Point>& image() const { return image_; }
  bool is_identity() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<Point> image_;
};

/// result(i) = q(p(i)); `p` is applied first.
Perm perm_compose(const Perm& p, const Perm& q);
Perm perm_inverse(const Perm& p);

/// A cyclic permutation (a1 a2 ... ak): a1 -> a2 -> ... -> ak -> a1.
class Cycle {
 public:
  /// Throws on fewer than two points or a repeated point.
  explicit Cycle(std::vector<Point> points);
  Cycle(std::initializer_list<Point> points) : Cycle(std::vector<Point>(points)) {}

  std::size_t length() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  Point operator[](std::size_t i) const { return points_[i]; }

  /// Same cycle rotated to start at its minimum point.
  Cycle canonical() const;
  /// Same cycle rotated to start at points()[start].
  Cycle rotated(std::size_t start) const;

  /// Exact sequence equality; (0 4 8) and (4 8 0) differ here.
  friend bool operator==(const Cycle&, const Cycle&) = default;

 private:
  std::vector<Point> points_;
};

/// Composes the cycles left to right over {0..size-1}. Disjoint lists give
/// the usual cycle notation; overlapping lists give the left-first product.
Perm perm_from_cycles(std::span<const Cycle> cycles, std::size_t size);
Perm perm_from_cycle(const Cycle& cycle, std::size_t size);

/// "4,3,7,5,8,1,2,6,0"
std::string format_perm(const Perm& p);
Perm parse_perm(std::string_view text);

/// "(0 4 8)(1 3 5)(2 7 6)"
std::string format_cycle(const Cycle& c);
std::string format_cycles(std::span<const Cycle> cycles);
std::vector<Cycle> parse_cycles(std::string_view text);

}  // namespace ternrev
