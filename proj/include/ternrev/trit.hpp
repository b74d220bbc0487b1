#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace ternrev {

/// A ternary digit. Construction outside {0,1,2} throws.
class Trit {
 public:
  constexpr Trit() = default;
  constexpr explicit Trit(int v) : value_(static_cast<std::uint8_t>(v)) {
    if (v < 0 || v > 2) throw std::out_of_range("trit value must be 0, 1 or 2");
  }

  constexpr int value() const { return value_; }
  constexpr friend bool operator==(Trit, Trit) = default;
  constexpr friend auto operator<=>(Trit, Trit) = default;

 private:
  std::uint8_t value_ = 0;
};

/// The six permutations of {0,1,2}. Together they form the group S3 with I
/// as the neutral element. Only the first five are realized as gates.
enum class BaseGate : std::uint8_t { N, P01, P12, X, XT, I };

inline constexpr std::array<BaseGate, 6> kAllBases = {BaseGate::N,  BaseGate::P01, BaseGate::P12,
                                                      BaseGate::X,  BaseGate::XT,  BaseGate::I};
inline constexpr std::array<BaseGate, 5> kGateBases = {BaseGate::N, BaseGate::P01, BaseGate::P12,
                                                       BaseGate::X, BaseGate::XT};

namespace detail {
// Image table of each base over {0,1,2}, indexed by the enum value.
inline constexpr std::uint8_t kBaseImage[6][3] = {
    {2, 1, 0},  // N   : 2t+2
    {1, 0, 2},  // P01 : 2t+1
    {0, 2, 1},  // P12 : 2t
    {2, 0, 1},  // X   : t+2
    {1, 2, 0},  // XT  : t+1
    {0, 1, 2},  // I
};
}  // namespace detail

constexpr int base_apply(BaseGate g, int t) { return detail::kBaseImage[static_cast<int>(g)][t]; }
constexpr Trit base_apply(BaseGate g, Trit t) { return Trit(base_apply(g, t.value())); }

/// The base whose image table matches `image`, if any.
constexpr std::optional<BaseGate> base_from_image(int i0, int i1, int i2) {
  for (BaseGate g : kAllBases) {
    if (base_apply(g, 0) == i0 && base_apply(g, 1) == i1 && base_apply(g, 2) == i2) return g;
  }
  return std::nullopt;
}

/// `a` is applied first, then `b`.
constexpr BaseGate base_compose(BaseGate a, BaseGate b) {
  return *base_from_image(base_apply(b, base_apply(a, 0)), base_apply(b, base_apply(a, 1)),
                          base_apply(b, base_apply(a, 2)));
}

constexpr BaseGate base_inverse(BaseGate g) {
  switch (g) {
    case BaseGate::X: return BaseGate::XT;
    case BaseGate::XT: return BaseGate::X;
    default: return g;
  }
}

std::string_view base_name(BaseGate g);
std::optional<BaseGate> parse_base(std::string_view s);

/// 3^n for small n.
constexpr std::size_t pow3(int n) {
  std::size_t r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}

/// A fixed-length trit vector assigning a value to every circuit line.
/// Digit 0 is the top line and is the most significant in the index encoding,
/// so for two lines the word (x,y) has index 3x+y.
class Word {
 public:
  explicit Word(std::vector<Trit> digits);
  Word(std::initializer_list<int> digits);

  std::size_t lines() const { return digits_.size(); }
  Trit operator[](std::size_t line) const { return digits_[line]; }
  const std::vector<Trit>& digits() const { return digits_; }
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Trit> digits_;
};

std::size_t word_index(const Word& w);
Word index_word(std::size_t index, int lines);

/// Trit of `line` inside the positional encoding of `index` on `lines` lines.
constexpr int digit_of(std::size_t index, int line, int lines) {
  for (int l = lines - 1; l > line; --l) index /= 3;
  return static_cast<int>(index % 3);
}

}  // namespace ternrev
