#include "ternrev/trit.hpp"

#include <string>

namespace ternrev {

std::string_view base_name(BaseGate g) {
  switch (g) {
    case BaseGate::N: return "N";
    case BaseGate::P01: return "P01";
    case BaseGate::P12: return "P12";
    case BaseGate::X: return "X";
    case BaseGate::XT: return "XT";
    case BaseGate::I: return "I";
  }
  return "?";
}

std::optional<BaseGate> parse_base(std::string_view s) {
  for (BaseGate g : kAllBases) {
    if (base_name(g) == s) return g;
  }
  return std::nullopt;
}

Word::Word(std::vector<Trit> digits) : digits_(std::move(digits)) {
  if (digits_.empty()) throw std::invalid_argument("word must have at least one digit");
}

Word::Word(std::initializer_list<int> digits) {
  digits_.reserve(digits.size());
  for (int d : digits) digits_.emplace_back(d);
  if (digits_.empty()) throw std::invalid_argument("word must have at least one digit");
}

std::size_t word_index(const Word& w) {
  std::size_t index = 0;
  for (Trit t : w.digits()) index = index * 3 + static_cast<std::size_t>(t.value());
  return index;
}

Word index_word(std::size_t index, int lines) {
  if (lines < 1) throw std::invalid_argument("word needs at least one line");
  if (index >= pow3(lines)) {
    throw std::out_of_range("index " + std::to_string(index) + " out of range for " +
                            std::to_string(lines) + " lines");
  }
  std::vector<Trit> digits(static_cast<std::size_t>(lines));
  for (int l = lines - 1; l >= 0; --l) {
    digits[static_cast<std::size_t>(l)] = Trit(static_cast<int>(index % 3));
    index /= 3;
  }
  return Word(std::move(digits));
}

}  // namespace ternrev
