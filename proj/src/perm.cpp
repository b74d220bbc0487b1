#include "ternrev/perm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace ternrev {

namespace {

Point parse_point(std::string_view token) {
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.remove_prefix(1);
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.remove_suffix(1);
  Point value = 0;
  auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
    throw std::invalid_argument("not a point: '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Perm::Perm(std::vector<Point> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (Point p : image_) {
    if (p >= image_.size() || seen[p]) throw std::invalid_argument("image table is not a bijection");
    seen[p] = true;
  }
}

Perm Perm::identity(std::size_t size) {
  std::vector<Point> image(size);
  for (std::size_t i = 0; i < size; ++i) image[i] = static_cast<Point>(i);
  return Perm(std::move(image));
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (image_[i] != i) return false;
  }
  return true;
}

Perm perm_compose(const Perm& p, const Perm& q) {
  if (p.size() != q.size()) throw std::invalid_argument("perm_compose: size mismatch");
  std::vector<Point> image(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) image[i] = q[p[i]];
  return Perm(std::move(image));
}

Perm perm_inverse(const Perm& p) {
  std::vector<Point> image(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) image[p[i]] = static_cast<Point>(i);
  return Perm(std::move(image));
}

Cycle::Cycle(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw std::invalid_argument("a cycle needs at least two points");
  std::vector<Point> sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("repeated point inside a cycle");
  }
}

Cycle Cycle::canonical() const {
  auto it = std::min_element(points_.begin(), points_.end());
  return rotated(static_cast<std::size_t>(it - points_.begin()));
}

Cycle Cycle::rotated(std::size_t start) const {
  if (start >= points_.size()) throw std::out_of_range("cycle rotation out of range");
  std::vector<Point> pts(points_.size());
  std::rotate_copy(points_.begin(), points_.begin() + static_cast<std::ptrdiff_t>(start), points_.end(),
                   pts.begin());
  return Cycle(std::move(pts));
}

Perm perm_from_cycle(const Cycle& cycle, std::size_t size) {
  std::vector<Point> image(size);
  for (std::size_t i = 0; i < size; ++i) image[i] = static_cast<Point>(i);
  const auto& pts = cycle.points();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (pts[j] >= size) throw std::out_of_range("cycle point outside the domain");
    image[pts[j]] = pts[(j + 1) % pts.size()];
  }
  return Perm(std::move(image));
}

Perm perm_from_cycles(std::span<const Cycle> cycles, std::size_t size) {
  Perm result = Perm::identity(size);
  for (const Cycle& c : cycles) result = perm_compose(result, perm_from_cycle(c, size));
  return result;
}

std::string format_perm(const Perm& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(p[i]);
  }
  return out;
}

Perm parse_perm(std::string_view text) {
  std::vector<Point> image;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    image.push_back(parse_point(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return Perm(std::move(image));
}

std::string format_cycle(const Cycle& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.length(); ++i) {
    if (i) out += ' ';
    out += std::to_string(c[i]);
  }
  return out + ")";
}

std::string format_cycles(std::span<const Cycle> cycles) {
  std::string out;
  for (const Cycle& c : cycles) out += format_cycle(c);
  return out;
}

std::vector<Cycle> parse_cycles(std::string_view text) {
  std::vector<Cycle> cycles;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (text[pos] != '(') throw std::invalid_argument("expected '(' in cycle text");
    std::size_t close = text.find(')', pos);
    if (close == std::string_view::npos) throw std::invalid_argument("unterminated cycle");
    std::vector<Point> points;
    std::string_view body = text.substr(pos + 1, close - pos - 1);
    std::size_t i = 0;
    while (i < body.size()) {
      if (std::isspace(static_cast<unsigned char>(body[i])) || body[i] == ',') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < body.size() && !std::isspace(static_cast<unsigned char>(body[j])) && body[j] != ',') ++j;
      points.push_back(parse_point(body.substr(i, j - i)));
      i = j;
    }
    cycles.emplace_back(std::move(points));
    pos = close + 1;
  }
  return cycles;
}

}  // namespace ternrev
