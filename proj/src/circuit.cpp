#include "ternrev/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace ternrev {

Gate::Gate(BaseGate base, int target, std::vector<Control> controls)
    : base_(base), target_(target), controls_(std::move(controls)) {
  if (base_ == BaseGate::I) throw std::invalid_argument("identity base is not a gate");
  if (target_ < 0) throw std::invalid_argument("negative target line");
  std::sort(controls_.begin(), controls_.end(), [](const Control& a, const Control& b) { return a.line < b.line; });
  for (std::size_t i = 0; i < controls_.size(); ++i) {
    if (controls_[i].line < 0) throw std::invalid_argument("negative control line");
    if (controls_[i].line == target_) throw std::invalid_argument("control on the target line");
    if (i > 0 && controls_[i].line == controls_[i - 1].line) throw std::invalid_argument("duplicate control line");
  }
}

int Gate::max_line() const {
  int m = target_;
  for (const Control& c : controls_) m = std::max(m, c.line);
  return m;
}

bool Gate::active_on(std::size_t index, int lines) const {
  for (const Control& c : controls_) {
    if (digit_of(index, c.line, lines) != c.value.value()) return false;
  }
  return true;
}

Circuit::Circuit(int lines) : lines_(lines) {
  if (lines_ < 2) throw std::invalid_argument("a circuit needs at least two lines");
}

Circuit::Circuit(int lines, std::vector<Gate> gates) : Circuit(lines) {
  gates_.reserve(gates.size());
  for (Gate& g : gates) push_back(std::move(g));
}

void Circuit::push_back(Gate g) {
  if (g.max_line() >= lines_) throw std::invalid_argument("gate line outside the circuit");
  gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.lines_ != lines_) throw std::invalid_argument("appending circuits of different widths");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

Perm gate_semantics(const Gate& g, int lines) {
  const std::size_t size = pow3(lines);
  std::size_t place = pow3(lines - 1 - g.target());
  std::vector<Point> image(size);
  for (std::size_t i = 0; i < size; ++i) {
    image[i] = static_cast<Point>(i);
    if (!g.active_on(i, lines)) continue;
    const int t = digit_of(i, g.target(), lines);
    const int nt = base_apply(g.base(), t);
    image[i] = static_cast<Point>(i - static_cast<std::size_t>(t) * place + static_cast<std::size_t>(nt) * place);
  }
  return Perm(std::move(image));
}

Perm simulate(const Circuit& c) {
  Perm p = Perm::identity(pow3(c.lines()));
  for (const Gate& g : c.gates()) p = perm_compose(p, gate_semantics(g, c.lines()));
  return p;
}

int gate_cost(const Gate& g, const CostModel& m) {
  const auto& ctrls = g.controls();
  if (ctrls.empty()) return m.simple;
  if (ctrls.size() == 1) return ctrls[0].value.value() == 2 ? m.ctrl2 : m.ctrl01;
  if (!m.allow_multi_control) throw CostError("multi-control gate needs the extended cost model");
  int cost = m.simple;
  for (const Control& c : ctrls) cost += c.value.value() == 2 ? m.ctrl2 : m.ctrl01;
  return cost;
}

int shared_shift_pairs(const Circuit& c) {
  int pairs = 0;
  const auto& gs = c.gates();
  for (std::size_t i = 1; i < gs.size(); ++i) {
    for (const Control& a : gs[i - 1].controls()) {
      for (const Control& b : gs[i].controls()) {
        if (a.line == b.line && a.value.value() + b.value.value() == 1) ++pairs;
      }
    }
  }
  return pairs;
}

int circuit_cost(const Circuit& c, const CostModel& m, CostMode mode) {
  int cost = 0;
  for (const Gate& g : c.gates()) cost += gate_cost(g, m);
  if (mode == CostMode::adjusted) cost -= shared_shift_pairs(c);
  return cost;
}

Circuit circuit_inverse(const Circuit& c) {
  Circuit out(c.lines());
  for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) out.push_back(it->inverse());
  return out;
}

std::string line_name(int line, int lines) {
  if (lines == 2) return line == 0 ? "x" : "y";
  return "l" + std::to_string(line);
}

std::string format_gate(const Gate& g, int lines) {
  std::string out(base_name(g.base()));
  out += ' ';
  out += line_name(g.target(), lines);
  if (!g.is_simple()) {
    out += " @";
    for (const Control& c : g.controls()) {
      out += ' ';
      out += line_name(c.line, lines);
      out += '=';
      out += std::to_string(c.value.value());
    }
  }
  return out;
}

std::string format_circuit(const Circuit& c) {
  std::string out;
  if (c.lines() != 2) out += "# lines: " + std::to_string(c.lines()) + "\n";
  for (const Gate& g : c.gates()) {
    out += format_gate(g, c.lines());
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

struct RawControl {
  std::string_view line;
  int value;
};

struct RawGate {
  std::size_t line_number;
  BaseGate base;
  std::string_view target;
  std::vector<RawControl> controls;
};

// -1 when `name` is not a line name of either style.
int line_from_name(std::string_view name, bool xy) {
  if (xy) {
    if (name == "x") return 0;
    if (name == "y") return 1;
    return -1;
  }
  if (name.size() < 2 || name[0] != 'l') return -1;
  int v = -1;
  auto [end, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), v);
  if (ec != std::errc() || end != name.data() + name.size() || v < 0) return -1;
  return v;
}

}  // namespace

Circuit parse_circuit(std::string_view text, std::optional<int> lines) {
  std::vector<RawGate> raw;
  std::optional<int> header_lines;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_number;

    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      std::string_view comment = line.substr(hash + 1);
      auto words = split_ws(comment);
      if (words.size() == 2 && words[0] == "lines:") {
        int n = 0;
        auto [end, ec] = std::from_chars(words[1].data(), words[1].data() + words[1].size(), n);
        if (ec != std::errc() || end != words[1].data() + words[1].size() || n < 2) {
          throw ParseError(line_number, "bad line count header");
        }
        header_lines = n;
      }
      line = line.substr(0, hash);
    }
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    RawGate g{line_number, BaseGate::I, {}, {}};
    auto base = parse_base(tokens[0]);
    if (!base || *base == BaseGate::I) throw ParseError(line_number, "unknown gate '" + std::string(tokens[0]) + "'");
    g.base = *base;
    if (tokens.size() < 2) throw ParseError(line_number, "missing target line");
    g.target = tokens[1];
    if (tokens.size() > 2) {
      if (tokens[2] != "@") throw ParseError(line_number, "expected '@' before controls");
      if (tokens.size() == 3) throw ParseError(line_number, "missing control after '@'");
      for (std::size_t k = 3; k < tokens.size(); ++k) {
        std::string_view tok = tokens[k];
        auto eq = tok.find('=');
        if (eq == std::string_view::npos || eq + 2 != tok.size() || tok[eq + 1] < '0' || tok[eq + 1] > '2') {
          throw ParseError(line_number, "bad control '" + std::string(tok) + "'");
        }
        g.controls.push_back({tok.substr(0, eq), tok[eq + 1] - '0'});
      }
    }
    raw.push_back(std::move(g));
  }

  bool xy = false;
  bool numbered = false;
  int max_named = 1;
  auto classify = [&](std::string_view name, std::size_t ln) {
    if (line_from_name(name, true) >= 0) {
      xy = true;
    } else if (int l = line_from_name(name, false); l >= 0) {
      numbered = true;
      max_named = std::max(max_named, l);
    } else {
      throw ParseError(ln, "unknown line name '" + std::string(name) + "'");
    }
  };
  for (const RawGate& g : raw) {
    classify(g.target, g.line_number);
    for (const RawControl& c : g.controls) classify(c.line, g.line_number);
  }
  if (xy && numbered) throw ParseError(1, "mixed x/y and l<k> line names");

  int n = lines.value_or(header_lines.value_or(xy ? 2 : max_named + 1));
  if (xy && n != 2) throw ParseError(1, "x/y line names require a two-line circuit");

  Circuit c(n);
  for (const RawGate& g : raw) {
    std::vector<Control> ctrls;
    for (const RawControl& rc : g.controls) ctrls.push_back({line_from_name(rc.line, xy), Trit(rc.value)});
    try {
      c.push_back(Gate(g.base, line_from_name(g.target, xy), std::move(ctrls)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(g.line_number, e.what());
    }
  }
  return c;
}

namespace {

std::string repeat_rule(std::size_t k) {
  std::string out;
  for (std::size_t i = 0; i < k; ++i) out += "─";
  return out;
}

}  // namespace

std::string draw_circuit(const Circuit& c) {
  const int n = c.lines();
  std::vector<std::string> rows(static_cast<std::size_t>(n));
  std::size_t label_width = 0;
  for (int l = 0; l < n; ++l) label_width = std::max(label_width, line_name(l, n).size());
  for (int l = 0; l < n; ++l) {
    std::string name = line_name(l, n);
    rows[static_cast<std::size_t>(l)] = name + std::string(label_width - name.size(), ' ') + " ─";
  }
  for (const Gate& g : c.gates()) {
    for (int l = 0; l < n; ++l) {
      std::string cell = "──────";
      if (l == g.target()) {
        std::string sym = "[" + std::string(base_name(g.base())) + "]";
        cell = sym + repeat_rule(6 - sym.size());
      } else {
        for (const Control& ctl : g.controls()) {
          if (ctl.line != l) continue;
          static const char* dots[3] = {"○", "◐", "●"};
          cell = std::string("──") + dots[ctl.value.value()] + "───";
        }
      }
      rows[static_cast<std::size_t>(l)] += cell;
    }
  }
  std::ostringstream os;
  for (auto& r : rows) os << r << "─\n";
  return os.str();
}

}  // namespace ternrev
