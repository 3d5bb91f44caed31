// Copyright 2026 The nilcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nilcert/expr.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <sstream>

namespace nilcert {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

constexpr unsigned kMaxExponent = 4096;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c) || c == '_'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

class PolyParser {
 public:
  PolyParser(std::string_view src, std::span<const std::string> symbols, std::size_t line,
             std::size_t column)
      : src_(src), symbols_(symbols), line_(line), column_(column) {}

  Poly parse() {
    skip_space();
    if (at_end()) fail("expected an expression");
    Poly p = poly();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return p;
  }

 private:
  Poly poly() {
    Poly acc = term();
    for (;;) {
      skip_space();
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    skip_space();
    bool negative = accept('-');
    Poly acc = factor();
    for (;;) {
      skip_space();
      if (!accept('*')) break;
      acc = acc * factor();
    }
    return negative ? -acc : acc;
  }

  Poly factor() {
    Poly base = atom();
    for (;;) {
      skip_space();
      if (!accept('^')) return base;
      skip_space();
      std::size_t line = line_, column = column_;
      std::string digits = take_digits();
      if (digits.empty()) fail("expected a natural-number exponent");
      if (digits.size() > 6 || std::stoul(digits) > kMaxExponent) {
        throw ParseError("exponent too large", line, column);
      }
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
  }

  Poly atom() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    char c = peek();
    if (is_digit(c)) return Poly(Integer(take_digits()));
    if (c == '$') {
      std::size_t line = line_, column = column_;
      advance();
      std::string digits = take_digits();
      if (digits.empty()) fail("expected a schematic uid after '$'");
      if (digits.size() > 9) throw ParseError("schematic uid too large", line, column);
      return Poly(Symbol::schematic(static_cast<std::uint32_t>(std::stoul(digits))));
    }
    if (is_ident_start(c)) {
      std::size_t line = line_, column = column_;
      std::string name;
      while (!at_end() && is_ident_char(peek())) {
        name += peek();
        advance();
      }
      if (std::ranges::find(symbols_, name) == symbols_.end()) {
        throw ParseError("undeclared identifier '" + name + "'", line, column);
      }
      return Poly(Symbol::base(name));
    }
    if (accept('(')) {
      Poly inner = poly();
      skip_space();
      expect(')');
      return inner;
    }
    if (accept('[')) {
      Poly lhs = poly();
      skip_space();
      expect(',');
      Poly rhs = poly();
      skip_space();
      expect(']');
      return commutator(lhs, rhs);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string take_digits() {
    std::string digits;
    while (!at_end() && is_digit(peek())) {
      digits += peek();
      advance();
    }
    return digits;
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && is_space(peek())) advance();
  }

  bool accept(char c) {
    if (at_end() || peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail(std::string("expected '") + c + "'" +
           (at_end() ? std::string(" at end of input") : std::string(" before '") + peek() + "'"));
    }
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, column_); }

  std::string_view src_;
  std::span<const std::string> symbols_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_;
};

void print_word(std::ostringstream& out, const Word& w) {
  auto syms = w.symbols();
  for (std::size_t i = 0; i < syms.size();) {
    std::size_t run = 1;
    while (i + run < syms.size() && syms[i + run] == syms[i]) ++run;
    if (i > 0) out << '*';
    out << syms[i].name();
    if (run > 1) out << '^' << run;
    i += run;
  }
}

}  // namespace

Poly parse_poly(std::string_view src, std::span<const std::string> symbols, std::size_t first_line,
                std::size_t first_column) {
  return PolyParser(src, symbols, first_line, first_column).parse();
}

std::string print_poly(const Poly& p, const SymbolOrder& order) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const Term& t : ordered_terms(p, order)) {
    bool negative = t.coeff < 0;
    Integer mag = abs(t.coeff);
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (t.word.is_unit()) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << '*';
    print_word(out, t.word);
  }
  return out.str();
}

std::string_view to_string(Setting s) { return s == Setting::Nil ? "nil" : "sqrt"; }

std::optional<Setting> parse_setting(std::string_view s) {
  if (s == "nil") return Setting::Nil;
  if (s == "sqrt") return Setting::Sqrt;
  return std::nullopt;
}

SymbolOrder ProblemFile::symbol_order() const {
  std::vector<Symbol> declared;
  for (const auto& name : symbols) declared.push_back(Symbol::base(name));
  return SymbolOrder(std::move(declared));
}

std::vector<std::string> split_top_level(std::string_view src, char sep) {
  std::vector<std::string> out;
  if (trim(src).empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= src.size(); ++i) {
    if (i == src.size() || (src[i] == sep && depth == 0)) {
      out.emplace_back(trim(src.substr(start, i - start)));
      start = i + 1;
      continue;
    }
    if (src[i] == '(' || src[i] == '[') ++depth;
    if (src[i] == ')' || src[i] == ']') --depth;
  }
  return out;
}

namespace {

struct Item {
  std::string text;
  std::size_t column;  // 1-based column of the item's first character
};

// Like split_top_level but keeps track of where each item starts.
std::vector<Item> split_items(std::string_view value, std::size_t value_column, char sep) {
  std::vector<Item> out;
  if (trim(value).empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= value.size(); ++i) {
    if (i == value.size() || (value[i] == sep && depth == 0)) {
      std::string_view raw = value.substr(start, i - start);
      std::size_t lead = 0;
      while (lead < raw.size() && is_space(raw[lead])) ++lead;
      out.push_back(Item{std::string(trim(raw)), value_column + start + lead});
      start = i + 1;
      continue;
    }
    if (value[i] == '(' || value[i] == '[') ++depth;
    if (value[i] == ')' || value[i] == ']') --depth;
  }
  return out;
}

}  // namespace

ProblemFile parse_problem(std::string_view src) {
  struct Entry {
    std::string value;
    std::size_t line;
    std::size_t column;
  };
  static const std::vector<std::string> kKeys = {"setting", "symbols", "generators", "families",
                                                 "claim",   "a",       "b"};
  std::map<std::string, Entry> entries;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= src.size()) {
    std::size_t end = src.find('\n', pos);
    if (end == std::string_view::npos) end = src.size();
    std::string_view line = src.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') {
      if (end == src.size()) break;
      continue;
    }
    std::size_t colon = line.find(':');
    std::size_t key_col = line.find_first_not_of(" \t") + 1;
    if (colon == std::string_view::npos) throw ParseError("expected 'key: value'", line_no, key_col);
    std::string key(trim(line.substr(0, colon)));
    if (std::ranges::find(kKeys, key) == kKeys.end()) {
      throw ParseError("unknown key '" + key + "'", line_no, key_col);
    }
    if (entries.contains(key)) throw ParseError("duplicate key '" + key + "'", line_no, key_col);
    std::string_view value = line.substr(colon + 1);
    std::size_t lead = 0;
    while (lead < value.size() && is_space(value[lead])) ++lead;
    entries.emplace(key, Entry{std::string(trim(value)), line_no, colon + 2 + lead});
    if (end == src.size()) break;
  }

  ProblemFile problem;
  auto require = [&](const std::string& key) -> const Entry& {
    auto it = entries.find(key);
    if (it == entries.end()) throw ParseError("missing required key '" + key + "'", line_no, 1);
    return it->second;
  };

  const Entry& setting = require("setting");
  auto parsed_setting = parse_setting(setting.value);
  if (!parsed_setting) {
    throw ParseError("setting must be 'nil' or 'sqrt'", setting.line, setting.column);
  }
  problem.setting = *parsed_setting;

  const Entry& symbols = require("symbols");
  for (std::string_view raw : split_top_level(symbols.value, ';')) {
    for (const std::string& name : split_top_level(raw, ',')) {
      if (!Symbol::is_identifier(name)) {
        throw ParseError("invalid symbol name '" + name + "'", symbols.line, symbols.column);
      }
      if (std::ranges::find(problem.symbols, name) != problem.symbols.end()) {
        throw ParseError("symbol '" + name + "' declared twice", symbols.line, symbols.column);
      }
      problem.symbols.push_back(name);
    }
  }

  // Problems describe generator sets, which must be free of schematic symbols.
  auto expression = [&](const std::string& text, std::size_t line, std::size_t column) {
    if (text.empty()) throw ParseError("empty expression", line, column);
    Poly p = parse_poly(text, problem.symbols, line, column);
    for (Symbol s : p.symbols()) {
      if (s.is_schematic()) {
        throw ParseError("schematic symbol " + s.name() + " not allowed here", line, column);
      }
    }
    return p;
  };

  if (auto it = entries.find("generators"); it != entries.end()) {
    const Entry& e = it->second;
    for (const Item& item : split_items(e.value, e.column, ';')) {
      problem.generators.push_back(expression(item.text, e.line, item.column));
    }
  }

  if (auto it = entries.find("families"); it != entries.end()) {
    const Entry& e = it->second;
    auto items = split_items(e.value, e.column, ';');
    if (!items.empty() && problem.setting != Setting::Sqrt) {
      throw ParseError("families are only allowed in the sqrt setting", e.line, e.column);
    }
    for (const Item& item : items) {
      std::string_view text = item.text;
      std::size_t column = item.column;
      if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
        auto inner = split_top_level(text.substr(1, text.size() - 2), ',');
        if (inner.size() == 2) {
          text = text.substr(1, text.size() - 2);
          column += 1;
        }
      }
      auto sides = split_items(text, column, ',');
      if (sides.size() != 2) {
        throw ParseError("family must be written 'left, right'", e.line, item.column);
      }
      problem.families.push_back(ProblemFamily{expression(sides[0].text, e.line, sides[0].column),
                                               expression(sides[1].text, e.line, sides[1].column)});
    }
  }

  for (const char* key : {"claim", "a", "b"}) {
    auto it = entries.find(key);
    if (it == entries.end()) continue;
    const Entry& e = it->second;
    Poly p = parse_poly(e.value, problem.symbols, e.line, e.column);
    if (std::string_view(key) == "claim") {
      problem.claim = std::move(p);
    } else if (std::string_view(key) == "a") {
      problem.a = expression(e.value, e.line, e.column);
    } else {
      problem.b = expression(e.value, e.line, e.column);
    }
  }
  return problem;
}

}  // namespace nilcert
