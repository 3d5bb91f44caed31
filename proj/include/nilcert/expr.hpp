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

// Surface syntax for ring elements and problem files.
//
//   poly   := term (('+' | '-') term)*
//   term   := ['-'] factor ('*' factor)*
//   factor := atom ('^' nat)*
//   atom   := integer | ident | '$' nat | '(' poly ')' | '[' poly ',' poly ']'
//
// Products need an explicit '*'. `$n` names the schematic symbol with uid n.
// `[p,q]` is the commutator p*q - q*p.

#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nilcert/ring.hpp"

namespace nilcert {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses `src` over the declared base symbols. Positions in errors are
/// 1-based and counted from the start of `src`, offset by `first_line` and
/// `first_column` for expressions embedded in a larger file.
Poly parse_poly(std::string_view src, std::span<const std::string> symbols,
                std::size_t first_line = 1, std::size_t first_column = 1);

/// Deterministic text form that parse_poly reads back to an equal Poly.
std::string print_poly(const Poly& p, const SymbolOrder& order = {});

enum class Setting { Nil, Sqrt };

std::string_view to_string(Setting s);
std::optional<Setting> parse_setting(std::string_view s);

struct ProblemFamily {
  Poly left;
  Poly right;
};

/// A problem as written by hand: `key: value` lines, list values separated by
/// ';'. Keys are setting, symbols, generators, families, claim, and the
/// optional distinguished generators a and b used by the product commands.
struct ProblemFile {
  Setting setting = Setting::Nil;
  std::vector<std::string> symbols;
  std::vector<Poly> generators;
  std::vector<ProblemFamily> families;
  std::optional<Poly> claim;
  std::optional<Poly> a;
  std::optional<Poly> b;

  SymbolOrder symbol_order() const;
};

ProblemFile parse_problem(std::string_view src);

/// Splits on `sep` at bracket depth zero, trimming whitespace around items.
/// Empty input yields an empty list.
std::vector<std::string> split_top_level(std::string_view src, char sep);

}  // namespace nilcert
