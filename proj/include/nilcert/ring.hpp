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

// Exact arithmetic in the free unital ring Z<X> over a symbol alphabet.
//
// Base symbols are interned by name; schematic symbols are identified by a
// process-wide unique id and stand for universally quantified elements.
// Words are hash-consed so that equality and hashing are pointer operations.
// The storage order of terms is an implementation detail; printed and
// serialized forms re-sort by an explicit SymbolOrder.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace nilcert {

using Integer = mpz_class;

enum class SymbolKind : std::uint8_t { Base, Schematic };

class Symbol {
 public:
  /// Interns a base symbol. Throws std::invalid_argument unless the name
  /// matches [A-Za-z][A-Za-z0-9_]*.
  static Symbol base(std::string_view name);
  /// The schematic symbol with the given uid. Reserves the uid so that
  /// fresh() never hands it out again.
  static Symbol schematic(std::uint32_t uid);
  /// A schematic symbol never seen before in this process.
  static Symbol fresh();

  static bool is_identifier(std::string_view name);

  SymbolKind kind() const { return kind_; }
  bool is_schematic() const { return kind_ == SymbolKind::Schematic; }
  /// Intern index for base symbols, uid for schematic ones.
  std::uint32_t id() const { return id_; }
  /// Identifier for base symbols, "$<uid>" for schematic ones.
  std::string name() const;

  friend bool operator==(Symbol, Symbol) = default;
  friend auto operator<=>(Symbol, Symbol) = default;

 private:
  Symbol(SymbolKind kind, std::uint32_t id) : kind_(kind), id_(id) {}

  SymbolKind kind_;
  std::uint32_t id_;
};

namespace detail {
struct WordRep;
}

/// A monomial: a finite sequence of symbols. The empty word is the unit.
class Word {
 public:
  Word();
  explicit Word(std::span<const Symbol> symbols);
  explicit Word(Symbol s);

  std::span<const Symbol> symbols() const;
  std::size_t degree() const;
  bool is_unit() const { return degree() == 0; }
  std::size_t hash() const;

  Word operator*(const Word& rhs) const;

  friend bool operator==(const Word& a, const Word& b) { return a.rep_ == b.rep_; }
  friend bool storage_less(const Word& a, const Word& b);

 private:
  const detail::WordRep* rep_;
};

/// Internal storage order: degree first, then lexicographic on Symbol.
bool storage_less(const Word& a, const Word& b);

struct WordHash {
  std::size_t operator()(const Word& w) const { return w.hash(); }
};

struct Term {
  Word word;
  Integer coeff;
};

/// Element of Z<X>. Terms are kept sorted with no zero coefficients, so
/// structural equality is ring equality.
class Poly {
 public:
  Poly() = default;
  Poly(long c);  // NOLINT: integers embed as constants
  Poly(const Integer& c);  // NOLINT
  Poly(Symbol s);  // NOLINT
  static Poly monomial(Integer c, Word w);
  /// Collects like terms and drops zeros; input order is irrelevant.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  std::size_t degree() const;
  std::size_t hash() const;
  bool contains(Symbol s) const;
  void collect_symbols(std::set<Symbol>& out) const;
  std::set<Symbol> symbols() const;

  Poly pow(unsigned e) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);

 private:
  std::vector<Term> terms_;
};

struct PolyHash {
  std::size_t operator()(const Poly& p) const { return p.hash(); }
};

/// p*q - q*p
Poly commutator(const Poly& p, const Poly& q);

using Bindings = std::map<Symbol, Poly>;

/// The ring endomorphism sending each bound symbol to its image and fixing
/// every other symbol.
Poly substitute(const Poly& p, const Bindings& bindings);

/// Total order on symbols used when printing and serializing. Symbols listed
/// in `declared` come first in that order; the rest follow, base symbols by
/// name and then schematic symbols by uid.
class SymbolOrder {
 public:
  SymbolOrder() = default;
  explicit SymbolOrder(std::vector<Symbol> declared);

  bool less(Symbol a, Symbol b) const;
  bool less(const Word& a, const Word& b) const;

 private:
  std::map<Symbol, std::size_t> rank_;
};

/// Terms in graded-lexicographic order under `order`, highest degree first.
std::vector<Term> ordered_terms(const Poly& p, const SymbolOrder& order);

}  // namespace nilcert

template <>
struct std::hash<nilcert::Symbol> {
  std::size_t operator()(nilcert::Symbol s) const noexcept {
    return (static_cast<std::size_t>(s.id()) << 1) | static_cast<std::size_t>(s.kind());
  }
};
