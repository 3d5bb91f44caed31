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

#include "nilcert/ring.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace nilcert {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

struct SymbolTable {
  std::mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, std::uint32_t> index;
};

SymbolTable& symbol_table() {
  static SymbolTable table;
  return table;
}

std::atomic<std::uint32_t> next_schematic_uid{0};

}  // namespace

namespace detail {

struct WordRep {
  std::vector<Symbol> symbols;
  std::size_t hash;
};

}  // namespace detail

namespace {

// Append-only; interned words live for the rest of the process.
class WordTable {
 public:
  const detail::WordRep* intern(std::span<const Symbol> symbols) {
    std::size_t h = symbols.size();
    for (Symbol s : symbols) h = mix(h, std::hash<Symbol>{}(s));
    std::lock_guard lock(mu_);
    auto& bucket = buckets_[h];
    for (const detail::WordRep* rep : bucket) {
      if (std::ranges::equal(rep->symbols, symbols)) return rep;
    }
    storage_.push_back(std::make_unique<detail::WordRep>(
        detail::WordRep{std::vector<Symbol>(symbols.begin(), symbols.end()), h}));
    bucket.push_back(storage_.back().get());
    return storage_.back().get();
  }

 private:
  std::mutex mu_;
  std::unordered_map<std::size_t, std::vector<const detail::WordRep*>> buckets_;
  std::vector<std::unique_ptr<detail::WordRep>> storage_;
};

WordTable& word_table() {
  static WordTable table;
  return table;
}

const detail::WordRep* unit_rep() {
  static const detail::WordRep* rep = word_table().intern({});
  return rep;
}

}  // namespace

// ---------------------------------------------------------------------------
// Symbol

bool Symbol::is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name.front())) return false;
  return std::ranges::all_of(name, [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

Symbol Symbol::base(std::string_view name) {
  if (!is_identifier(name)) {
    throw std::invalid_argument("invalid symbol name '" + std::string(name) + "'");
  }
  auto& table = symbol_table();
  std::lock_guard lock(table.mu);
  auto [it, inserted] =
      table.index.try_emplace(std::string(name), static_cast<std::uint32_t>(table.names.size()));
  if (inserted) table.names.emplace_back(name);
  return Symbol(SymbolKind::Base, it->second);
}

Symbol Symbol::schematic(std::uint32_t uid) {
  std::uint32_t cur = next_schematic_uid.load();
  while (cur <= uid && !next_schematic_uid.compare_exchange_weak(cur, uid + 1)) {
  }
  return Symbol(SymbolKind::Schematic, uid);
}

Symbol Symbol::fresh() { return Symbol(SymbolKind::Schematic, next_schematic_uid.fetch_add(1)); }

std::string Symbol::name() const {
  if (is_schematic()) return "$" + std::to_string(id_);
  auto& table = symbol_table();
  std::lock_guard lock(table.mu);
  return table.names[id_];
}

// ---------------------------------------------------------------------------
// Word

Word::Word() : rep_(unit_rep()) {}
Word::Word(std::span<const Symbol> symbols) : rep_(word_table().intern(symbols)) {}
Word::Word(Symbol s) : rep_(word_table().intern(std::span<const Symbol>(&s, 1))) {}

std::span<const Symbol> Word::symbols() const { return rep_->symbols; }
std::size_t Word::degree() const { return rep_->symbols.size(); }
std::size_t Word::hash() const { return rep_->hash; }

Word Word::operator*(const Word& rhs) const {
  if (is_unit()) return rhs;
  if (rhs.is_unit()) return *this;
  thread_local std::vector<Symbol> joined;
  joined.clear();
  joined.insert(joined.end(), rep_->symbols.begin(), rep_->symbols.end());
  joined.insert(joined.end(), rhs.rep_->symbols.begin(), rhs.rep_->symbols.end());
  return Word(joined);
}

bool storage_less(const Word& a, const Word& b) {
  if (a.rep_ == b.rep_) return false;
  const auto& x = a.rep_->symbols;
  const auto& y = b.rep_->symbols;
  if (x.size() != y.size()) return x.size() < y.size();
  return std::ranges::lexicographical_compare(x, y);
}

// ---------------------------------------------------------------------------
// Poly

namespace {

void sort_terms(std::vector<Term>& terms) {
  std::ranges::sort(terms, [](const Term& a, const Term& b) { return storage_less(a.word, b.word); });
}

Poly combine(const Poly& a, const Poly& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  auto i = a.terms().begin();
  auto j = b.terms().begin();
  while (i != a.terms().end() || j != b.terms().end()) {
    if (j == b.terms().end() || (i != a.terms().end() && storage_less(i->word, j->word))) {
      out.push_back(*i++);
    } else if (i == a.terms().end() || storage_less(j->word, i->word)) {
      out.push_back(Term{j->word, sign > 0 ? j->coeff : Integer(-j->coeff)});
      ++j;
    } else {
      Integer c = sign > 0 ? Integer(i->coeff + j->coeff) : Integer(i->coeff - j->coeff);
      if (c != 0) out.push_back(Term{i->word, std::move(c)});
      ++i;
      ++j;
    }
  }
  return Poly::from_terms(std::move(out));
}

}  // namespace

Poly::Poly(long c) : Poly(Integer(c)) {}

Poly::Poly(const Integer& c) {
  if (c != 0) terms_.push_back(Term{Word(), c});
}

Poly::Poly(Symbol s) { terms_.push_back(Term{Word(s), Integer(1)}); }

Poly Poly::monomial(Integer c, Word w) {
  Poly p;
  if (c != 0) p.terms_.push_back(Term{std::move(w), std::move(c)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  sort_terms(terms);
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().word == t.word) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].word.is_unit() && terms_[0].coeff == 1;
}

std::size_t Poly::degree() const { return terms_.empty() ? 0 : terms_.back().word.degree(); }

std::size_t Poly::hash() const {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) {
    h = mix(h, t.word.hash());
    h = mix(h, static_cast<std::size_t>(mpz_get_ui(t.coeff.get_mpz_t())));
    h = mix(h, static_cast<std::size_t>(sgn(t.coeff) + 1));
  }
  return h;
}

bool Poly::contains(Symbol s) const {
  for (const auto& t : terms_) {
    if (std::ranges::find(t.word.symbols(), s) != t.word.symbols().end()) return true;
  }
  return false;
}

void Poly::collect_symbols(std::set<Symbol>& out) const {
  for (const auto& t : terms_) out.insert(t.word.symbols().begin(), t.word.symbols().end());
}

std::set<Symbol> Poly::symbols() const {
  std::set<Symbol> out;
  collect_symbols(out);
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1L);
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Poly& Poly::operator+=(const Poly& rhs) { return *this = combine(*this, rhs, 1); }
Poly& Poly::operator-=(const Poly& rhs) { return *this = combine(*this, rhs, -1); }

Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, 1); }
Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, -1); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::unordered_map<Word, Integer, WordHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) acc[s.word * t.word] += s.coeff * t.coeff;
  }
  Poly p;
  p.terms_.reserve(acc.size());
  for (auto& [w, c] : acc) {
    if (c != 0) p.terms_.push_back(Term{w, std::move(c)});
  }
  sort_terms(p.terms_);
  return p;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].word == b.terms_[i].word) || a.terms_[i].coeff != b.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

Poly commutator(const Poly& p, const Poly& q) { return p * q - q * p; }

Poly substitute(const Poly& p, const Bindings& bindings) {
  if (bindings.empty()) return p;
  Poly out;
  std::vector<Term> untouched;
  for (const auto& t : p.terms()) {
    bool hit = std::ranges::any_of(t.word.symbols(), [&](Symbol s) { return bindings.contains(s); });
    if (!hit) {
      untouched.push_back(t);
      continue;
    }
    Poly image(t.coeff);
    std::vector<Symbol> run;
    auto flush = [&] {
      if (!run.empty()) image = image * Poly::monomial(Integer(1), Word(run));
      run.clear();
    };
    for (Symbol s : t.word.symbols()) {
      auto it = bindings.find(s);
      if (it == bindings.end()) {
        run.push_back(s);
      } else {
        flush();
        image = image * it->second;
      }
    }
    flush();
    out += image;
  }
  return out + Poly::from_terms(std::move(untouched));
}

// ---------------------------------------------------------------------------
// SymbolOrder

SymbolOrder::SymbolOrder(std::vector<Symbol> declared) {
  for (Symbol s : declared) rank_.try_emplace(s, rank_.size());
}

bool SymbolOrder::less(Symbol a, Symbol b) const {
  if (a == b) return false;
  auto ra = rank_.find(a);
  auto rb = rank_.find(b);
  if (ra != rank_.end() && rb != rank_.end()) return ra->second < rb->second;
  if (ra != rank_.end()) return true;
  if (rb != rank_.end()) return false;
  if (a.kind() != b.kind()) return a.kind() == SymbolKind::Base;
  if (a.is_schematic()) return a.id() < b.id();
  return a.name() < b.name();
}

bool SymbolOrder::less(const Word& a, const Word& b) const {
  if (a == b) return false;
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  auto sa = a.symbols();
  auto sb = b.symbols();
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i] != sb[i]) return less(sa[i], sb[i]);
  }
  return false;
}

std::vector<Term> ordered_terms(const Poly& p, const SymbolOrder& order) {
  std::vector<Term> terms = p.terms();
  std::ranges::stable_sort(terms, [&](const Term& a, const Term& b) {
    if (a.word.degree() != b.word.degree()) return a.word.degree() > b.word.degree();
    return order.less(a.word, b.word);
  });
  return terms;
}

}  // namespace nilcert
