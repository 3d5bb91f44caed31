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

// Membership witnesses for the reduced ideal Nil U and the semiprime ideal
// sqrt U generated by U.
//
// A witness is a DAG of constructor applications:
//
//   intro        x in U                       =>  x in I
//   intro_family (left, right) a family of U  =>  left*r*right in I
//   zero                                      =>  0 in I
//   add          x in I, y in I               =>  x + y in I
//   mult         x in I                       =>  z*x*w in I
//   red          x*x in I                     =>  x in I          (nil only)
//   semiprime    x*t*x in I, t fresh          =>  x in I          (sqrt only)
//
// Red and semiprime store their conclusion explicitly. The semiprime premise
// is a single witness over the ring extended by the schematic symbol t,
// standing for "for all t".
//
// Certificate is the raw exchange form and may be arbitrarily broken; the
// checker decides whether it is valid. WitnessDag is only ever produced by
// DagBuilder and is structurally sound (refs resolve, acyclic), with the
// conclusion of each node cached.

#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "nilcert/expr.hpp"
#include "nilcert/ring.hpp"

namespace nilcert {

inline constexpr std::size_t kDefaultMaxNodes = 1'000'000;

using NodeId = std::uint32_t;

struct Family {
  Poly left;
  Poly right;
  friend bool operator==(const Family&, const Family&) = default;
};

struct GeneratorSet {
  std::vector<Poly> elements;
  std::vector<Family> families;

  bool mentions(Symbol s) const;
  friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;
};

namespace node {

struct Intro {
  std::uint32_t index;
  friend bool operator==(const Intro&, const Intro&) = default;
};

struct IntroFamily {
  std::uint32_t index;
  Poly instance;
  friend bool operator==(const IntroFamily&, const IntroFamily&) = default;
};

struct Zero {
  friend bool operator==(const Zero&, const Zero&) = default;
};

struct Add {
  NodeId left;
  NodeId right;
  friend bool operator==(const Add&, const Add&) = default;
};

struct Mult {
  Poly left;
  NodeId inner;
  Poly right;
  friend bool operator==(const Mult&, const Mult&) = default;
};

struct Red {
  NodeId premise;
  Poly conclusion;
  friend bool operator==(const Red&, const Red&) = default;
};

struct Semiprime {
  Symbol bound;
  NodeId premise;
  Poly conclusion;
  friend bool operator==(const Semiprime&, const Semiprime&) = default;
};

}  // namespace node

using Node = std::variant<node::Intro, node::IntroFamily, node::Zero, node::Add, node::Mult,
                          node::Red, node::Semiprime>;

/// Name used for the constructor in certificates and logs ("intro", "red", ...).
std::string_view op_name(const Node& n);

/// Ids of the witnesses a node depends on.
std::vector<NodeId> children(const Node& n);

struct Certificate {
  int version = 1;
  Setting setting = Setting::Nil;
  /// Declared base symbols; fixes the serialized term order.
  std::vector<std::string> symbols;
  GeneratorSet generators;
  Poly claim;
  std::vector<Node> nodes;
  NodeId root = 0;

  SymbolOrder symbol_order() const;
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::size_t limit);
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

class WitnessDag {
 public:
  Setting setting() const { return setting_; }
  const GeneratorSet& generators() const { return generators_; }
  std::span<const Node> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  NodeId root() const { return root_; }

  /// Throws std::out_of_range for a dangling id.
  const Node& node(NodeId id) const;
  const Poly& conclusion(NodeId id) const;
  const Poly& conclusion() const { return conclusion(root_); }

 private:
  friend class DagBuilder;

  Setting setting_ = Setting::Nil;
  GeneratorSet generators_;
  std::vector<Node> nodes_;
  std::vector<Poly> conclusions_;
  NodeId root_ = 0;
};

/// The conclusion a node establishes.
const Poly& conclusion_of(const WitnessDag& dag, NodeId id);

/// Append-only arena that hash-conses nodes: pushing a node equal to an
/// existing one returns the existing id. References returned by node() and
/// conclusion() stay valid while the builder grows.
class DagBuilder {
 public:
  DagBuilder(Setting setting, GeneratorSet generators, std::size_t max_nodes = kDefaultMaxNodes);

  /// Copies `dag` in, returning the id of its root. The setting and
  /// generators must match this builder's.
  NodeId import(const WitnessDag& dag);

  NodeId intro(std::uint32_t index);
  NodeId intro_family(std::uint32_t index, Poly instance);
  NodeId zero();
  NodeId add(NodeId left, NodeId right);
  NodeId mult(Poly left, NodeId inner, Poly right);
  NodeId red(NodeId premise, Poly conclusion);
  NodeId semiprime(Symbol bound, NodeId premise, Poly conclusion);
  NodeId push(Node n);

  Setting setting() const { return setting_; }
  const GeneratorSet& generators() const { return generators_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t max_nodes() const { return max_nodes_; }
  const Node& node(NodeId id) const;
  const Poly& conclusion(NodeId id) const;

  /// Applies `bindings` to every Poly reachable from `id`, renaming semiprime
  /// bound symbols that would capture a symbol of a bound value.
  NodeId substitute(NodeId id, const Bindings& bindings);

  /// The sub-DAG reachable from `root`, renumbered in dependency order.
  WitnessDag finish(NodeId root) const;

 private:
  Poly compute_conclusion(const Node& n) const;
  void check_ref(NodeId id) const;

  Setting setting_;
  GeneratorSet generators_;
  std::size_t max_nodes_;
  std::deque<Node> nodes_;
  std::deque<Poly> conclusions_;
  std::unordered_map<std::size_t, std::vector<NodeId>> index_;
};

/// Replaces the schematic symbol `sym` by `value` throughout the DAG,
/// avoiding capture by semiprime binders. conclusion() of the result is
/// substitute(conclusion(), {sym -> value}).
WitnessDag substitute_schematic(const WitnessDag& dag, Symbol sym, const Poly& value);

Certificate to_certificate(const WitnessDag& dag, std::vector<std::string> symbols);

/// Rebuilds a WitnessDag rooted at the certificate's root. Throws
/// std::invalid_argument when references dangle or form a cycle; does not
/// check constructor side conditions (that is check_certificate's job).
WitnessDag to_witness(const Certificate& cert, std::size_t max_nodes = kDefaultMaxNodes);

}  // namespace nilcert
