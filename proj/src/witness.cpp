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

#include "nilcert/witness.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace nilcert {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t node_hash(const Node& n) {
  std::size_t h = n.index();
  std::visit(overloaded{
                 [&](const node::Intro& x) { h = mix(h, x.index); },
                 [&](const node::IntroFamily& x) { h = mix(mix(h, x.index), x.instance.hash()); },
                 [&](const node::Zero&) {},
                 [&](const node::Add& x) { h = mix(mix(h, x.left), x.right); },
                 [&](const node::Mult& x) {
                   h = mix(mix(mix(h, x.left.hash()), x.inner), x.right.hash());
                 },
                 [&](const node::Red& x) { h = mix(mix(h, x.premise), x.conclusion.hash()); },
                 [&](const node::Semiprime& x) {
                   h = mix(mix(mix(h, std::hash<Symbol>{}(x.bound)), x.premise), x.conclusion.hash());
                 },
             },
             n);
  return h;
}

Node remap_children(Node n, const std::function<NodeId(NodeId)>& f) {
  std::visit(overloaded{
                 [](node::Intro&) {},
                 [](node::IntroFamily&) {},
                 [](node::Zero&) {},
                 [&](node::Add& x) {
                   x.left = f(x.left);
                   x.right = f(x.right);
                 },
                 [&](node::Mult& x) { x.inner = f(x.inner); },
                 [&](node::Red& x) { x.premise = f(x.premise); },
                 [&](node::Semiprime& x) { x.premise = f(x.premise); },
             },
             n);
  return n;
}

}  // namespace

bool GeneratorSet::mentions(Symbol s) const {
  return std::ranges::any_of(elements, [&](const Poly& p) { return p.contains(s); }) ||
         std::ranges::any_of(families, [&](const Family& f) {
           return f.left.contains(s) || f.right.contains(s);
         });
}

std::string_view op_name(const Node& n) {
  static constexpr std::string_view kNames[] = {"intro", "intro_family", "zero",     "add",
                                                "mult",  "red",          "semiprime"};
  return kNames[n.index()];
}

std::vector<NodeId> children(const Node& n) {
  return std::visit(overloaded{
                        [](const node::Add& x) { return std::vector<NodeId>{x.left, x.right}; },
                        [](const node::Mult& x) { return std::vector<NodeId>{x.inner}; },
                        [](const node::Red& x) { return std::vector<NodeId>{x.premise}; },
                        [](const node::Semiprime& x) { return std::vector<NodeId>{x.premise}; },
                        [](const auto&) { return std::vector<NodeId>{}; },
                    },
                    n);
}

SymbolOrder Certificate::symbol_order() const {
  std::vector<Symbol> declared;
  for (const auto& name : symbols) declared.push_back(Symbol::base(name));
  return SymbolOrder(std::move(declared));
}

BudgetExceeded::BudgetExceeded(std::size_t limit)
    : std::runtime_error("witness exceeds the node budget of " + std::to_string(limit)),
      limit_(limit) {}

// ---------------------------------------------------------------------------
// WitnessDag

const Node& WitnessDag::node(NodeId id) const {
  if (id >= nodes_.size()) throw std::out_of_range("dangling node id " + std::to_string(id));
  return nodes_[id];
}

const Poly& WitnessDag::conclusion(NodeId id) const {
  if (id >= conclusions_.size()) throw std::out_of_range("dangling node id " + std::to_string(id));
  return conclusions_[id];
}

const Poly& conclusion_of(const WitnessDag& dag, NodeId id) { return dag.conclusion(id); }

// ---------------------------------------------------------------------------
// DagBuilder

DagBuilder::DagBuilder(Setting setting, GeneratorSet generators, std::size_t max_nodes)
    : setting_(setting), generators_(std::move(generators)), max_nodes_(max_nodes) {}

NodeId DagBuilder::import(const WitnessDag& dag) {
  if (dag.setting() != setting_ || !(dag.generators() == generators_)) {
    throw std::invalid_argument("imported witness has a different setting or generator set");
  }
  std::vector<NodeId> ids;
  ids.reserve(dag.size());
  for (const Node& n : dag.nodes()) {
    ids.push_back(push(remap_children(n, [&](NodeId c) { return ids.at(c); })));
  }
  return ids.at(dag.root());
}

void DagBuilder::check_ref(NodeId id) const {
  if (id >= nodes_.size()) throw std::out_of_range("dangling node id " + std::to_string(id));
}

const Node& DagBuilder::node(NodeId id) const {
  check_ref(id);
  return nodes_[id];
}

const Poly& DagBuilder::conclusion(NodeId id) const {
  check_ref(id);
  return conclusions_[id];
}

Poly DagBuilder::compute_conclusion(const Node& n) const {
  return std::visit(
      overloaded{
          [&](const node::Intro& x) -> Poly {
            if (x.index >= generators_.elements.size()) {
              throw std::out_of_range("generator index " + std::to_string(x.index));
            }
            return generators_.elements[x.index];
          },
          [&](const node::IntroFamily& x) -> Poly {
            if (setting_ != Setting::Sqrt) throw std::logic_error("intro_family outside sqrt");
            if (x.index >= generators_.families.size()) {
              throw std::out_of_range("family index " + std::to_string(x.index));
            }
            const Family& f = generators_.families[x.index];
            return f.left * x.instance * f.right;
          },
          [](const node::Zero&) { return Poly(); },
          [&](const node::Add& x) { return conclusion(x.left) + conclusion(x.right); },
          [&](const node::Mult& x) { return x.left * conclusion(x.inner) * x.right; },
          [&](const node::Red& x) -> Poly {
            if (setting_ != Setting::Nil) throw std::logic_error("red outside nil");
            check_ref(x.premise);
            return x.conclusion;
          },
          [&](const node::Semiprime& x) -> Poly {
            if (setting_ != Setting::Sqrt) throw std::logic_error("semiprime outside sqrt");
            check_ref(x.premise);
            return x.conclusion;
          },
      },
      n);
}

NodeId DagBuilder::push(Node n) {
  std::size_t h = node_hash(n);
  auto& bucket = index_[h];
  for (NodeId id : bucket) {
    if (nodes_[id] == n) return id;
  }
  if (nodes_.size() >= max_nodes_) throw BudgetExceeded(max_nodes_);
  Poly c = compute_conclusion(n);
  auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(n));
  conclusions_.push_back(std::move(c));
  bucket.push_back(id);
  return id;
}

NodeId DagBuilder::intro(std::uint32_t index) { return push(node::Intro{index}); }
NodeId DagBuilder::intro_family(std::uint32_t index, Poly instance) {
  return push(node::IntroFamily{index, std::move(instance)});
}
NodeId DagBuilder::zero() { return push(node::Zero{}); }
NodeId DagBuilder::add(NodeId left, NodeId right) { return push(node::Add{left, right}); }
NodeId DagBuilder::mult(Poly left, NodeId inner, Poly right) {
  return push(node::Mult{std::move(left), inner, std::move(right)});
}
NodeId DagBuilder::red(NodeId premise, Poly conclusion) {
  return push(node::Red{premise, std::move(conclusion)});
}
NodeId DagBuilder::semiprime(Symbol bound, NodeId premise, Poly conclusion) {
  return push(node::Semiprime{bound, premise, std::move(conclusion)});
}

namespace {

class Substituter {
 public:
  explicit Substituter(DagBuilder& b) : b_(b) {}

  NodeId run(NodeId id, const Bindings& sigma) { return run(id, intern(sigma)); }

 private:
  std::size_t intern(const Bindings& sigma) {
    for (std::size_t i = 0; i < sigmas_.size(); ++i) {
      if (sigmas_[i] == sigma) return i;
    }
    sigmas_.push_back(sigma);
    return sigmas_.size() - 1;
  }

  NodeId run(NodeId id, std::size_t k) {
    if (sigmas_[k].empty()) return id;
    auto key = std::make_pair(k, id);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Node n = b_.node(id);
    auto sub = [&](const Poly& p) { return substitute(p, sigmas_[k]); };
    NodeId out = std::visit(
        overloaded{
            [&](const node::Intro&) { return id; },
            [&](const node::Zero&) { return id; },
            [&](const node::IntroFamily& x) { return b_.intro_family(x.index, sub(x.instance)); },
            [&](const node::Add& x) {
              NodeId l = run(x.left, k);
              NodeId r = run(x.right, k);
              return b_.add(l, r);
            },
            [&](const node::Mult& x) {
              NodeId inner = run(x.inner, k);
              return b_.mult(sub(x.left), inner, sub(x.right));
            },
            [&](const node::Red& x) {
              NodeId premise = run(x.premise, k);
              return b_.red(premise, sub(x.conclusion));
            },
            [&](const node::Semiprime& x) {
              Bindings inner = sigmas_[k];
              inner.erase(x.bound);
              Poly conclusion = substitute(x.conclusion, inner);
              bool captures = std::ranges::any_of(
                  inner, [&](const auto& kv) { return kv.second.contains(x.bound); });
              Symbol bound = x.bound;
              if (captures) {
                bound = Symbol::fresh();
                inner[x.bound] = Poly(bound);
              }
              NodeId premise = run(x.premise, intern(inner));
              return b_.semiprime(bound, premise, std::move(conclusion));
            },
        },
        n);
    memo_.emplace(key, out);
    return out;
  }

  DagBuilder& b_;
  std::vector<Bindings> sigmas_;
  std::map<std::pair<std::size_t, NodeId>, NodeId> memo_;
};

}  // namespace

NodeId DagBuilder::substitute(NodeId id, const Bindings& bindings) {
  check_ref(id);
  return Substituter(*this).run(id, bindings);
}

WitnessDag DagBuilder::finish(NodeId root) const {
  check_ref(root);
  std::vector<NodeId> order;
  std::vector<std::int64_t> new_id(nodes_.size(), -1);
  std::vector<char> entered(nodes_.size(), 0);
  std::vector<std::pair<NodeId, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      if (new_id[id] < 0) {
        new_id[id] = static_cast<std::int64_t>(order.size());
        order.push_back(id);
      }
      continue;
    }
    if (entered[id]) continue;
    entered[id] = 1;
    stack.emplace_back(id, true);
    auto kids = children(nodes_[id]);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      if (!entered[*it]) stack.emplace_back(*it, false);
    }
  }

  WitnessDag dag;
  dag.setting_ = setting_;
  dag.generators_ = generators_;
  dag.nodes_.reserve(order.size());
  dag.conclusions_.reserve(order.size());
  for (NodeId old : order) {
    dag.nodes_.push_back(
        remap_children(nodes_[old], [&](NodeId c) { return static_cast<NodeId>(new_id[c]); }));
    dag.conclusions_.push_back(conclusions_[old]);
  }
  dag.root_ = static_cast<NodeId>(new_id[root]);
  return dag;
}

WitnessDag substitute_schematic(const WitnessDag& dag, Symbol sym, const Poly& value) {
  DagBuilder b(dag.setting(), dag.generators(), std::max(kDefaultMaxNodes, 2 * dag.size() + 1));
  NodeId root = b.substitute(b.import(dag), Bindings{{sym, value}});
  return b.finish(root);
}

// ---------------------------------------------------------------------------
// Certificate conversion

Certificate to_certificate(const WitnessDag& dag, std::vector<std::string> symbols) {
  Certificate cert;
  cert.setting = dag.setting();
  cert.symbols = std::move(symbols);
  cert.generators = dag.generators();
  cert.nodes.assign(dag.nodes().begin(), dag.nodes().end());
  cert.root = dag.root();
  cert.claim = dag.conclusion();
  return cert;
}

WitnessDag to_witness(const Certificate& cert, std::size_t max_nodes) {
  const std::size_t n = cert.nodes.size();
  if (cert.root >= n) throw std::invalid_argument("root id does not resolve");
  for (std::size_t i = 0; i < n; ++i) {
    for (NodeId c : children(cert.nodes[i])) {
      if (c >= n) throw std::invalid_argument("node " + std::to_string(i) + " has a dangling ref");
    }
  }
  DagBuilder b(cert.setting, cert.generators, max_nodes);
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<char> state(n, 0);
  std::vector<NodeId> built(n, 0);
  std::vector<std::pair<NodeId, bool>> stack{{cert.root, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      if (state[id] == 2) continue;
      try {
        built[id] = b.push(remap_children(cert.nodes[id], [&](NodeId c) { return built[c]; }));
      } catch (const std::out_of_range& e) {
        throw std::invalid_argument("node " + std::to_string(id) + ": " + e.what());
      } catch (const std::logic_error& e) {
        throw std::invalid_argument("node " + std::to_string(id) + ": " + e.what());
      }
      state[id] = 2;
      continue;
    }
    if (state[id] == 2) continue;
    if (state[id] == 1) throw std::invalid_argument("cycle through node " + std::to_string(id));
    state[id] = 1;
    stack.emplace_back(id, true);
    for (NodeId c : children(cert.nodes[id])) {
      if (state[c] == 1) throw std::invalid_argument("cycle through node " + std::to_string(c));
      if (state[c] == 0) stack.emplace_back(c, false);
    }
  }
  return b.finish(built[cert.root]);
}

}  // namespace nilcert
