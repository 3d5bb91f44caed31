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

#include "nilcert/transforms.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

namespace nilcert {

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
  std::vector<char> hit(image_.size() + 1, 0);
  for (std::size_t v : image_) {
    if (v < 1 || v > image_.size() || hit[v]) {
      throw InvalidPermutation("not a permutation of 1.." + std::to_string(image_.size()));
    }
    hit[v] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = i + 1;
  return Permutation(std::move(image));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (image_[i] != i + 1) return false;
  }
  return true;
}

GeneratorSplit infer_split(const GeneratorSet& p, const GeneratorSet& q) {
  if (!(p.families == q.families)) {
    throw GeneratorMismatch("the two generator sets have different families");
  }
  if (p.elements.size() != q.elements.size() || p.elements.empty()) {
    throw GeneratorMismatch("cannot identify the distinguished generators: sizes differ");
  }
  std::vector<std::size_t> diffs;
  for (std::size_t i = 0; i < p.elements.size(); ++i) {
    if (!(p.elements[i] == q.elements[i])) diffs.push_back(i);
  }
  if (diffs.size() > 1) {
    throw GeneratorMismatch("the generator sets differ in more than one position");
  }
  std::size_t pick = diffs.empty() ? p.elements.size() - 1 : diffs.front();
  GeneratorSplit split;
  split.common.families = p.families;
  for (std::size_t i = 0; i < p.elements.size(); ++i) {
    if (i != pick) split.common.elements.push_back(p.elements[i]);
  }
  split.a = p.elements[pick];
  split.b = q.elements[pick];
  return split;
}

// ---------------------------------------------------------------------------
// Permutation lemma

NodeId rotate(DagBuilder& b, NodeId w, const Poly& u, const Poly& v) {
  if (b.setting() != Setting::Nil) throw SettingMismatch("rotation needs the nil setting");
  if (!(b.conclusion(w) == u * v)) {
    throw FactorizationMismatch("u*v does not equal the witnessed element");
  }
  NodeId square = b.mult(v, w, u);
  return b.red(square, v * u);
}

NodeId insert(DagBuilder& b, NodeId w, const Poly& u, const Poly& v, const Poly& r) {
  NodeId rotated = rotate(b, w, u, v);
  NodeId square = b.mult(u * r, rotated, r * v);
  return b.red(square, u * r * v);
}

namespace {

Poly product(std::span<const Poly> factors, std::size_t from, std::size_t to) {
  Poly acc(1L);
  for (std::size_t i = from; i < to; ++i) acc = acc * factors[i];
  return acc;
}

// prefix*x*y*suffix  =>  prefix*y*x*suffix, via
// (P y x Q)^2 = P [y] x [Q P] y [x] Q: three insertions then red.
NodeId transpose(DagBuilder& b, NodeId w, const Poly& prefix, const Poly& x, const Poly& y,
                 const Poly& suffix) {
  NodeId w1 = insert(b, w, prefix, x * y * suffix, y);
  NodeId w2 = insert(b, w1, prefix * y * x, y * suffix, suffix * prefix);
  NodeId w3 = insert(b, w2, prefix * y * x * suffix * prefix * y, suffix, x);
  return b.red(w3, prefix * y * x * suffix);
}

}  // namespace

NodeId permute(DagBuilder& b, NodeId w, std::span<const Poly> factors, const Permutation& sigma) {
  const std::size_t n = factors.size();
  if (sigma.size() != n) {
    throw InvalidPermutation("permutation of " + std::to_string(sigma.size()) + " points for " +
                             std::to_string(n) + " factors");
  }
  if (!(b.conclusion(w) == product(factors, 0, n))) {
    throw FactorizationMismatch("the factors do not multiply to the witnessed element");
  }
  if (sigma.is_identity()) return w;

  // A cyclic shift needs a single rotation.
  for (std::size_t k = 1; k < n; ++k) {
    bool shift = true;
    for (std::size_t i = 0; i < n && shift; ++i) shift = sigma(i + 1) == (i + k) % n + 1;
    if (shift) return rotate(b, w, product(factors, 0, k), product(factors, k, n));
  }

  // Otherwise insertion sort by adjacent transpositions.
  std::vector<Poly> current(factors.begin(), factors.end());
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i + 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = std::ranges::find(order, sigma(i + 1)) - order.begin();
    for (; j > i; --j) {
      w = transpose(b, w, product(current, 0, j - 1), current[j - 1], current[j],
                    product(current, j + 1, n));
      std::swap(current[j - 1], current[j]);
      std::swap(order[j - 1], order[j]);
    }
  }
  return w;
}

WitnessDag rotate(const WitnessDag& w, const Poly& u, const Poly& v, TransformOptions opts) {
  DagBuilder b(w.setting(), w.generators(), opts.max_nodes);
  return b.finish(rotate(b, b.import(w), u, v));
}

WitnessDag insert(const WitnessDag& w, const Poly& u, const Poly& v, const Poly& r,
                  TransformOptions opts) {
  DagBuilder b(w.setting(), w.generators(), opts.max_nodes);
  return b.finish(insert(b, b.import(w), u, v, r));
}

WitnessDag permute(const WitnessDag& w, std::span<const Poly> factors, const Permutation& sigma,
                   TransformOptions opts) {
  DagBuilder b(w.setting(), w.generators(), opts.max_nodes);
  return b.finish(permute(b, b.import(w), factors, sigma));
}

// ---------------------------------------------------------------------------
// Products

namespace {

// How each generator of an input witness maps into the output generator set.
struct Roles {
  static constexpr std::uint32_t kDistinguished = UINT32_MAX;
  std::vector<std::uint32_t> elements;  // index into U, or kDistinguished
  std::vector<std::uint32_t> families;  // index into U's families
};

Roles assign_roles(const GeneratorSet& gens, const GeneratorSplit& split, const Poly& distinguished,
                   const char* which) {
  Roles roles;
  for (const Poly& g : gens.elements) {
    if (g == distinguished) {
      roles.elements.push_back(Roles::kDistinguished);
      continue;
    }
    auto it = std::ranges::find(split.common.elements, g);
    if (it == split.common.elements.end()) {
      throw GeneratorMismatch(std::string("a generator of ") + which + " is neither in U nor " +
                              (which[0] == 'p' ? "a" : "b"));
    }
    roles.elements.push_back(static_cast<std::uint32_t>(it - split.common.elements.begin()));
  }
  for (const Family& f : gens.families) {
    auto it = std::ranges::find(split.common.families, f);
    if (it == split.common.families.end()) {
      throw GeneratorMismatch(std::string("a family of ") + which + " is not a family of U");
    }
    roles.families.push_back(static_cast<std::uint32_t>(it - split.common.families.begin()));
  }
  return roles;
}

void require_setting(const WitnessDag& p, const WitnessDag& q, Setting want) {
  if (p.setting() != want || q.setting() != want) {
    throw SettingMismatch(std::string("both witnesses must be in the ") +
                          std::string(to_string(want)) + " setting");
  }
}

// x in Nil(U,a), y in Nil(U,b)  =>  x*y in Nil(U,ab).
// Recurses on p; at each intro(a) leaf of p it recurses on q instead.
class NilProduct {
 public:
  NilProduct(const GeneratorSplit& split, const WitnessDag& p, const WitnessDag& q, DagBuilder& out)
      : split_(split),
        p_(p),
        q_(q),
        out_(out),
        p_roles_(assign_roles(p.generators(), split, split.a, "p")),
        q_roles_(assign_roles(q.generators(), split, split.b, "q")),
        ab_(static_cast<std::uint32_t>(split.common.elements.size())),
        y_(q.conclusion()) {}

  NodeId run() { return from_p(p_.root()); }

 private:
  // Witness of conclusion_p(id) * y.
  NodeId from_p(NodeId id) {
    if (auto it = memo_p_.find(id); it != memo_p_.end()) return it->second;
    const Node& n = p_.node(id);
    NodeId out;
    if (auto* x = std::get_if<node::Intro>(&n)) {
      std::uint32_t role = p_roles_.elements.at(x->index);
      out = role == Roles::kDistinguished ? from_q(q_.root()) : out_.mult(1L, out_.intro(role), y_);
    } else if (std::holds_alternative<node::Zero>(n)) {
      out = out_.zero();
    } else if (auto* x = std::get_if<node::Add>(&n)) {
      NodeId l = from_p(x->left);
      NodeId r = from_p(x->right);
      out = out_.add(l, r);
    } else if (auto* x = std::get_if<node::Mult>(&n)) {
      // z*x'*w*y from x'*y: insert w, then multiply by z on the left.
      out = from_p(x->inner);
      if (!x->right.is_one()) out = insert(out_, out, p_.conclusion(x->inner), y_, x->right);
      if (!x->left.is_one()) out = out_.mult(x->left, out, 1L);
    } else if (auto* x = std::get_if<node::Red>(&n)) {
      // From x^2*y: x*(x*y) gets y inserted to give (x*y)^2.
      const Poly& c = x->conclusion;
      NodeId squared = insert(out_, from_p(x->premise), c, c * y_, y_);
      out = out_.red(squared, c * y_);
    } else {
      throw SettingMismatch("nil product met a sqrt-only constructor");
    }
    memo_p_.emplace(id, out);
    return out;
  }

  // Witness of a * conclusion_q(id).
  NodeId from_q(NodeId id) {
    if (auto it = memo_q_.find(id); it != memo_q_.end()) return it->second;
    const Node& n = q_.node(id);
    const Poly& a = split_.a;
    NodeId out;
    if (auto* x = std::get_if<node::Intro>(&n)) {
      std::uint32_t role = q_roles_.elements.at(x->index);
      out = role == Roles::kDistinguished ? out_.intro(ab_) : out_.mult(a, out_.intro(role), 1L);
    } else if (std::holds_alternative<node::Zero>(n)) {
      out = out_.zero();
    } else if (auto* x = std::get_if<node::Add>(&n)) {
      NodeId l = from_q(x->left);
      NodeId r = from_q(x->right);
      out = out_.add(l, r);
    } else if (auto* x = std::get_if<node::Mult>(&n)) {
      out = from_q(x->inner);
      if (!x->left.is_one()) out = insert(out_, out, a, q_.conclusion(x->inner), x->left);
      if (!x->right.is_one()) out = out_.mult(1L, out, x->right);
    } else if (auto* x = std::get_if<node::Red>(&n)) {
      // From a*y^2: (a*y)*y gets a inserted to give (a*y)^2.
      const Poly& c = x->conclusion;
      NodeId squared = insert(out_, from_q(x->premise), a * c, c, a);
      out = out_.red(squared, a * c);
    } else {
      throw SettingMismatch("nil product met a sqrt-only constructor");
    }
    memo_q_.emplace(id, out);
    return out;
  }

  const GeneratorSplit& split_;
  const WitnessDag& p_;
  const WitnessDag& q_;
  DagBuilder& out_;
  Roles p_roles_;
  Roles q_roles_;
  std::uint32_t ab_;
  Poly y_;
  std::unordered_map<NodeId, NodeId> memo_p_;
  std::unordered_map<NodeId, NodeId> memo_q_;
};

GeneratorSet nil_output_generators(const GeneratorSplit& split) {
  if (!split.common.families.empty()) throw SettingMismatch("families in the nil setting");
  GeneratorSet gens = split.common;
  gens.elements.push_back(split.a * split.b);
  return gens;
}

GeneratorSet sqrt_output_generators(const GeneratorSplit& split) {
  GeneratorSet gens = split.common;
  gens.families.push_back(Family{split.a, split.b});
  return gens;
}

struct MemoKey {
  NodeId id;
  Poly m;
  friend bool operator==(const MemoKey&, const MemoKey&) = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const { return k.m.hash() * 31 + k.id; }
};

// x in sqrt(U,a), y in sqrt(U,b)  =>  x*m*y in sqrt(U, aAb) for the given m.
// The inputs are copied into staging builders so that semiprime premises can
// be instantiated in place.
class SqrtProduct {
 public:
  SqrtProduct(const GeneratorSplit& split, const WitnessDag& p, const WitnessDag& q,
              DagBuilder& out)
      : split_(split),
        p_(p.setting(), p.generators(), out.max_nodes()),
        q_(q.setting(), q.generators(), out.max_nodes()),
        out_(out),
        p_roles_(assign_roles(p.generators(), split, split.a, "p")),
        q_roles_(assign_roles(q.generators(), split, split.b, "q")),
        family_ab_(static_cast<std::uint32_t>(split.common.families.size())),
        p_root_(p_.import(p)),
        q_root_(q_.import(q)),
        y_(q.conclusion()) {}

  NodeId run(const Poly& m) { return from_p(p_root_, m); }

 private:
  // Witness of conclusion_p(id) * m * y.
  NodeId from_p(NodeId id, const Poly& m) {
    MemoKey key{id, m};
    if (auto it = memo_p_.find(key); it != memo_p_.end()) return it->second;
    const Node n = p_.node(id);
    NodeId out;
    if (auto* x = std::get_if<node::Intro>(&n)) {
      std::uint32_t role = p_roles_.elements.at(x->index);
      out = role == Roles::kDistinguished ? from_q(q_root_, m)
                                          : out_.mult(1L, out_.intro(role), m * y_);
    } else if (auto* x = std::get_if<node::IntroFamily>(&n)) {
      out = out_.mult(1L, out_.intro_family(p_roles_.families.at(x->index), x->instance), m * y_);
    } else if (std::holds_alternative<node::Zero>(n)) {
      out = out_.zero();
    } else if (auto* x = std::get_if<node::Add>(&n)) {
      NodeId l = from_p(x->left, m);
      NodeId r = from_p(x->right, m);
      out = out_.add(l, r);
    } else if (auto* x = std::get_if<node::Mult>(&n)) {
      // z*x'*w*m*y is z * (x' * (w*m) * y).
      out = from_p(x->inner, x->right * m);
      if (!x->left.is_one()) out = out_.mult(x->left, out, 1L);
    } else if (auto* x = std::get_if<node::Semiprime>(&n)) {
      // (x*m*y)*t*(x*m*y) = x*(m*y*t)*x * m * y: instantiate the premise at
      // m*y*t and recurse with the same m.
      Symbol t = Symbol::fresh();
      NodeId instance = p_.substitute(x->premise, Bindings{{x->bound, m * y_ * Poly(t)}});
      NodeId premise = from_p(instance, m);
      out = out_.semiprime(t, premise, x->conclusion * m * y_);
    } else {
      throw SettingMismatch("sqrt product met a nil-only constructor");
    }
    memo_p_.emplace(std::move(key), out);
    return out;
  }

  // Witness of a * m * conclusion_q(id).
  NodeId from_q(NodeId id, const Poly& m) {
    MemoKey key{id, m};
    if (auto it = memo_q_.find(key); it != memo_q_.end()) return it->second;
    const Node n = q_.node(id);
    const Poly& a = split_.a;
    NodeId out;
    if (auto* x = std::get_if<node::Intro>(&n)) {
      std::uint32_t role = q_roles_.elements.at(x->index);
      out = role == Roles::kDistinguished ? out_.intro_family(family_ab_, m)
                                          : out_.mult(a * m, out_.intro(role), 1L);
    } else if (auto* x = std::get_if<node::IntroFamily>(&n)) {
      out = out_.mult(a * m, out_.intro_family(q_roles_.families.at(x->index), x->instance), 1L);
    } else if (std::holds_alternative<node::Zero>(n)) {
      out = out_.zero();
    } else if (auto* x = std::get_if<node::Add>(&n)) {
      NodeId l = from_q(x->left, m);
      NodeId r = from_q(x->right, m);
      out = out_.add(l, r);
    } else if (auto* x = std::get_if<node::Mult>(&n)) {
      // a*m*z*y'*w is (a * (m*z) * y') * w.
      out = from_q(x->inner, m * x->left);
      if (!x->right.is_one()) out = out_.mult(1L, out, x->right);
    } else if (auto* x = std::get_if<node::Semiprime>(&n)) {
      // (a*m*y)*t*(a*m*y) = a*m * y*(t*a*m)*y: instantiate at t*a*m.
      Symbol t = Symbol::fresh();
      NodeId instance = q_.substitute(x->premise, Bindings{{x->bound, Poly(t) * a * m}});
      NodeId premise = from_q(instance, m);
      out = out_.semiprime(t, premise, a * m * x->conclusion);
    } else {
      throw SettingMismatch("sqrt product met a nil-only constructor");
    }
    memo_q_.emplace(std::move(key), out);
    return out;
  }

  const GeneratorSplit& split_;
  DagBuilder p_;
  DagBuilder q_;
  DagBuilder& out_;
  Roles p_roles_;
  Roles q_roles_;
  std::uint32_t family_ab_;
  NodeId p_root_;
  NodeId q_root_;
  Poly y_;
  std::unordered_map<MemoKey, NodeId, MemoKeyHash> memo_p_;
  std::unordered_map<MemoKey, NodeId, MemoKeyHash> memo_q_;
};

void require_same_conclusion(const WitnessDag& p, const WitnessDag& q) {
  if (!(p.conclusion() == q.conclusion())) {
    throw ConclusionMismatch("the two witnesses conclude different elements");
  }
}

}  // namespace

WitnessDag nil_product(const GeneratorSplit& split, const WitnessDag& p, const WitnessDag& q,
                       TransformOptions opts) {
  require_setting(p, q, Setting::Nil);
  DagBuilder out(Setting::Nil, nil_output_generators(split), opts.max_nodes);
  return out.finish(NilProduct(split, p, q, out).run());
}

WitnessDag nil_intersect(const GeneratorSplit& split, const WitnessDag& p, const WitnessDag& q,
                         TransformOptions opts) {
  require_setting(p, q, Setting::Nil);
  require_same_conclusion(p, q);
  DagBuilder out(Setting::Nil, nil_output_generators(split), opts.max_nodes);
  NodeId square = NilProduct(split, p, q, out).run();
  return out.finish(out.red(square, p.conclusion()));
}

WitnessDag sqrt_product(const GeneratorSplit& split, const WitnessDag& p, const WitnessDag& q,
                        const Poly& m, TransformOptions opts) {
  require_setting(p, q, Setting::Sqrt);
  DagBuilder out(Setting::Sqrt, sqrt_output_generators(split), opts.max_nodes);
  return out.finish(SqrtProduct(split, p, q, out).run(m));
}

WitnessDag sqrt_intersect(const GeneratorSplit& split, const WitnessDag& p, const WitnessDag& q,
                          TransformOptions opts) {
  require_setting(p, q, Setting::Sqrt);
  require_same_conclusion(p, q);
  DagBuilder out(Setting::Sqrt, sqrt_output_generators(split), opts.max_nodes);
  Symbol z = Symbol::fresh();
  NodeId premise = SqrtProduct(split, p, q, out).run(Poly(z));
  return out.finish(out.semiprime(z, premise, p.conclusion()));
}

}  // namespace nilcert
