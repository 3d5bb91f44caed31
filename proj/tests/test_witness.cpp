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

#include "doctest.h"
#include "nilcert/checker.hpp"
#include "nilcert/witness.hpp"
#include "support/oracles.hpp"

using namespace nilcert;
using namespace nilcert::testing;

namespace {

const Symbol x = Symbol::base("x");
const Symbol y = Symbol::base("y");
const std::vector<Symbol> kSyms = {x, y};
const std::vector<std::string> kNames = {"x", "y"};

Poly X() { return Poly(x); }
Poly Y() { return Poly(y); }

}  // namespace

TEST_CASE("conclusions of each constructor") {
  DagBuilder b(Setting::Nil, GeneratorSet{{X() * Y(), X().pow(3)}, {}});
  NodeId zero = b.zero();
  CHECK(b.conclusion(zero).is_zero());
  NodeId i0 = b.intro(0);
  CHECK(b.conclusion(i0) == X() * Y());
  NodeId m = b.mult(Y(), i0, X() + 1L);
  CHECK(naive_equal(b.conclusion(m),
                    naive_mul(naive_mul(naive_sym("y"), naive_mul(naive_sym("x"), naive_sym("y"))),
                              naive_add(naive_sym("x"), naive_const(1)))));
  NodeId a = b.add(i0, m);
  CHECK(b.conclusion(a) == X() * Y() + Y() * X() * Y() * (X() + 1L));

  // red over a premise proving (xy)^2, stored conclusion xy.
  NodeId sq = b.mult(X() * Y(), i0, 1L);
  NodeId r = b.red(sq, X() * Y());
  CHECK(b.conclusion(r) == X() * Y());

  WitnessDag dag = b.finish(r);
  CHECK(dag.conclusion() == X() * Y());
  CHECK(conclusion_of(dag, dag.root()) == X() * Y());
  CHECK_THROWS_AS(dag.node(99), std::out_of_range);
  CHECK_THROWS_AS(conclusion_of(dag, 99), std::out_of_range);

  DagBuilder s(Setting::Sqrt, GeneratorSet{{}, {{X(), Y()}}});
  NodeId f = s.intro_family(0, X() - 2L);
  CHECK(s.conclusion(f) == X() * (X() - 2L) * Y());
}

TEST_CASE("builder rejects misuse") {
  DagBuilder nil(Setting::Nil, GeneratorSet{{X()}, {}});
  CHECK_THROWS(nil.intro(1));
  CHECK_THROWS(nil.add(0, 5));
  NodeId i = nil.intro(0);
  CHECK_THROWS_AS(nil.semiprime(Symbol::fresh(), i, X()), std::logic_error);
  CHECK_THROWS_AS(nil.intro_family(0, 1L), std::logic_error);

  DagBuilder sq(Setting::Sqrt, GeneratorSet{{X()}, {}});
  NodeId j = sq.intro(0);
  CHECK_THROWS_AS(sq.red(j, X()), std::logic_error);
}

TEST_CASE("hash-consing shares equal nodes") {
  DagBuilder b(Setting::Nil, GeneratorSet{{X()}, {}});
  NodeId a = b.intro(0);
  CHECK(b.intro(0) == a);
  NodeId m1 = b.mult(Y(), a, 1L);
  CHECK(b.mult(Y(), a, 1L) == m1);
  CHECK(b.mult(Y(), a, 2L) != m1);
  CHECK(b.add(m1, m1) == b.add(m1, m1));
  CHECK(b.size() == 4);
}

TEST_CASE("node budget") {
  DagBuilder b(Setting::Nil, GeneratorSet{{X()}, {}}, 3);
  NodeId a = b.intro(0);
  NodeId m = b.mult(Y(), a, 1L);
  b.add(a, m);
  CHECK_THROWS_AS(b.mult(X(), a, 1L), BudgetExceeded);
  CHECK(b.intro(0) == a);  // existing nodes are free
}

TEST_CASE("finish keeps the reachable part in dependency order") {
  DagBuilder b(Setting::Nil, GeneratorSet{{X(), Y()}, {}});
  NodeId unused = b.mult(X(), b.intro(1), X());
  (void)unused;
  NodeId a = b.intro(0);
  NodeId m = b.mult(Y(), a, 1L);
  NodeId root = b.add(m, a);
  WitnessDag dag = b.finish(root);
  CHECK(dag.size() == 3);
  CHECK(dag.root() == dag.size() - 1);
  for (NodeId id = 0; id < dag.size(); ++id) {
    for (NodeId c : children(dag.node(id))) CHECK(c < id);
  }
  CHECK(dag.conclusion() == Y() * X() + X());
}

TEST_CASE("import") {
  DagBuilder b(Setting::Nil, GeneratorSet{{X()}, {}});
  NodeId r = b.red(b.mult(X(), b.intro(0), 1L), X());
  WitnessDag dag = b.finish(r);

  DagBuilder c(Setting::Nil, GeneratorSet{{X()}, {}});
  NodeId extra = c.mult(Y(), c.intro(0), 1L);
  NodeId root = c.import(dag);
  CHECK(c.conclusion(root) == X());
  CHECK(c.conclusion(extra) == Y() * X());
  CHECK(c.size() == 4);

  DagBuilder other(Setting::Nil, GeneratorSet{{Y()}, {}});
  CHECK_THROWS_AS(other.import(dag), std::invalid_argument);
}

TEST_CASE("substitute_schematic") {
  Symbol zeta = Symbol::fresh();
  DagBuilder b(Setting::Sqrt, GeneratorSet{{X()}, {}});
  NodeId w = b.mult(1L, b.intro(0), Poly(zeta) * X());
  WitnessDag dag = b.finish(w);
  CHECK(dag.conclusion() == X() * Poly(zeta) * X());

  WitnessDag inst = substitute_schematic(dag, zeta, Y());
  CHECK(inst.conclusion() == X() * Y() * X());
  Certificate cert = to_certificate(inst, kNames);
  CHECK(check_certificate(cert));

  Symbol other = Symbol::fresh();
  WitnessDag same = substitute_schematic(dag, other, Y());
  REQUIRE(same.size() == dag.size());
  for (NodeId id = 0; id < dag.size(); ++id) CHECK(same.node(id) == dag.node(id));
}

TEST_CASE("substitution renames binders that would capture") {
  // semiprime(t, mult(x*t, intro(x), zeta*x), ...) has a free zeta. Binding
  // zeta to t must not let the binder capture it.
  Symbol zeta = Symbol::fresh();
  Symbol t = Symbol::fresh();
  DagBuilder b(Setting::Sqrt, GeneratorSet{{X()}, {}});
  NodeId prem = b.mult(X() * Poly(t), b.intro(0), 1L);
  NodeId sp = b.semiprime(t, prem, X());
  NodeId root = b.mult(Poly(zeta), sp, 1L);
  WitnessDag dag = b.finish(root);
  CHECK(check_certificate(to_certificate(dag, kNames)));

  WitnessDag inst = substitute_schematic(dag, zeta, Poly(t) + X());
  CHECK(inst.conclusion() == (Poly(t) + X()) * X());
  CHECK(check_certificate(to_certificate(inst, kNames)));
  bool renamed = false;
  for (const Node& n : inst.nodes()) {
    if (auto* s = std::get_if<node::Semiprime>(&n)) renamed = s->bound != t;
  }
  CHECK(renamed);

  // A binder shadows the substituted symbol inside its premise.
  WitnessDag shadow = substitute_schematic(dag, t, Y());
  CHECK(shadow.conclusion() == dag.conclusion());
  CHECK(check_certificate(to_certificate(shadow, kNames)));
}

TEST_CASE("conclusion(subst(w)) == subst(conclusion(w)) on 500 random DAGs") {
  Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    Setting setting = i % 2 == 0 ? Setting::Nil : Setting::Sqrt;
    RandomSplit split = random_split(rng, kSyms, setting);
    GeneratorSet gens = with_extra(split.common, split.a);
    DagBuilder b(setting, gens);
    WitnessGen gen(rng, kSyms);
    Symbol zeta = Symbol::fresh();
    // Thread zeta into the witness so the substitution has work to do.
    NodeId root = b.mult(Poly(zeta), gen.build(b, 4), X() - Poly(zeta));
    WitnessDag dag = b.finish(root);
    Poly value = random_poly(rng, kSyms, 2, 2);
    WitnessDag inst = substitute_schematic(dag, zeta, value);
    CHECK(inst.conclusion() == substitute(dag.conclusion(), {{zeta, value}}));
    CHECK(check_certificate(to_certificate(inst, kNames)));
  }
}

TEST_CASE("random witnesses replay and are sound over Z/30") {
  Rng rng(32);
  for (int i = 0; i < 200; ++i) {
    Setting setting = i % 2 == 0 ? Setting::Nil : Setting::Sqrt;
    RandomSplit split = random_split(rng, kSyms, setting);
    DagBuilder b(setting, with_extra(split.common, split.a));
    WitnessGen gen(rng, kSyms);
    WitnessDag dag = b.finish(gen.build(b, 5));
    Certificate cert = to_certificate(dag, kNames);
    Verdict v = check_certificate(cert);
    CHECK_MESSAGE(v, v.describe());
    SoundnessReport r = sound_mod30(cert);
    CHECK(r.sound);
  }
}

TEST_CASE("to_witness") {
  DagBuilder b(Setting::Nil, GeneratorSet{{X()}, {}});
  NodeId r = b.red(b.mult(X(), b.intro(0), 1L), X());
  Certificate cert = to_certificate(b.finish(r), kNames);
  WitnessDag back = to_witness(cert);
  CHECK(back.conclusion() == X());
  CHECK(back.size() == 3);

  Certificate dangling = cert;
  std::get<node::Mult>(dangling.nodes[1]).inner = 7;
  CHECK_THROWS_AS(to_witness(dangling), std::invalid_argument);

  Certificate cyclic = cert;
  std::get<node::Mult>(cyclic.nodes[1]).inner = 2;
  CHECK_THROWS_AS(to_witness(cyclic), std::invalid_argument);

  Certificate bad_gen = cert;
  bad_gen.nodes[0] = node::Intro{3};
  CHECK_THROWS_AS(to_witness(bad_gen), std::invalid_argument);

  Certificate setting = cert;
  setting.setting = Setting::Sqrt;
  CHECK_THROWS_AS(to_witness(setting), std::invalid_argument);

  CHECK_THROWS_AS(to_witness(cert, 2), BudgetExceeded);
}

TEST_CASE("generator set mentions") {
  Symbol t = Symbol::fresh();
  GeneratorSet g{{X() * Poly(t)}, {{Y(), 1L}}};
  CHECK(g.mentions(t));
  CHECK(g.mentions(y));
  CHECK(!g.mentions(Symbol::fresh()));
}
