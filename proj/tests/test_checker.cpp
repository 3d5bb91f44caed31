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
#include "nilcert/commutativity.hpp"
#include "support/oracles.hpp"

using namespace nilcert;
using namespace nilcert::testing;

namespace {

const Symbol x = Symbol::base("x");
const Symbol y = Symbol::base("y");
const std::vector<Symbol> kSyms = {x, y};

Poly X() { return Poly(x); }
Poly Y() { return Poly(y); }

Certificate raw(Setting s, std::vector<Poly> gens, std::vector<Node> nodes, Poly claim,
                std::vector<Family> fams = {}) {
  Certificate c;
  c.setting = s;
  c.symbols = {"x", "y"};
  c.generators = GeneratorSet{std::move(gens), std::move(fams)};
  c.nodes = std::move(nodes);
  c.root = static_cast<NodeId>(c.nodes.size() - 1);
  c.claim = std::move(claim);
  return c;
}

void expect(const Certificate& c, Reason reason, std::optional<NodeId> node) {
  Verdict v = check_certificate(c);
  CHECK(!v.valid);
  CHECK_MESSAGE(v.reason == reason, v.describe());
  CHECK_MESSAGE(v.node == node, v.describe());
}

}  // namespace

TEST_CASE("the x^3 = x demo certificate is valid") {
  Certificate c = xn_demo(3).certificate;
  Verdict v = check_certificate(c);
  CHECK(v);
  CHECK(v.describe() == "valid");
}

TEST_CASE("red whose premise is x^3 but conclusion x") {
  Certificate c = raw(Setting::Nil, {X().pow(3)}, {node::Intro{0}, node::Red{0, X()}}, X());
  expect(c, Reason::RedSquareMismatch, 1);
  CHECK(check_certificate(c).describe().find("RED_SQUARE_MISMATCH") != std::string::npos);
}

TEST_CASE("semiprime binder occurring in a generator") {
  Symbol t = Symbol::fresh();
  Poly gen = X() * Poly(t) * X();
  Certificate c = raw(Setting::Sqrt, {gen}, {node::Intro{0}, node::Semiprime{t, 0, X()}}, X());
  expect(c, Reason::SemiprimeCapture, 1);
}

TEST_CASE("semiprime binder occurring in the conclusion") {
  Symbol t = Symbol::fresh();
  // premise c*t*c with c = t: premise t^3.
  Certificate c = raw(Setting::Sqrt, {X()},
                      {node::Intro{0}, node::Mult{Poly(t).pow(3), 0, 0L},
                       node::Semiprime{t, 1, Poly(t)}},
                      Poly(t));
  expect(c, Reason::SemiprimeCapture, 2);
}

TEST_CASE("semiprime shape") {
  Symbol t = Symbol::fresh();
  Certificate ok = raw(Setting::Sqrt, {X()},
                       {node::Intro{0}, node::Mult{1L, 0, Poly(t) * X()}, node::Semiprime{t, 1, X()}},
                       X());
  CHECK(check_certificate(ok));

  Certificate wrong = ok;
  std::get<node::Semiprime>(wrong.nodes[2]).conclusion = Y();
  wrong.claim = Y();
  expect(wrong, Reason::SemiprimeShape, 2);

  Certificate base_bound = ok;
  std::get<node::Semiprime>(base_bound.nodes[2]).bound = y;
  expect(base_bound, Reason::SemiprimeShape, 2);
}

TEST_CASE("wrong setting") {
  Certificate red_in_sqrt =
      raw(Setting::Sqrt, {X()}, {node::Intro{0}, node::Mult{X(), 0, 1L}, node::Red{1, X()}}, X());
  expect(red_in_sqrt, Reason::WrongSetting, 2);

  Certificate fam_in_nil = raw(Setting::Nil, {}, {node::IntroFamily{0, 1L}}, X() * Y(), {{X(), Y()}});
  expect(fam_in_nil, Reason::WrongSetting, std::nullopt);

  Certificate semi_in_nil = raw(Setting::Nil, {X()}, {node::Zero{}, node::Semiprime{Symbol::fresh(), 0, 0L}}, 0L);
  expect(semi_in_nil, Reason::WrongSetting, 1);
}

TEST_CASE("references") {
  expect(raw(Setting::Nil, {X()}, {node::Intro{0}, node::Add{0, 4}}, X()), Reason::BadRef, 1);
  expect(raw(Setting::Nil, {X()}, {node::Intro{0}, node::Add{1, 0}}, X()), Reason::Cycle, 1);
  expect(raw(Setting::Nil, {X()},
             {node::Add{2, 1}, node::Mult{1L, 2, 1L}, node::Mult{1L, 0, 1L}}, X()),
         Reason::Cycle, 0);
  Certificate root = raw(Setting::Nil, {X()}, {node::Intro{0}}, X());
  root.root = 5;
  expect(root, Reason::BadRef, std::nullopt);
  expect(raw(Setting::Nil, {X()}, {node::Intro{1}}, X()), Reason::GenIndex, 0);
  expect(raw(Setting::Sqrt, {}, {node::IntroFamily{0, 1L}}, X(), {}), Reason::GenIndex, 0);
}

TEST_CASE("claim mismatch") {
  expect(raw(Setting::Nil, {X()}, {node::Intro{0}}, Y()), Reason::ClaimMismatch, 0);
}

TEST_CASE("precedence: smallest node, structural errors first, claim last") {
  // Node 1 has a bad red, node 2 a bad reference: the reference wins.
  Certificate c = raw(Setting::Nil, {X()},
                      {node::Intro{0}, node::Red{0, Y()}, node::Add{1, 9}}, Y());
  expect(c, Reason::BadRef, 2);
  // Two side-condition failures: the smaller id wins.
  Certificate d = raw(Setting::Nil, {X()},
                      {node::Intro{0}, node::Red{0, Y()}, node::Intro{4}, node::Add{1, 2}}, 7L);
  expect(d, Reason::RedSquareMismatch, 1);
}

TEST_CASE("unreachable nodes are still checked") {
  Certificate c = raw(Setting::Nil, {X()}, {node::Intro{3}, node::Intro{0}}, X());
  expect(c, Reason::GenIndex, 0);
}

TEST_CASE("zero proves 0 from nothing") {
  CHECK(check_certificate(raw(Setting::Nil, {}, {node::Zero{}}, 0L)));
  CHECK(check_certificate(raw(Setting::Sqrt, {}, {node::Zero{}}, 0L)));
}

TEST_CASE("verdicts are deterministic and insensitive to sharing") {
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    Setting setting = i % 2 == 0 ? Setting::Nil : Setting::Sqrt;
    RandomSplit split = random_split(rng, kSyms, setting);
    DagBuilder b(setting, with_extra(split.common, split.a));
    WitnessGen gen(rng, kSyms);
    NodeId s = gen.build(b, 4);
    NodeId root = b.add(s, b.mult(Y(), s, 1L));
    Certificate c = to_certificate(b.finish(root), {"x", "y"});
    CHECK(check_certificate(c));
    CHECK(check_certificate(c).describe() == check_certificate(c).describe());

    // Duplicate the shared child of the root into a separate copy.
    Certificate dup = c;
    auto& add = std::get<node::Add>(dup.nodes[dup.root]);
    dup.nodes.push_back(dup.nodes[add.left]);
    add.left = static_cast<NodeId>(dup.nodes.size() - 1);
    CHECK(check_certificate(dup));

    // And a broken certificate stays broken the same way.
    Certificate bad = c;
    bad.claim = c.claim + 1L;
    Certificate bad_dup = dup;
    bad_dup.claim = c.claim + 1L;
    CHECK(check_certificate(bad).reason == check_certificate(bad_dup).reason);
  }
}

TEST_CASE("reason codes") {
  CHECK(reason_code(Reason::BadRef) == "BAD_REF");
  CHECK(reason_code(Reason::Cycle) == "CYCLE");
  CHECK(reason_code(Reason::RedSquareMismatch) == "RED_SQUARE_MISMATCH");
  CHECK(reason_code(Reason::SemiprimeShape) == "SEMIPRIME_SHAPE");
  CHECK(reason_code(Reason::SemiprimeCapture) == "SEMIPRIME_CAPTURE");
  CHECK(reason_code(Reason::WrongSetting) == "WRONG_SETTING");
  CHECK(reason_code(Reason::ClaimMismatch) == "CLAIM_MISMATCH");
  CHECK(reason_code(Reason::GenIndex) == "GEN_INDEX");
}
