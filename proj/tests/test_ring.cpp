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

#include <thread>

#include "doctest.h"
#include "nilcert/ring.hpp"
#include "support/oracles.hpp"

using namespace nilcert;
using namespace nilcert::testing;

namespace {

const Symbol x = Symbol::base("x");
const Symbol y = Symbol::base("y");
const Symbol z = Symbol::base("z");
const std::vector<Symbol> kSyms = {x, y, z};

Poly X() { return Poly(x); }
Poly Y() { return Poly(y); }

}  // namespace

TEST_CASE("symbols") {
  CHECK(Symbol::base("x") == x);
  CHECK(Symbol::base("x").name() == "x");
  CHECK_THROWS_AS(Symbol::base("1x"), std::invalid_argument);
  CHECK_THROWS_AS(Symbol::base("x-y"), std::invalid_argument);
  CHECK_THROWS_AS(Symbol::base(""), std::invalid_argument);
  CHECK(Symbol::is_identifier("a_1B"));

  Symbol s = Symbol::schematic(7);
  CHECK(s == Symbol::schematic(7));
  CHECK(s != Symbol::schematic(8));
  CHECK(s.name() == "$7");
  CHECK(s.is_schematic());
  for (int i = 0; i < 50; ++i) {
    Symbol f = Symbol::fresh();
    CHECK(f.is_schematic());
    CHECK(f.id() != 7);
    CHECK(f != Symbol::fresh());
  }
}

TEST_CASE("add") {
  CHECK((X() + (-X())).is_zero());
  CHECK(naive_equal((X() + 1L) + (X() - 1L), {{{"x"}, Integer(2)}}));
  Poly s = X() * Y() + Y() * X();
  CHECK(s.terms().size() == 2);
  CHECK(naive_equal(s, {{{"x", "y"}, Integer(1)}, {{"y", "x"}, Integer(1)}}));
}

TEST_CASE("multiply") {
  CHECK(naive_equal(X() * Y(), {{{"x", "y"}, Integer(1)}}));
  CHECK(!(X() * Y() == Y() * X()));
  NaivePoly xp1 = naive_add(naive_sym("x"), naive_const(1));
  NaivePoly xm1 = naive_add(naive_sym("x"), naive_const(1), -1);
  CHECK(naive_equal((X() + 1L) * (X() - 1L), naive_mul(xp1, xm1)));
  CHECK(naive_equal((X() + 1L) * X() * (X() - 1L), naive_mul(naive_mul(xp1, naive_sym("x")), xm1)));
  CHECK((X() + 1L) * X() * (X() - 1L) == X().pow(3) - X());
}

TEST_CASE("negate") {
  CHECK((-Poly()).is_zero());
  Poly c = X() * Y() - Y() * X();
  CHECK(-c == Y() * X() - X() * Y());
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Poly p = random_poly(rng, kSyms, 5, 3);
    CHECK(-(-p) == p);
  }
}

TEST_CASE("commutator") {
  CHECK(naive_equal(commutator(X(), Y()), {{{"x", "y"}, Integer(1)}, {{"y", "x"}, Integer(-1)}}));
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    Poly p = random_poly(rng, kSyms, 4, 3);
    CHECK(commutator(p, p).is_zero());
  }
  for (long c = -5; c <= 5; ++c) {
    NaivePoly xc = naive_add(naive_sym("x"), naive_const(c), -1);
    NaivePoly expected =
        naive_add(naive_mul(xc, naive_sym("y")), naive_mul(naive_sym("y"), xc), -1);
    CHECK(naive_equal(commutator(X() - Poly(c), Y()), expected));
    CHECK(commutator(X() - Poly(c), Y()) == commutator(X(), Y()));
  }
}

TEST_CASE("substitute") {
  Symbol zeta = Symbol::fresh();
  CHECK(substitute(X() * Poly(zeta) * X(), {{zeta, Y()}}) == X() * Y() * X());
  CHECK(substitute(X().pow(3) - X(), {{x, Poly(1L)}}).is_zero());
  CHECK(substitute(X() * Y(), {{z, X()}}) == X() * Y());

  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    Poly p = random_poly(rng, kSyms, 4, 3);
    Poly q = random_poly(rng, kSyms, 4, 3);
    Bindings sigma{{x, random_poly(rng, kSyms, 3, 2)}, {y, random_poly(rng, kSyms, 3, 2)}};
    CHECK(substitute(p * q, sigma) == substitute(p, sigma) * substitute(q, sigma));
    CHECK(substitute(p + q, sigma) == substitute(p, sigma) + substitute(q, sigma));
    CHECK(substitute(-p, sigma) == -substitute(p, sigma));
  }
}

TEST_CASE("equality") {
  CHECK(!(X() * Y() == Y() * X()));
  CHECK((X() + 1L) * (X() - 1L) == X() * X() - 1L);
  Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    Poly p = random_poly(rng, kSyms, 5, 3);
    CHECK(p == p + Poly());
    CHECK(p.hash() == (p + Poly()).hash());
  }
}

TEST_CASE("ring laws against the expansion oracle") {
  Rng rng(15);
  for (int i = 0; i < 300; ++i) {
    Poly p = random_poly(rng, kSyms, 4, 3);
    Poly q = random_poly(rng, kSyms, 4, 3);
    Poly r = random_poly(rng, kSyms, 4, 3);
    CHECK(naive_equal(p * q, naive_mul(naive_of(p), naive_of(q))));
    CHECK(naive_equal(p + q, naive_add(naive_of(p), naive_of(q))));
    CHECK(naive_equal(p - q, naive_add(naive_of(p), naive_of(q), -1)));
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK((q + r) * p == q * p + r * p);
    CHECK(Poly(1L) * p == p);
    CHECK(p * Poly(1L) == p);
    CHECK((Poly() * p).is_zero());
    Poly c(uniform(rng, -9, 9));
    CHECK(c * p == p * c);
  }
}

TEST_CASE("big coefficients") {
  Poly p = X() - 1L;
  for (int c = 2; c <= 30; ++c) p = p * (X() - Poly(static_cast<long>(c)));
  // The constant term is 30! up to sign, far beyond 64 bits.
  Integer fact = 1;
  for (int c = 1; c <= 30; ++c) fact *= c;
  bool found = false;
  for (const Term& t : p.terms()) {
    if (t.word.is_unit()) {
      CHECK(t.coeff == fact);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("no stored zero coefficients") {
  Rng rng(16);
  for (int i = 0; i < 200; ++i) {
    Poly p = random_poly(rng, kSyms, 6, 3) * random_poly(rng, kSyms, 6, 3);
    for (const Term& t : p.terms()) CHECK(t.coeff != 0);
  }
  Poly f = Poly::from_terms({{Word(x), Integer(2)}, {Word(x), Integer(-2)}, {Word(), Integer(0)}});
  CHECK(f.is_zero());
}

TEST_CASE("ordered terms: highest degree first, declared order within a degree") {
  SymbolOrder order(std::vector<Symbol>{y, x});
  Poly p = X() * X() + Y() * X() + X() + Y() + 3L;
  std::vector<Term> terms = ordered_terms(p, order);
  REQUIRE(terms.size() == 5);
  CHECK(terms[0].word.degree() == 2);
  CHECK(terms[0].word == Word(y) * Word(x));
  CHECK(terms[1].word == Word(x) * Word(x));
  CHECK(terms[2].word == Word(y));
  CHECK(terms[3].word == Word(x));
  CHECK(terms[4].word.is_unit());
}

TEST_CASE("interning is safe across threads") {
  std::vector<std::thread> threads;
  std::vector<Poly> results(8);
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([t, &results] {
      Poly p(1L);
      for (int i = 0; i < 10; ++i) p = p * (Poly(Symbol::base("w" + std::to_string(i % 5))) + 1L);
      results[t] = p.pow(1);
      (void)Symbol::fresh();
    });
  }
  for (auto& th : threads) th.join();
  for (int t = 1; t < 8; ++t) CHECK(results[t] == results[0]);
}
