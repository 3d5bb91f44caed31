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

#include <filesystem>

#include "doctest.h"
#include "nilcert/checker.hpp"
#include "nilcert/commutativity.hpp"
#include "nilcert/serialize.hpp"
#include "support/oracles.hpp"

using namespace nilcert;
using namespace nilcert::testing;

namespace {

const Symbol x = Symbol::base("x");
const Symbol y = Symbol::base("y");
const std::vector<Symbol> kSyms = {x, y};

std::vector<std::filesystem::path> golden_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(NILCERT_GOLDEN_DIR)) {
    if (e.path().extension() == ".json") out.push_back(e.path());
  }
  std::ranges::sort(out);
  return out;
}

std::string minimal(const std::string& nodes, const std::string& extra = "") {
  return R"({"version":1,"setting":"nil","symbols":["x","y"],"generators":[[["1",["x"]]]],)" + extra +
         R"("claim":[["1",["x"]]],"nodes":)" + nodes + R"(,"root":0})";
}

}  // namespace

TEST_CASE("golden certificates round-trip byte for byte") {
  auto files = golden_files();
  REQUIRE(files.size() >= 5);
  for (const auto& f : files) {
    std::string bytes = read_text(f.string());
    Certificate c = deserialize(bytes);
    CHECK_MESSAGE(serialize(c) == bytes, f.string());
    CHECK_MESSAGE(check_certificate(c), f.string());
  }
}

TEST_CASE("demo certificates are reproducible") {
  CHECK(serialize(xn_demo(2).certificate) ==
        read_text(std::string(NILCERT_GOLDEN_DIR) + "/demo-x2.json"));
  CHECK(serialize(xn_demo(3).certificate) ==
        read_text(std::string(NILCERT_GOLDEN_DIR) + "/demo-x3.json"));
}

TEST_CASE("random certificates round-trip") {
  Rng rng(51);
  for (int i = 0; i < 200; ++i) {
    Setting setting = i % 2 == 0 ? Setting::Nil : Setting::Sqrt;
    RandomSplit split = random_split(rng, kSyms, setting);
    DagBuilder b(setting, with_extra(split.common, split.a));
    WitnessGen gen(rng, kSyms);
    Certificate c = to_certificate(b.finish(gen.build(b, 4)), {"x", "y"});
    std::string bytes = serialize(c);
    Certificate back = deserialize(bytes);
    CHECK(back.setting == c.setting);
    CHECK(back.generators == c.generators);
    CHECK(back.claim == c.claim);
    CHECK(back.nodes == c.nodes);
    CHECK(back.root == c.root);
    CHECK(serialize(back) == bytes);
  }
}

TEST_CASE("poly form: graded order, decimal strings, unit word") {
  Certificate c;
  c.symbols = {"x", "y"};
  c.generators.elements = {Poly(Integer("-98765432109876543210")) + Poly(y) * Poly(x) + Poly(x) * Poly(x)};
  c.nodes = {node::Intro{0}};
  c.claim = c.generators.elements[0];
  std::string s = serialize(c);
  CHECK(s.find(R"([["1",["x","x"]],["1",["y","x"]],["-98765432109876543210",[]]])") !=
        std::string::npos);
}

TEST_CASE("malformed input") {
  CHECK_NOTHROW(deserialize(minimal(R"([{"id":0,"op":"intro","index":0}])")));

  std::string good = minimal(R"([{"id":0,"op":"intro","index":0}])");
  try {
    deserialize(good.substr(0, good.size() / 2));
    FAIL("truncated input accepted");
  } catch (const MalformedInput& e) {
    REQUIRE(e.offset().has_value());
    CHECK(*e.offset() <= good.size() / 2 + 1);
  }

  auto rejects = [](const std::string& text, std::string_view pointer_prefix) {
    try {
      deserialize(text);
    } catch (const VersionError&) {
      FAIL("unexpected version error");
    } catch (const MalformedInput& e) {
      CHECK_MESSAGE(e.pointer().starts_with(pointer_prefix), e.pointer() << " " << e.what());
      return;
    }
    FAIL("accepted: " << text);
  };
  rejects(minimal(R"([{"id":0,"op":"lemma"}])"), "/nodes/0");
  rejects(minimal(R"([{"id":1,"op":"intro","index":0}])"), "/nodes/0");
  rejects(minimal(R"([{"id":0,"op":"intro"}])"), "/nodes/0");
  rejects(minimal(R"([{"id":0,"op":"intro","index":-1}])"), "/nodes/0");
  rejects(minimal(R"([{"id":0,"op":"intro","index":0}])", R"("families":[{"left":[]}],)"), "/families/0");
  rejects(R"({"version":1,"setting":"nil","symbols":["x"],"generators":[[["0",["x"]]]],"claim":[],"nodes":[],"root":0})",
          "/generators/0");
  rejects(R"({"version":1,"setting":"nil","symbols":["x"],"generators":[[["1",["q"]]]],"claim":[],"nodes":[],"root":0})",
          "/generators/0");
  rejects(R"({"version":1,"setting":"nil","symbols":["x"],"generators":[[["1",["x"]],["2",["x"]]]],"claim":[],"nodes":[],"root":0})",
          "/generators/0");
  rejects(R"({"version":1,"setting":"nil","symbols":["x"],"generators":[[["1",["$3"]]]],"claim":[],"nodes":[],"root":0})",
          "/generators/0");
  rejects(R"({"version":1,"setting":"nil","symbols":["x"],"generators":[[["1.5",["x"]]]],"claim":[],"nodes":[],"root":0})",
          "/generators/0");
  rejects(R"({"version":1,"setting":"radical","symbols":["x"],"generators":[],"claim":[],"nodes":[],"root":0})",
          "/setting");
  rejects(R"({"version":1,"setting":"nil","symbols":["x"],"generators":[],"claim":[]})", "");
  rejects("[]", "");
}

TEST_CASE("version errors") {
  std::string v2 = R"({"version":2,"setting":"nil","symbols":[],"generators":[],"claim":[],"nodes":[],"root":0})";
  try {
    deserialize(v2);
    FAIL("version 2 accepted");
  } catch (const VersionError& e) {
    CHECK(e.version() == 2);
  }
}

TEST_CASE("structure only: semantically broken certificates still deserialize") {
  // Dangling reference and wrong claim are the checker's business.
  Certificate c = deserialize(minimal(R"([{"id":0,"op":"add","left":0,"right":7}])"));
  CHECK(!check_certificate(c));
}

TEST_CASE("terms may arrive in any order") {
  std::string text =
      R"({"version":1,"setting":"nil","symbols":["x","y"],"generators":[[["-1",[]],["1",["x","y"]]]],)"
      R"("claim":[["1",["x","y"]],["-1",[]]],"nodes":[{"id":0,"op":"intro","index":0}],"root":0})";
  Certificate c = deserialize(text);
  CHECK(check_certificate(c));
}
