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

#include "nilcert/serialize.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "json.hpp"

namespace nilcert {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

MalformedInput::MalformedInput(const std::string& msg, std::optional<std::size_t> offset,
                               std::string pointer)
    : std::runtime_error(offset ? "malformed certificate at byte " + std::to_string(*offset) + ": " + msg
                                : "malformed certificate at " + (pointer.empty() ? std::string("/") : pointer) +
                                      ": " + msg),
      offset_(offset),
      pointer_(std::move(pointer)) {}

VersionError::VersionError(long long version)
    : MalformedInput("unsupported certificate version " + std::to_string(version), std::nullopt,
                     "/version"),
      version_(version) {}

namespace {

ordered_json poly_json(const Poly& p, const SymbolOrder& order) {
  ordered_json out = ordered_json::array();
  for (const Term& t : ordered_terms(p, order)) {
    ordered_json word = ordered_json::array();
    for (Symbol s : t.word.symbols()) word.push_back(s.name());
    out.push_back(ordered_json::array({t.coeff.get_str(), std::move(word)}));
  }
  return out;
}

ordered_json node_json(NodeId id, const Node& n, const SymbolOrder& order) {
  ordered_json j;
  j["id"] = id;
  j["op"] = std::string(op_name(n));
  if (auto* x = std::get_if<node::Intro>(&n)) {
    j["index"] = x->index;
  } else if (auto* x = std::get_if<node::IntroFamily>(&n)) {
    j["index"] = x->index;
    j["instance"] = poly_json(x->instance, order);
  } else if (auto* x = std::get_if<node::Add>(&n)) {
    j["left"] = x->left;
    j["right"] = x->right;
  } else if (auto* x = std::get_if<node::Mult>(&n)) {
    j["left"] = poly_json(x->left, order);
    j["inner"] = x->inner;
    j["right"] = poly_json(x->right, order);
  } else if (auto* x = std::get_if<node::Red>(&n)) {
    j["premise"] = x->premise;
    j["conclusion"] = poly_json(x->conclusion, order);
  } else if (auto* x = std::get_if<node::Semiprime>(&n)) {
    j["bound"] = x->bound.name();
    j["premise"] = x->premise;
    j["conclusion"] = poly_json(x->conclusion, order);
  }
  return j;
}

// Structural reader; every failure names the JSON pointer it was found at.
class Reader {
 public:
  explicit Reader(std::vector<std::string> declared) : declared_(std::move(declared)) {}

  [[noreturn]] static void fail(const std::string& ptr, const std::string& msg) {
    throw MalformedInput(msg, std::nullopt, ptr);
  }

  static const json& field(const json& obj, const std::string& key, const std::string& ptr) {
    if (!obj.is_object()) fail(ptr, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(ptr, "missing field '" + key + "'");
    return *it;
  }

  static std::uint32_t id(const json& j, const std::string& ptr) {
    if (!j.is_number_unsigned() || j.get<std::uint64_t>() > std::numeric_limits<std::uint32_t>::max()) {
      fail(ptr, "expected a non-negative 32-bit integer");
    }
    return static_cast<std::uint32_t>(j.get<std::uint64_t>());
  }

  static std::string string(const json& j, const std::string& ptr) {
    if (!j.is_string()) fail(ptr, "expected a string");
    return j.get<std::string>();
  }

  Symbol symbol(const json& j, const std::string& ptr) const {
    std::string name = string(j, ptr);
    if (!name.empty() && name.front() == '$') {
      std::string digits = name.substr(1);
      if (digits.empty() || digits.size() > 9 ||
          !std::ranges::all_of(digits, [](char c) { return c >= '0' && c <= '9'; })) {
        fail(ptr, "bad schematic symbol '" + name + "'");
      }
      return Symbol::schematic(static_cast<std::uint32_t>(std::stoul(digits)));
    }
    if (std::ranges::find(declared_, name) == declared_.end()) {
      fail(ptr, "undeclared symbol '" + name + "'");
    }
    return Symbol::base(name);
  }

  Poly poly(const json& j, const std::string& ptr) const {
    if (!j.is_array()) fail(ptr, "expected a polynomial (array of terms)");
    std::vector<Term> terms;
    std::unordered_set<Word, WordHash> seen;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string tptr = ptr + "/" + std::to_string(i);
      const json& t = j[i];
      if (!t.is_array() || t.size() != 2) fail(tptr, "expected [coefficient, [symbols...]]");
      std::string digits = string(t[0], tptr + "/0");
      std::string_view body = digits;
      if (!body.empty() && body.front() == '-') body.remove_prefix(1);
      if (body.empty() || !std::ranges::all_of(body, [](char c) { return c >= '0' && c <= '9'; })) {
        fail(tptr + "/0", "coefficient must be a decimal integer");
      }
      Integer c(digits);
      if (c == 0) fail(tptr + "/0", "zero coefficient");
      if (!t[1].is_array()) fail(tptr + "/1", "expected a list of symbols");
      std::vector<Symbol> syms;
      for (std::size_t k = 0; k < t[1].size(); ++k) {
        syms.push_back(symbol(t[1][k], tptr + "/1/" + std::to_string(k)));
      }
      Word w(syms);
      if (!seen.insert(w).second) fail(tptr, "repeated monomial");
      terms.push_back(Term{w, c});
    }
    return Poly::from_terms(std::move(terms));
  }

  Poly closed_poly(const json& j, const std::string& ptr) const {
    Poly p = poly(j, ptr);
    for (Symbol s : p.symbols()) {
      if (s.is_schematic()) fail(ptr, "generators may not contain schematic symbols");
    }
    return p;
  }

  Node node(const json& j, std::size_t index, const std::string& ptr) const {
    if (id(field(j, "id", ptr), ptr + "/id") != index) fail(ptr + "/id", "node ids must be dense and in order");
    std::string op = string(field(j, "op", ptr), ptr + "/op");
    auto f = [&](const char* key) -> const json& { return field(j, key, ptr); };
    auto sub = [&](const char* key) { return ptr + "/" + key; };
    if (op == "intro") return node::Intro{id(f("index"), sub("index"))};
    if (op == "intro_family") {
      return node::IntroFamily{id(f("index"), sub("index")), poly(f("instance"), sub("instance"))};
    }
    if (op == "zero") return node::Zero{};
    if (op == "add") return node::Add{id(f("left"), sub("left")), id(f("right"), sub("right"))};
    if (op == "mult") {
      return node::Mult{poly(f("left"), sub("left")), id(f("inner"), sub("inner")),
                        poly(f("right"), sub("right"))};
    }
    if (op == "red") {
      return node::Red{id(f("premise"), sub("premise")), poly(f("conclusion"), sub("conclusion"))};
    }
    if (op == "semiprime") {
      return node::Semiprime{symbol(f("bound"), sub("bound")), id(f("premise"), sub("premise")),
                             poly(f("conclusion"), sub("conclusion"))};
    }
    fail(sub("op"), "unknown op '" + op + "'");
  }

 private:
  std::vector<std::string> declared_;
};

}  // namespace

std::string serialize(const Certificate& cert) {
  const SymbolOrder order = cert.symbol_order();
  ordered_json generators = ordered_json::array();
  for (const Poly& g : cert.generators.elements) generators.push_back(poly_json(g, order));
  ordered_json families = ordered_json::array();
  for (const Family& f : cert.generators.families) {
    ordered_json fj;
    fj["left"] = poly_json(f.left, order);
    fj["right"] = poly_json(f.right, order);
    families.push_back(std::move(fj));
  }

  std::string out = "{\n";
  out += "  \"version\": " + std::to_string(cert.version) + ",\n";
  out += "  \"setting\": " + ordered_json(std::string(to_string(cert.setting))).dump() + ",\n";
  out += "  \"symbols\": " + ordered_json(cert.symbols).dump() + ",\n";
  out += "  \"generators\": " + generators.dump() + ",\n";
  out += "  \"families\": " + families.dump() + ",\n";
  out += "  \"claim\": " + poly_json(cert.claim, order).dump() + ",\n";
  out += "  \"nodes\": [";
  for (std::size_t i = 0; i < cert.nodes.size(); ++i) {
    out += i == 0 ? "\n    " : ",\n    ";
    out += node_json(static_cast<NodeId>(i), cert.nodes[i], order).dump();
  }
  out += cert.nodes.empty() ? "],\n" : "\n  ],\n";
  out += "  \"root\": " + std::to_string(cert.root) + "\n";
  out += "}\n";
  return out;
}

Certificate deserialize(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw MalformedInput(e.what(), e.byte, "");
  }
  if (!doc.is_object()) Reader::fail("", "expected a JSON object");

  const json& version = Reader::field(doc, "version", "");
  if (!version.is_number_integer()) Reader::fail("/version", "expected an integer");
  if (version.get<long long>() != kCertificateVersion) throw VersionError(version.get<long long>());

  Certificate cert;
  cert.version = kCertificateVersion;
  auto setting = parse_setting(Reader::string(Reader::field(doc, "setting", ""), "/setting"));
  if (!setting) Reader::fail("/setting", "expected \"nil\" or \"sqrt\"");
  cert.setting = *setting;

  const json& symbols = Reader::field(doc, "symbols", "");
  if (!symbols.is_array()) Reader::fail("/symbols", "expected an array");
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    std::string name = Reader::string(symbols[i], "/symbols/" + std::to_string(i));
    if (!Symbol::is_identifier(name)) Reader::fail("/symbols/" + std::to_string(i), "bad identifier");
    if (std::ranges::find(cert.symbols, name) != cert.symbols.end()) {
      Reader::fail("/symbols/" + std::to_string(i), "symbol declared twice");
    }
    cert.symbols.push_back(std::move(name));
  }
  Reader reader(cert.symbols);

  const json& generators = Reader::field(doc, "generators", "");
  if (!generators.is_array()) Reader::fail("/generators", "expected an array");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    cert.generators.elements.push_back(
        reader.closed_poly(generators[i], "/generators/" + std::to_string(i)));
  }

  if (auto it = doc.find("families"); it != doc.end()) {
    if (!it->is_array()) Reader::fail("/families", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string ptr = "/families/" + std::to_string(i);
      const json& f = (*it)[i];
      cert.generators.families.push_back(
          Family{reader.closed_poly(Reader::field(f, "left", ptr), ptr + "/left"),
                 reader.closed_poly(Reader::field(f, "right", ptr), ptr + "/right")});
    }
  }

  cert.claim = reader.poly(Reader::field(doc, "claim", ""), "/claim");

  const json& nodes = Reader::field(doc, "nodes", "");
  if (!nodes.is_array()) Reader::fail("/nodes", "expected an array");
  cert.nodes.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    cert.nodes.push_back(reader.node(nodes[i], i, "/nodes/" + std::to_string(i)));
  }
  cert.root = Reader::id(Reader::field(doc, "root", ""), "/root");
  return cert;
}

}  // namespace nilcert
