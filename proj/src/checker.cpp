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

#include "nilcert/checker.hpp"

#include <vector>

namespace nilcert {

std::string_view reason_code(Reason r) {
  switch (r) {
    case Reason::BadRef: return "BAD_REF";
    case Reason::Cycle: return "CYCLE";
    case Reason::RedSquareMismatch: return "RED_SQUARE_MISMATCH";
    case Reason::SemiprimeShape: return "SEMIPRIME_SHAPE";
    case Reason::SemiprimeCapture: return "SEMIPRIME_CAPTURE";
    case Reason::WrongSetting: return "WRONG_SETTING";
    case Reason::ClaimMismatch: return "CLAIM_MISMATCH";
    case Reason::GenIndex: return "GEN_INDEX";
  }
  return "UNKNOWN";
}

std::string Verdict::describe() const {
  if (valid) return "valid";
  std::string out = "invalid: ";
  if (node) out += "node " + std::to_string(*node) + ": ";
  out += reason_code(reason);
  if (!detail.empty()) out += " (" + detail + ")";
  return out;
}

namespace {

Verdict reject(std::optional<NodeId> node, Reason reason, std::string detail) {
  return Verdict{false, node, reason, std::move(detail)};
}

// Premise/child ids of a node, read straight off the variant.
std::vector<NodeId> refs(const Node& n) {
  if (auto* x = std::get_if<node::Add>(&n)) return {x->left, x->right};
  if (auto* x = std::get_if<node::Mult>(&n)) return {x->inner};
  if (auto* x = std::get_if<node::Red>(&n)) return {x->premise};
  if (auto* x = std::get_if<node::Semiprime>(&n)) return {x->premise};
  return {};
}

}  // namespace

Verdict check_certificate(const Certificate& cert) {
  const auto& nodes = cert.nodes;
  const std::size_t n = nodes.size();
  const GeneratorSet& gens = cert.generators;

  if (cert.setting == Setting::Nil && !gens.families.empty()) {
    return reject(std::nullopt, Reason::WrongSetting, "families in the nil setting");
  }

  std::vector<std::vector<NodeId>> edges(n);
  for (std::size_t i = 0; i < n; ++i) {
    edges[i] = refs(nodes[i]);
    for (NodeId c : edges[i]) {
      if (c >= n) {
        return reject(static_cast<NodeId>(i), Reason::BadRef,
                      "reference to missing node " + std::to_string(c));
      }
    }
  }
  if (cert.root >= n) {
    return reject(std::nullopt, Reason::BadRef, "root " + std::to_string(cert.root) + " missing");
  }

  // Topological order by iterative DFS over every node; colour 1 = on path.
  std::vector<char> colour(n, 0);
  std::vector<NodeId> topo;
  topo.reserve(n);
  for (std::size_t start = 0; start < n; ++start) {
    if (colour[start]) continue;
    std::vector<std::pair<NodeId, std::size_t>> path{{static_cast<NodeId>(start), 0}};
    colour[start] = 1;
    while (!path.empty()) {
      auto& [id, next] = path.back();
      if (next < edges[id].size()) {
        NodeId c = edges[id][next++];
        if (colour[c] == 1) {
          return reject(c, Reason::Cycle, "node reaches itself");
        }
        if (colour[c] == 0) {
          colour[c] = 1;
          path.emplace_back(c, 0);
        }
      } else {
        colour[id] = 2;
        topo.push_back(id);
        path.pop_back();
      }
    }
  }

  // Conclusions, recomputed from scratch. A node with a bad generator index
  // concludes 0 here; it is reported below.
  std::vector<Poly> concl(n);
  for (NodeId id : topo) {
    const Node& nd = nodes[id];
    if (auto* x = std::get_if<node::Intro>(&nd)) {
      if (x->index < gens.elements.size()) concl[id] = gens.elements[x->index];
    } else if (auto* x = std::get_if<node::IntroFamily>(&nd)) {
      if (x->index < gens.families.size()) {
        concl[id] = gens.families[x->index].left * x->instance * gens.families[x->index].right;
      }
    } else if (auto* x = std::get_if<node::Add>(&nd)) {
      concl[id] = concl[x->left] + concl[x->right];
    } else if (auto* x = std::get_if<node::Mult>(&nd)) {
      concl[id] = x->left * concl[x->inner] * x->right;
    } else if (auto* x = std::get_if<node::Red>(&nd)) {
      concl[id] = x->conclusion;
    } else if (auto* x = std::get_if<node::Semiprime>(&nd)) {
      concl[id] = x->conclusion;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto id = static_cast<NodeId>(i);
    const Node& nd = nodes[i];
    if (auto* x = std::get_if<node::Intro>(&nd)) {
      if (x->index >= gens.elements.size()) {
        return reject(id, Reason::GenIndex, "no generator #" + std::to_string(x->index));
      }
    } else if (auto* x = std::get_if<node::IntroFamily>(&nd)) {
      if (cert.setting != Setting::Sqrt) {
        return reject(id, Reason::WrongSetting, "intro_family outside the sqrt setting");
      }
      if (x->index >= gens.families.size()) {
        return reject(id, Reason::GenIndex, "no family #" + std::to_string(x->index));
      }
    } else if (auto* x = std::get_if<node::Red>(&nd)) {
      if (cert.setting != Setting::Nil) {
        return reject(id, Reason::WrongSetting, "red outside the nil setting");
      }
      if (!(concl[x->premise] == x->conclusion * x->conclusion)) {
        return reject(id, Reason::RedSquareMismatch, "premise is not the square of the conclusion");
      }
    } else if (auto* x = std::get_if<node::Semiprime>(&nd)) {
      if (cert.setting != Setting::Sqrt) {
        return reject(id, Reason::WrongSetting, "semiprime outside the sqrt setting");
      }
      if (!x->bound.is_schematic()) {
        return reject(id, Reason::SemiprimeShape, "bound symbol is not schematic");
      }
      if (x->conclusion.contains(x->bound)) {
        return reject(id, Reason::SemiprimeCapture, "bound symbol occurs in the conclusion");
      }
      if (gens.mentions(x->bound)) {
        return reject(id, Reason::SemiprimeCapture, "bound symbol occurs in the generators");
      }
      if (!(concl[x->premise] == x->conclusion * Poly(x->bound) * x->conclusion)) {
        return reject(id, Reason::SemiprimeShape, "premise is not c*t*c");
      }
    }
  }

  if (!(concl[cert.root] == cert.claim)) {
    return reject(cert.root, Reason::ClaimMismatch, "claim differs from the root's conclusion");
  }
  return Verdict{};
}

}  // namespace nilcert
