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

#include "nilcert/commutativity.hpp"

#include <algorithm>
#include <sstream>

#include "nilcert/checker.hpp"
#include "nilcert/expr.hpp"

namespace nilcert {

namespace {

const std::vector<std::string> kDemoSymbols = {"x", "y"};

Poly linear_factor(Symbol x, const Integer& c) { return Poly(x) - Poly(c); }

std::string ideal_name(const Certificate& cert, const SymbolOrder& order) {
  std::string out = cert.setting == Setting::Nil ? "Nil(" : "sqrt(";
  bool first = true;
  for (const Poly& g : cert.generators.elements) {
    out += (first ? "" : "; ") + print_poly(g, order);
    first = false;
  }
  for (const Family& f : cert.generators.families) {
    out += (first ? "" : "; ") + print_poly(f.left, order) + " A " + print_poly(f.right, order);
    first = false;
  }
  return out + ")";
}

std::string paren(const Poly& p, const SymbolOrder& order) {
  std::string s = print_poly(p, order);
  return p.terms().size() > 1 ? "(" + s + ")" : s;
}

std::string node_ref(NodeId id) { return "n" + std::to_string(id); }

}  // namespace

CentralConstants::CentralConstants(std::vector<Integer> constants) : constants_(std::move(constants)) {
  if (constants_.empty()) throw std::invalid_argument("need at least one central constant");
  for (std::size_t i = 0; i < constants_.size(); ++i) {
    for (std::size_t j = i + 1; j < constants_.size(); ++j) {
      if (constants_[i] == constants_[j]) {
        throw std::invalid_argument("central constant " + constants_[i].get_str() + " repeats");
      }
    }
  }
}

bool certified_steps_valid(const ProofLog& log) {
  for (const ProofStep& step : log.steps) {
    if (step.kind != StepKind::Certified) continue;
    if (!step.cert_ref || step.cert_ref->certificate >= log.certificates.size()) return false;
    const Certificate& cert = log.certificates[step.cert_ref->certificate];
    if (step.cert_ref->first > step.cert_ref->last || step.cert_ref->last >= cert.nodes.size()) {
      return false;
    }
    if (!check_certificate(cert)) return false;
  }
  return true;
}

WitnessDag commutator_factor_witness(const Integer& c, Symbol x, Symbol y) {
  DagBuilder b(Setting::Nil, GeneratorSet{{linear_factor(x, c)}, {}});
  NodeId intro = b.intro(0);
  NodeId left = b.mult(1L, intro, Poly(y));
  NodeId right = b.mult(-Poly(y), intro, 1L);
  return b.finish(b.add(left, right));
}

namespace {

struct Fold {
  std::vector<WitnessDag> factors;
  std::vector<WitnessDag> partials;  // partials[k] covers constants 0..k
};

Fold fold_central_roots(const CentralConstants& cs, TransformOptions opts) {
  const Symbol x = Symbol::base("x");
  const Symbol y = Symbol::base("y");
  Fold fold;
  for (const Integer& c : cs.values()) fold.factors.push_back(commutator_factor_witness(c, x, y));
  fold.partials.push_back(fold.factors.front());
  Poly prefix = linear_factor(x, cs.values().front());
  for (std::size_t k = 1; k < cs.values().size(); ++k) {
    GeneratorSplit split{GeneratorSet{}, prefix, linear_factor(x, cs.values()[k])};
    fold.partials.push_back(nil_intersect(split, fold.partials.back(), fold.factors[k], opts));
    prefix = prefix * split.b;
  }
  return fold;
}

}  // namespace

Certificate central_roots_witness(const CentralConstants& cs, TransformOptions opts) {
  return to_certificate(fold_central_roots(cs, opts).partials.back(), kDemoSymbols);
}

Demo xn_demo(int n, TransformOptions opts) {
  std::vector<Integer> constants;
  if (n == 2) {
    constants = {Integer(0), Integer(1)};
  } else if (n == 3) {
    constants = {Integer(0), Integer(1), Integer(-1)};
  } else {
    throw UnsupportedDemo("x^" + std::to_string(n) +
                          " - x does not split into integer linear factors; supported: 2, 3");
  }
  CentralConstants cs(constants);
  Fold fold = fold_central_roots(cs, opts);
  const SymbolOrder order(std::vector<Symbol>{Symbol::base("x"), Symbol::base("y")});

  Demo demo;
  ProofLog& log = demo.log;
  auto add_cert = [&](const WitnessDag& dag) {
    log.certificates.push_back(to_certificate(dag, kDemoSymbols));
    return log.certificates.size() - 1;
  };
  auto certified = [&](std::size_t index, std::string justification) {
    const Certificate& cert = log.certificates[index];
    ProofStep step;
    step.kind = StepKind::Certified;
    step.statement = print_poly(cert.claim, order) + " ∈ " + ideal_name(cert, order);
    step.justification = std::move(justification);
    step.cert_ref = CertRef{index, 0, static_cast<NodeId>(cert.nodes.size() - 1)};
    log.steps.push_back(std::move(step));
  };

  for (std::size_t k = 0; k < fold.factors.size(); ++k) {
    std::size_t idx = add_cert(fold.factors[k]);
    certified(idx, "[x,y] = [x - c,y] with c = " + cs.values()[k].get_str() +
                       ", since integers are central");
  }
  for (std::size_t k = 1; k < fold.partials.size(); ++k) {
    std::size_t idx = add_cert(fold.partials[k]);
    certified(idx, "Corollary: Nil(U,a)∩Nil(U,b)⊆Nil(U,ab)");
  }
  demo.certificate = log.certificates.back();

  ProofStep replay;
  replay.kind = StepKind::Certified;
  replay.statement = "the certificate for " + print_poly(demo.certificate.claim, order) + " ∈ " +
                     ideal_name(demo.certificate, order) + " replays under the checker";
  replay.justification = "certificate replay";
  replay.cert_ref =
      CertRef{log.certificates.size() - 1, 0, static_cast<NodeId>(demo.certificate.nodes.size() - 1)};
  log.steps.push_back(std::move(replay));

  ProofStep reduced;
  reduced.kind = StepKind::Narrative;
  if (n == 3) {
    reduced.statement = "a ring with x^3 = x for all x is reduced";
    reduced.justification = "if z^2 = 0 then z = z^3 = z*z^2 = 0";
  } else {
    reduced.statement = "a ring with x^2 = x for all x is reduced";
    reduced.justification = "if z^2 = 0 then z = z^2 = 0";
  }
  log.steps.push_back(std::move(reduced));

  ProofStep instantiate;
  instantiate.kind = StepKind::Narrative;
  instantiate.statement = "such a ring is commutative";
  instantiate.justification = "instantiating x, y at any two elements sends the generator x^" +
                              std::to_string(n) +
                              " - x to 0, so x*y - y*x lies in Nil(0), which is 0 in a reduced ring";
  log.steps.push_back(std::move(instantiate));
  return demo;
}

std::string emit_proof_log(const Certificate& cert, LogStyle style) {
  Verdict verdict = check_certificate(cert);
  if (!verdict) throw InvalidCertificate("cannot replay: " + verdict.describe());
  const SymbolOrder order = cert.symbol_order();
  const bool md = style == LogStyle::Markdown;
  const char* member = cert.setting == Setting::Nil ? "∈ Nil U" : "∈ sqrt U";

  // Conclusions for display; the checker has already vouched for them.
  std::vector<Poly> concl(cert.nodes.size());
  std::ostringstream out;
  out << (md ? "### Replay\n\n" : "Replay\n");
  out << (md ? "U = " : "  U = ") << ideal_name(cert, order).substr(cert.setting == Setting::Nil ? 3 : 4)
      << "\n";
  if (md) out << "\n";
  for (std::size_t i = 0; i < cert.nodes.size(); ++i) {
    const Node& n = cert.nodes[i];
    std::string why;
    if (auto* x = std::get_if<node::Intro>(&n)) {
      concl[i] = cert.generators.elements[x->index];
      why = "intro: generator #" + std::to_string(x->index);
    } else if (auto* x = std::get_if<node::IntroFamily>(&n)) {
      const Family& f = cert.generators.families[x->index];
      concl[i] = f.left * x->instance * f.right;
      why = "intro: family " + paren(f.left, order) + "*A*" + paren(f.right, order) +
            " at " + paren(x->instance, order);
    } else if (std::holds_alternative<node::Zero>(n)) {
      why = "zero";
    } else if (auto* x = std::get_if<node::Add>(&n)) {
      concl[i] = concl[x->left] + concl[x->right];
      why = "add: " + node_ref(x->left) + " + " + node_ref(x->right);
    } else if (auto* x = std::get_if<node::Mult>(&n)) {
      concl[i] = x->left * concl[x->inner] * x->right;
      why = "mult: " + paren(x->left, order) + " * " + node_ref(x->inner) + " * " +
            paren(x->right, order);
    } else if (auto* x = std::get_if<node::Red>(&n)) {
      concl[i] = x->conclusion;
      why = "red: " + node_ref(x->premise) + " proves the square";
    } else if (auto* x = std::get_if<node::Semiprime>(&n)) {
      concl[i] = x->conclusion;
      why = "semiprime: " + node_ref(x->premise) + " proves c*" + x->bound.name() + "*c for fresh " +
            x->bound.name();
    }
    std::string line = node_ref(static_cast<NodeId>(i)) + ": " + print_poly(concl[i], order) + " " +
                       member + "  by " + why;
    if (i == cert.root) line += "  (claim)";
    out << (md ? "- " : "  ") << line << "\n";
  }
  return out.str();
}

std::string render_proof_log(const ProofLog& log, LogStyle style) {
  const bool md = style == LogStyle::Markdown;
  std::ostringstream out;
  out << (md ? "# Proof log\n\n" : "Proof log\n");
  std::size_t number = 1;
  for (const ProofStep& step : log.steps) {
    std::string tag = step.kind == StepKind::Certified ? "certified" : "narrative";
    std::string line = md ? "**" + tag + "** " + step.statement : "[" + tag + "] " + step.statement;
    if (!step.justification.empty()) line += " -- " + step.justification;
    if (step.cert_ref) {
      line += " [certificate " + std::to_string(step.cert_ref->certificate) + ", nodes " +
              node_ref(step.cert_ref->first) + ".." + node_ref(step.cert_ref->last) + "]";
    }
    out << (md ? "- " : std::to_string(number) + ". ") << line << "\n";
    ++number;
  }
  if (!log.certificates.empty()) {
    out << "\n" << emit_proof_log(log.certificates.back(), style);
  }
  return out.str();
}

}  // namespace nilcert
