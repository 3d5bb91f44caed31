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

// Certified commutator membership: for central c1..cn,
//   [x,y] in Nil((x - c1)*...*(x - cn)),
// built by intersecting the one-factor facts [x,y] = [x - c,y] in Nil(x - c).
// With (c) = (0,1,-1) the generator is x^3 - x, which gives the x^3 = x
// commutativity theorem once two prose steps are added (rings with x^n = x
// are reduced; the generator vanishes identically there).

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilcert/transforms.hpp"
#include "nilcert/witness.hpp"

namespace nilcert {

class CentralConstants {
 public:
  /// Throws std::invalid_argument when empty or when a constant repeats.
  explicit CentralConstants(std::vector<Integer> constants);
  const std::vector<Integer>& values() const { return constants_; }

 private:
  std::vector<Integer> constants_;
};

enum class StepKind { Certified, Narrative };

struct CertRef {
  std::size_t certificate;  // index into ProofLog::certificates
  NodeId first;
  NodeId last;
};

struct ProofStep {
  std::string statement;
  std::string justification;
  StepKind kind = StepKind::Narrative;
  std::optional<CertRef> cert_ref;
};

struct ProofLog {
  std::vector<ProofStep> steps;
  std::vector<Certificate> certificates;
};

/// Every certified step refers to a certificate the checker accepts and to a
/// node range inside it.
bool certified_steps_valid(const ProofLog& log);

enum class LogStyle { Text, Markdown };

class UnsupportedDemo : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidCertificate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// add(mult(1, intro(x - c), y), mult(-y, intro(x - c), 1)) over {x - c},
/// concluding (x - c)*y - y*(x - c) = x*y - y*x.
WitnessDag commutator_factor_witness(const Integer& c, Symbol x, Symbol y);

/// [x,y] in Nil((x - c1)*...*(x - cn)) by a left fold of nil_intersect.
/// Symbols are "x" and "y". Conclusion degrees roughly double per factor:
/// n = 3 is instant, n = 4 takes tens of seconds.
Certificate central_roots_witness(const CentralConstants& cs, TransformOptions opts = {});

struct Demo {
  Certificate certificate;
  ProofLog log;
};

/// n = 2 or 3; anything else throws UnsupportedDemo.
Demo xn_demo(int n, TransformOptions opts = {});

/// Node-by-node replay naming the constructor used at each step. Throws
/// InvalidCertificate unless the checker accepts `cert`.
std::string emit_proof_log(const Certificate& cert, LogStyle style);

/// The steps of `log`, followed by the replay of its last certificate.
std::string render_proof_log(const ProofLog& log, LogStyle style);

}  // namespace nilcert
