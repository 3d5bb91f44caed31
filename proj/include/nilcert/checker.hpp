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

// Trusted certificate checker.
//
// This is the only code that decides whether a certificate is a proof. It
// depends on ring arithmetic and the plain Certificate record and nothing
// else; in particular it never trusts cached conclusions or anything built
// by DagBuilder or the transforms.

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "nilcert/witness.hpp"

namespace nilcert {

enum class Reason {
  BadRef,
  Cycle,
  RedSquareMismatch,
  SemiprimeShape,
  SemiprimeCapture,
  WrongSetting,
  ClaimMismatch,
  GenIndex,
};

/// Machine-readable code, e.g. "RED_SQUARE_MISMATCH".
std::string_view reason_code(Reason r);

struct Verdict {
  bool valid = true;
  /// First offending node, when the failure is attributable to one.
  std::optional<NodeId> node;
  Reason reason = Reason::BadRef;
  std::string detail;

  explicit operator bool() const { return valid; }
  /// "valid" or "invalid: node 4: RED_SQUARE_MISMATCH (...)".
  std::string describe() const;
};

/// Validates every node (reachable or not). When several nodes are bad the
/// one with the smallest id is reported; reference and cycle errors take
/// precedence over side conditions, and the claim is compared last.
Verdict check_certificate(const Certificate& cert);

}  // namespace nilcert
