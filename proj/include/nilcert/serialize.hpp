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

// Certificate files: UTF-8 JSON.
//
//   {"version": 1, "setting": "nil" | "sqrt", "symbols": [...],
//    "generators": [Poly...], "families": [{"left": Poly, "right": Poly}...],
//    "claim": Poly, "nodes": [{"id": 0, "op": ..., ...}...], "root": id}
//
// A Poly is a list of ["<decimal coefficient>", ["sym", ...]] pairs in
// graded-lex order over the declared symbols, highest degree first. Base
// symbols must be declared; schematic symbols are written "$<uid>".
//
// Node fields by op:
//   intro        index
//   intro_family index, instance
//   zero         -
//   add          left, right              (node ids)
//   mult         left, inner, right       (Poly, node id, Poly)
//   red          premise, conclusion
//   semiprime    bound, premise, conclusion

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nilcert/witness.hpp"

namespace nilcert {

inline constexpr int kCertificateVersion = 1;

/// The input is not a structurally well-formed certificate. `offset()` is
/// the byte offset for JSON syntax errors (including truncation); structural
/// errors carry the JSON pointer of the offending value instead.
class MalformedInput : public std::runtime_error {
 public:
  MalformedInput(const std::string& msg, std::optional<std::size_t> offset, std::string pointer);

  std::optional<std::size_t> offset() const { return offset_; }
  const std::string& pointer() const { return pointer_; }

 private:
  std::optional<std::size_t> offset_;
  std::string pointer_;
};

class VersionError : public MalformedInput {
 public:
  explicit VersionError(long long version);
  long long version() const { return version_; }

 private:
  long long version_;
};

/// Deterministic: equal certificates serialize to identical bytes.
std::string serialize(const Certificate& cert);
Certificate deserialize(std::string_view bytes);

}  // namespace nilcert
