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

// Witness transformers.
//
// Permutation facts for reduced ideals:
//   rotate   u*v in I   =>  v*u in I          red(mult(v, w, u)),  v*(u*v)*u = (v*u)^2
//   insert   u*v in I   =>  u*r*v in I        red(mult(u*r, rotate(w), r*v))
//   permute  x1*...*xn in I  =>  x_s(1)*...*x_s(n) in I
//
// Product theorems, by structural recursion on the input witnesses:
//   nil_product    x in Nil(U,a), y in Nil(U,b)   =>  x*y in Nil(U, a*b)
//   nil_intersect  c in Nil(U,a), c in Nil(U,b)   =>  c in Nil(U, a*b)
//   sqrt_product   x in sqrt(U,a), y in sqrt(U,b) =>  x*m*y in sqrt(U, aAb)
//   sqrt_intersect c in sqrt(U,a), c in sqrt(U,b) =>  c in sqrt(U, aAb)
//
// None of these are trusted: every output is meant to be re-validated by
// check_certificate.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilcert/witness.hpp"

namespace nilcert {

class TransformError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The caller's factorization does not multiply out to the conclusion.
class FactorizationMismatch : public TransformError {
 public:
  using TransformError::TransformError;
};

class SettingMismatch : public TransformError {
 public:
  using TransformError::TransformError;
};

class GeneratorMismatch : public TransformError {
 public:
  using TransformError::TransformError;
};

class ConclusionMismatch : public TransformError {
 public:
  using TransformError::TransformError;
};

class InvalidPermutation : public TransformError {
 public:
  using TransformError::TransformError;
};

/// A bijection of {1..n}, stored as the images sigma(1), ..., sigma(n).
class Permutation {
 public:
  /// Throws InvalidPermutation unless `image` is a bijection of {1..n}.
  explicit Permutation(std::vector<std::size_t> image);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return image_.size(); }
  /// 1-based, like the images themselves.
  std::size_t operator()(std::size_t i) const { return image_.at(i - 1); }
  const std::vector<std::size_t>& image() const { return image_; }
  bool is_identity() const;

 private:
  std::vector<std::size_t> image_;
};

struct TransformOptions {
  std::size_t max_nodes = kDefaultMaxNodes;
};

/// The generator sets U+{a} and U+{b} of the two inputs of a product.
struct GeneratorSplit {
  GeneratorSet common;
  Poly a;
  Poly b;
};

/// Finds U, a, b for two generator sets that differ in exactly one element
/// position (or are identical, in which case the last element is taken as
/// distinguished). Throws GeneratorMismatch otherwise.
GeneratorSplit infer_split(const GeneratorSet& p, const GeneratorSet& q);

// Builder-level primitives; they append to `b` and return the new root.
NodeId rotate(DagBuilder& b, NodeId w, const Poly& u, const Poly& v);
NodeId insert(DagBuilder& b, NodeId w, const Poly& u, const Poly& v, const Poly& r);
NodeId permute(DagBuilder& b, NodeId w, std::span<const Poly> factors, const Permutation& sigma);

WitnessDag rotate(const WitnessDag& w, const Poly& u, const Poly& v, TransformOptions opts = {});
WitnessDag insert(const WitnessDag& w, const Poly& u, const Poly& v, const Poly& r,
                  TransformOptions opts = {});
WitnessDag permute(const WitnessDag& w, std::span<const Poly> factors, const Permutation& sigma,
                   TransformOptions opts = {});

/// Output generators: U followed by a*b.
WitnessDag nil_product(const GeneratorSplit& split, const WitnessDag& p, const WitnessDag& q,
                       TransformOptions opts = {});
WitnessDag nil_intersect(const GeneratorSplit& split, const WitnessDag& p, const WitnessDag& q,
                         TransformOptions opts = {});

/// Output generators: U's elements; U's families followed by (a, b).
WitnessDag sqrt_product(const GeneratorSplit& split, const WitnessDag& p, const WitnessDag& q,
                        const Poly& m, TransformOptions opts = {});
WitnessDag sqrt_intersect(const GeneratorSplit& split, const WitnessDag& p, const WitnessDag& q,
                          TransformOptions opts = {});

}  // namespace nilcert
