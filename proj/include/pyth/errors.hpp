// Copyright 2026 The pyth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace pyth {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph: duplicate ids, dangling endpoints, empty vertex set.
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Two paths whose endpoints do not match.
class CompositionError : public Error {
 public:
  using Error::Error;
};

/// Module data that violates shape or relation requirements.
class ModuleError : public Error {
 public:
  using Error::Error;
};

/// Lens parameters with some weight sharing a factor with the cyclic order.
class CoprimalityError : public Error {
 public:
  CoprimalityError(std::size_t index, long weight, long order)
      : Error("weight m_" + std::to_string(index + 1) + " = " +
              std::to_string(weight) + " is not coprime to p = " +
              std::to_string(order)),
        index_(index) {}

  /// Zero-based position of the offending weight.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Level bookkeeping outside the materialized range of a truncated lift.
class LevelError : public Error {
 public:
  using Error::Error;
};

/// Graph outside the class the spectrum classifier covers.
class UnsupportedGraph : public Error {
 public:
  using Error::Error;
};

/// JSON input that does not match a schema. `pointer()` is a JSON pointer.
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : Error(pointer + ": " + what), pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace pyth
