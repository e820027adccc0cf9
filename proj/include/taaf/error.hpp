// Copyright 2026 The TAAF Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace taaf {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lookup of a catalog entry, record, direct form or bench subject failed.
class UnknownIdError : public Error {
 public:
  explicit UnknownIdError(const std::string& kind, const std::string& id)
      : Error("unknown " + kind + " '" + id + "'"), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

// A fixed parameter or binding value lies outside its declared domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A parameter expression divided by zero.
class DivisionGuardError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid node, record, dataset or config.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// A numerical routine met a non-finite intermediate value.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input (JSON, prefix expressions).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace taaf
