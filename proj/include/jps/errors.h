// Copyright (c) 2026 The JPS Authors.
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

namespace jps {

// Raised when a game or search exceeds a configured size cap.
class SizeError : public std::runtime_error {
 public:
  explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a game description violates a structural invariant
// (perfect recall, inconsistent infosets, bad chance distribution).
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& what)
      : std::runtime_error(what) {}
};

// Raised when an operation is applied to a node of the wrong kind.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace jps
