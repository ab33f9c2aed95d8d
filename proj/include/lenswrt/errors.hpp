// Copyright 2026 The lenswrt Authors
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

namespace lenswrt {

/// Base class of every error thrown by the library. `name()` is a stable
/// identifier (e.g. "RankDeficient") suitable for machine-readable output.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Input violates an operation's precondition.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what,
                           std::string name = "InvalidArgument")
      : Error(std::move(name), what) {}
};

/// The computation itself could not produce a result.
class ComputationError : public Error {
 public:
  ComputationError(std::string name, const std::string& what)
      : Error(std::move(name), what) {}
};

inline void require(bool cond, const std::string& what,
                    const char* name = "InvalidArgument") {
  if (!cond) throw ValidationError(what, name);
}

}  // namespace lenswrt
