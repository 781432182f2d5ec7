// Copyright 2026 The fmasim Authors.
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

#ifndef FMASIM_ERRORS_HPP_
#define FMASIM_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace fmasim {

// Vector/matrix sizes that do not agree with the model.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A singular or badly conditioned matrix where an inverse is required
// (effective inertia, Jacobian, fixture basis, weighting matrix).
class DegenerateConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite state produced by an integrator.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario file problems. Carries the offending line (0 when unknown) and key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::size_t line = 0,
              std::string key = {})
      : std::runtime_error(Format(message, line, key)),
        line_(line),
        key_(std::move(key)) {}

  std::size_t line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  static std::string Format(const std::string& message, std::size_t line,
                            const std::string& key) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!key.empty()) out += "'" + key + "': ";
    return out + message;
  }

  std::size_t line_;
  std::string key_;
};

namespace detail {

inline void RequireSize(std::ptrdiff_t actual, std::ptrdiff_t expected,
                        const char* what) {
  if (actual != expected) {
    throw DimensionError(std::string(what) + ": expected size " +
                         std::to_string(expected) + ", got " +
                         std::to_string(actual));
  }
}

}  // namespace detail
}  // namespace fmasim

#endif  // FMASIM_ERRORS_HPP_
