// Copyright 2026 The qramsey Authors
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

namespace qramsey {

// Error taxonomy, mapped by the CLI front end onto process exit statuses:
//   UsageError          -> 2  (bad flags, malformed values)
//   ConfigError         -> 3  (validated input that cannot describe a run)
//   CutoffOverflowError -> 3  (truncated space too small for the dynamics)
//   ContractError       -> 4  (a numerical invariant of the library failed)
//   IoError             -> 5

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Population reached the top rung of the upper-level manifold, where the
// Jaynes-Cummings coupling would move amplitude beyond the Fock cutoff.
class CutoffOverflowError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// An internal numerical contract was violated (norm drift, a probability
// outside [0,1] beyond tolerance, disagreement between two routes that must
// coincide). Always a bug or a silently inadequate configuration; never
// clamped away.
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qramsey
