// Copyright 2026 The hypercpf Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace hypercpf {

// Parameter or input failed a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The cavity reflection formula hit an exact zero denominator.
class DegeneratePoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A state needed normalizing but has zero norm.
class ZeroNormError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Two states live on different mode spaces (or dense dimensions differ).
class ModeMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// |c| is too small for post-selection to leave a usable state.
class GateInoperativeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hypercpf
