// Copyright 2026 The fairum Authors
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

#ifndef FAIRUM_ERRORS_HPP_
#define FAIRUM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fairum {

// Out-of-range agent/item indices and other broken preconditions.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A request that makes no sense for the operation (e.g. NONE passed to
// is_fair, n != 2 for the two-agent algorithm).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or out-of-bounds user data: instance files, generator payloads.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Enumeration budgets, state budgets, overflow guards.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TimeoutError : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

}  // namespace fairum

#endif  // FAIRUM_ERRORS_HPP_
