// Copyright 2026 The poflow Authors
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

#ifndef POFLOW_ERRORS_HPP_
#define POFLOW_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace poflow {

// Every failure the engine raises by throwing. Decision evaluation never
// throws; the PDP fails closed with a Deny instead (see pdp.hpp).
enum class Errc {
  EmptyEntityName,
  InvalidEntityName,
  InvalidFlowId,
  DuplicateEntity,
  UndeclaredEntity,
  FlowIdCollision,
  EntityInMultipleFlows,
  SplitGroupTooSmall,
  SplitMemberUnknown,
  SplitMembersSameFlow,
  UnknownEntity,
  UnknownFlow,
  UnknownClass,
  UnknownChannel,
  NameCollision,
  DuplicateAlias,
  UnknownAlias,
  SyntaxError,
  UnknownDirective,
  UnsatisfiableSpec,
  FlowMismatch,
  PosetTooLarge,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail, int line = 0);

  Errc code() const noexcept { return code_; }
  // 1-based input line for parse-time errors, 0 when not tied to a file.
  int line() const noexcept { return line_; }

 private:
  Errc code_;
  int line_;
};

}  // namespace poflow

#endif  // POFLOW_ERRORS_HPP_
