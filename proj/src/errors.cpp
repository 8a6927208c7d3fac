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

#include "poflow/errors.hpp"

namespace poflow {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::EmptyEntityName: return "EmptyEntityName";
    case Errc::InvalidEntityName: return "InvalidEntityName";
    case Errc::InvalidFlowId: return "InvalidFlowId";
    case Errc::DuplicateEntity: return "DuplicateEntity";
    case Errc::UndeclaredEntity: return "UndeclaredEntity";
    case Errc::FlowIdCollision: return "FlowIdCollision";
    case Errc::EntityInMultipleFlows: return "EntityInMultipleFlows";
    case Errc::SplitGroupTooSmall: return "SplitGroupTooSmall";
    case Errc::SplitMemberUnknown: return "SplitMemberUnknown";
    case Errc::SplitMembersSameFlow: return "SplitMembersSameFlow";
    case Errc::UnknownEntity: return "UnknownEntity";
    case Errc::UnknownFlow: return "UnknownFlow";
    case Errc::UnknownClass: return "UnknownClass";
    case Errc::UnknownChannel: return "UnknownChannel";
    case Errc::NameCollision: return "NameCollision";
    case Errc::DuplicateAlias: return "DuplicateAlias";
    case Errc::UnknownAlias: return "UnknownAlias";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownDirective: return "UnknownDirective";
    case Errc::UnsatisfiableSpec: return "UnsatisfiableSpec";
    case Errc::FlowMismatch: return "FlowMismatch";
    case Errc::PosetTooLarge: return "PosetTooLarge";
  }
  return "UnknownError";
}

namespace {

std::string make_message(Errc code, const std::string& detail, int line) {
  std::string msg;
  if (line > 0) {
    msg += "line ";
    msg += std::to_string(line);
    msg += ": ";
  }
  msg += errc_name(code);
  msg += ": ";
  msg += detail;
  return msg;
}

}  // namespace

Error::Error(Errc code, const std::string& detail, int line)
    : std::runtime_error(make_message(code, detail, line)), code_(code), line_(line) {}

}  // namespace poflow
