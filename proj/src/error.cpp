// Copyright 2026 The clwe Authors
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

#include "clwe/error.hpp"

#include <iostream>
#include <mutex>

namespace clwe {
namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler() {
  static WarningHandler h = [](std::string_view msg) {
    std::cerr << "clwe: warning: " << msg << '\n';
  };
  return h;
}

}  // namespace

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "io";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDegenerateSeed: return "degenerate_seed";
    case ErrorCode::kCollapsed: return "collapsed";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

void set_warning_handler(WarningHandler h) {
  std::lock_guard lock(handler_mutex());
  handler() = h ? std::move(h) : [](std::string_view) {};
}

void warn(std::string_view message) {
  std::lock_guard lock(handler_mutex());
  handler()(message);
}

}  // namespace clwe
