// Copyright 2026 The sxseval Authors.
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

#include "sxseval/error.h"

#include <utility>

namespace sxseval {
namespace {

std::string Render(const std::string& code, const std::string& message,
                   const std::string& detail) {
  std::string out = code + ": " + message;
  if (!detail.empty()) out += " (" + detail + ")";
  return out;
}

}  // namespace

Error::Error(std::string code, std::string message, std::string detail)
    : std::runtime_error(Render(code, message, detail)),
      code_(std::move(code)),
      message_(std::move(message)),
      detail_(std::move(detail)) {}

}  // namespace sxseval
