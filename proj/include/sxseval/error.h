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

#ifndef SXSEVAL_ERROR_H_
#define SXSEVAL_ERROR_H_

#include <stdexcept>
#include <string>

namespace sxseval {

// Failure with a stable machine-readable code such as "E_SPAN_BOUNDS".
// `detail` carries positional context (row number, key) when available.
class Error : public std::runtime_error {
 public:
  Error(std::string code, std::string message, std::string detail = "");

  const std::string& code() const { return code_; }
  const std::string& message() const { return message_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string code_;
  std::string message_;
  std::string detail_;
};

}  // namespace sxseval

#endif  // SXSEVAL_ERROR_H_
