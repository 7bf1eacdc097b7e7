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

#ifndef SXSEVAL_SERVER_H_
#define SXSEVAL_SERVER_H_

#include <filesystem>
#include <memory>
#include <string>

#include "sxseval/campaign.h"

namespace sxseval {

// HTTP status for a module error code: 400 for malformed or invalid input,
// 403 for another annotator's task, 404 for unknown ids, 500 otherwise.
int HttpStatus(const std::string& code);

struct ServerOptions {
  std::string host = "127.0.0.1";
  std::filesystem::path static_dir;  // served at "/" when set
};

// JSON API over a Campaign:
//   GET  /api/tasks/next?annotator=ID   (or X-Annotator-Id header)
//   POST /api/submissions
//   GET  /api/progress
//   POST /api/export
//   GET  /api/context/{doc_id}[?task=ID]
// Errors come back as {code, message, detail}.
class Server {
 public:
  Server(Campaign& campaign, ServerOptions options = {});
  ~Server();

  // Blocks until Stop(). Returns false when the port cannot be bound.
  bool Listen(int port);
  // Binds an ephemeral port and returns it; serve with ListenAfterBind().
  int BindToAnyPort();
  bool ListenAfterBind();
  void WaitUntilReady() const;
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sxseval

#endif  // SXSEVAL_SERVER_H_
