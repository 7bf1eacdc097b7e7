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

#include "sxseval/server.h"

#include <map>

#include "httplib.h"
#include "json.hpp"
#include "sxseval/error.h"

namespace sxseval {
using nlohmann::json;

int HttpStatus(const std::string& code) {
  static const std::map<std::string, int> kStatus = {
      {"E_BAD_REQUEST", 400},      {"E_VALIDATION", 400},     {"E_WRONG_ANNOTATOR", 403},
      {"E_UNKNOWN_TASK", 404},     {"E_UNKNOWN_ANNOTATOR", 404}, {"E_UNKNOWN_DOC", 404},
      {"E_STORE_WRITE", 500},
  };
  auto it = kStatus.find(code);
  return it == kStatus.end() ? 500 : it->second;
}

namespace {

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump() + "\n", "application/json; charset=utf-8");
}

void ReplyError(httplib::Response& res, const Error& e) {
  Reply(res, HttpStatus(e.code()),
        {{"code", e.code()}, {"message", e.message()}, {"detail", e.detail()}});
}

std::string Annotator(const httplib::Request& req) {
  if (req.has_param("annotator")) return req.get_param_value("annotator");
  return req.get_header_value("X-Annotator-Id");
}

// Runs a handler, mapping module errors and stray exceptions to JSON.
template <typename F>
httplib::Server::Handler Guard(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      ReplyError(res, e);
    } catch (const json::exception& e) {
      ReplyError(res, Error("E_BAD_REQUEST", "malformed JSON", e.what()));
    } catch (const std::exception& e) {
      ReplyError(res, Error("E_INTERNAL", "internal error", e.what()));
    }
  };
}

}  // namespace

struct Server::Impl {
  Impl(Campaign& c, ServerOptions o) : campaign(c), options(std::move(o)) {}

  Campaign& campaign;
  ServerOptions options;
  httplib::Server http;
};

Server::Server(Campaign& campaign, ServerOptions options)
    : impl_(std::make_unique<Impl>(campaign, std::move(options))) {
  Campaign& c = impl_->campaign;
  httplib::Server& http = impl_->http;

  http.Get("/api/tasks/next", Guard([&c](const httplib::Request& req, httplib::Response& res) {
             const std::string annotator = Annotator(req);
             if (annotator.empty()) throw Error("E_BAD_REQUEST", "annotator id missing");
             const auto task = c.NextTask(annotator);
             Reply(res, 200, task ? json{{"done", false}, {"task", *task}} : json{{"done", true}});
           }));

  http.Post("/api/submissions", Guard([&c](const httplib::Request& req, httplib::Response& res) {
              json body = json::parse(req.body);
              if (!body.is_object()) throw Error("E_BAD_REQUEST", "submission must be an object");
              const std::string header = req.get_header_value("X-Annotator-Id");
              if (!body.contains("annotator") && !header.empty()) body["annotator"] = header;
              const SubmitAck ack = c.Submit(body);
              Reply(res, 200,
                    {{"task_id", ack.task_id}, {"seq", ack.seq}, {"revision", ack.revision}});
            }));

  http.Get("/api/progress", Guard([&c](const httplib::Request&, httplib::Response& res) {
             Reply(res, 200, c.Progress());
           }));

  http.Post("/api/export", Guard([&c](const httplib::Request&, httplib::Response& res) {
              Reply(res, 200, {{"files", c.Export()}});
            }));

  http.Get(R"(/api/context/([^/]+))",
           Guard([&c](const httplib::Request& req, httplib::Response& res) {
             const std::string task = req.has_param("task") ? req.get_param_value("task") : "";
             Reply(res, 200, c.Context(req.matches[1].str(), task, Annotator(req)));
           }));

  if (!impl_->options.static_dir.empty()) {
    http.set_mount_point("/", impl_->options.static_dir.string());
  }
}

Server::~Server() { Stop(); }

bool Server::Listen(int port) { return impl_->http.listen(impl_->options.host, port); }

int Server::BindToAnyPort() { return impl_->http.bind_to_any_port(impl_->options.host); }

bool Server::ListenAfterBind() { return impl_->http.listen_after_bind(); }

void Server::WaitUntilReady() const { impl_->http.wait_until_ready(); }

void Server::Stop() { impl_->http.stop(); }

}  // namespace sxseval
