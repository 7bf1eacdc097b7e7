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

#include <gtest/gtest.h>

#include <thread>

#include "httplib.h"
#include "sxseval/store.h"
#include "testing/campaign_fixture.h"
#include "testing/temp_dir.h"

namespace sxseval {
namespace {

using nlohmann::json;

TEST(HttpStatusTest, Mapping) {
  EXPECT_EQ(HttpStatus("E_BAD_REQUEST"), 400);
  EXPECT_EQ(HttpStatus("E_VALIDATION"), 400);
  EXPECT_EQ(HttpStatus("E_WRONG_ANNOTATOR"), 403);
  EXPECT_EQ(HttpStatus("E_UNKNOWN_TASK"), 404);
  EXPECT_EQ(HttpStatus("E_UNKNOWN_ANNOTATOR"), 404);
  EXPECT_EQ(HttpStatus("E_UNKNOWN_DOC"), 404);
  EXPECT_EQ(HttpStatus("E_STORE_WRITE"), 500);
}

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::Rng rng(5);
    testing::ProjectShape shape;
    shape.min_docs = 2;
    testing::SetUpCampaign(dir_.path(), testing::EmptyCampaignProject(rng, shape),
                           testing::Pool(3));
    campaign_ = std::make_unique<Campaign>(dir_.path());
    server_ = std::make_unique<Server>(*campaign_);
    port_ = server_->BindToAnyPort();
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->ListenAfterBind(); });
    server_->WaitUntilReady();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }

  void TearDown() override {
    server_->Stop();
    if (thread_.joinable()) thread_.join();
  }

  json Get(const std::string& path, int expected_status, const httplib::Headers& headers = {}) {
    auto res = client_->Get(path, headers);
    EXPECT_TRUE(res) << path;
    if (!res) return json();
    EXPECT_EQ(res->status, expected_status) << path << " " << res->body;
    return json::parse(res->body);
  }

  json Post(const std::string& path, const std::string& body, int expected_status,
            const httplib::Headers& headers = {}) {
    auto res = client_->Post(path, headers, body, "application/json");
    EXPECT_TRUE(res) << path;
    if (!res) return json();
    EXPECT_EQ(res->status, expected_status) << path << " " << res->body;
    return json::parse(res->body);
  }

  testing::TempDir dir_;
  std::unique_ptr<Campaign> campaign_;
  std::unique_ptr<Server> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(ServerTest, AnnotateWholeQueueOverHttp) {
  testing::Rng rng(2);
  int submitted = 0;
  for (;;) {
    const json next = Get("/api/tasks/next?annotator=ann1", 200);
    if (next["done"].get<bool>()) break;
    json body = testing::AnswerFor(next["task"], rng);
    body.erase("annotator");  // taken from the header
    const json ack =
        Post("/api/submissions", body.dump(), 200, {{"X-Annotator-Id", "ann1"}});
    EXPECT_EQ(ack["task_id"], next["task"]["id"]);
    EXPECT_EQ(ack["revision"], 0);
    ++submitted;
  }
  EXPECT_GT(submitted, 0);
  const json progress = Get("/api/progress", 200);
  EXPECT_EQ(progress["annotators"]["ann1"]["done"], submitted);
  EXPECT_EQ(progress["annotators"]["ann1"]["total"], submitted);

  const json exported = Post("/api/export", "", 200);
  EXPECT_FALSE(exported["files"].empty());
  EXPECT_EQ(LoadProject(dir_.path()), campaign_->Merged());
}

TEST_F(ServerTest, HeaderIdentifiesAnnotator) {
  const json next = Get("/api/tasks/next", 200, {{"X-Annotator-Id", "ann0"}});
  EXPECT_EQ(next["task"]["annotator"], "ann0");
}

TEST_F(ServerTest, ErrorBodies) {
  const json unknown = Get("/api/tasks/next?annotator=ghost", 404);
  EXPECT_EQ(unknown["code"], "E_UNKNOWN_ANNOTATOR");
  EXPECT_TRUE(unknown.contains("message"));
  EXPECT_TRUE(unknown.contains("detail"));

  EXPECT_EQ(Post("/api/submissions", "{oops", 400)["code"], "E_BAD_REQUEST");
  EXPECT_EQ(Post("/api/submissions", R"({"task_id":"nope","annotator":"ann0"})", 404)["code"],
            "E_UNKNOWN_TASK");

  const json task = Get("/api/tasks/next?annotator=ann0", 200)["task"];
  json stolen = {{"task_id", task["id"]}, {"annotator", "ann2"}, {"errors", json::array()}};
  EXPECT_EQ(Post("/api/submissions", stolen.dump(), 403)["code"], "E_WRONG_ANNOTATOR");
  EXPECT_EQ(Get("/api/context/nowhere", 404)["code"], "E_UNKNOWN_DOC");
}

TEST_F(ServerTest, Context) {
  const json task = Get("/api/tasks/next?annotator=ann2", 200)["task"];
  const std::string doc = task["doc_id"];
  const json ctx = Get("/api/context/" + doc + "?task=" + task["id"].get<std::string>(), 200,
                       {{"X-Annotator-Id", "ann2"}});
  EXPECT_EQ(ctx["doc_id"], doc);
  EXPECT_FALSE(ctx["segments"].empty());
}

TEST_F(ServerTest, ConcurrentSubmissionsAreAllJournaled) {
  std::vector<std::thread> workers;
  std::atomic<int> ok{0};
  for (const std::string who : {"ann0", "ann1", "ann2"}) {
    workers.emplace_back([&, who] {
      httplib::Client cli("127.0.0.1", port_);
      testing::Rng rng(std::hash<std::string>()(who));
      for (;;) {
        auto res = cli.Get("/api/tasks/next?annotator=" + who);
        if (!res || res->status != 200) return;
        const json next = json::parse(res->body);
        if (next["done"].get<bool>()) return;
        auto post = cli.Post("/api/submissions", testing::AnswerFor(next["task"], rng).dump(),
                             "application/json");
        if (!post || post->status != 200) return;
        ++ok;
      }
    });
  }
  for (auto& w : workers) w.join();
  const json progress = Get("/api/progress", 200);
  EXPECT_EQ(progress["done"], ok.load());
  EXPECT_EQ(progress["done"], progress["total"]);
  EXPECT_EQ(Journal::Read(JournalPath(dir_.path())).size(), static_cast<size_t>(ok.load()));
}

}  // namespace
}  // namespace sxseval
