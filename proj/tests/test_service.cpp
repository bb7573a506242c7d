#include "framing/record_store.hpp"
#include "framing/service.hpp"

#include "test_support.hpp"

#include <doctest.h>
#include <httplib.h>

#include <fstream>
#include <thread>

using namespace framing;
using nlohmann::json;
using test_support::TempDir;

namespace {

/// Delegates to a real store but fails the first `failures` appends.
class FlakyRepository : public RecordRepository {
 public:
  FlakyRepository(std::shared_ptr<RecordRepository> inner, int failures)
      : inner_(std::move(inner)), failures_(failures) {}

  std::string append(const ResponseRecord& r) override {
    ++attempts;
    if (failures_ > 0) {
      --failures_;
      fail(ErrorKind::persistence, "injected write failure");
    }
    return inner_->append(r);
  }
  std::vector<ResponseRecord> load(std::optional<int> version) const override { return inner_->load(version); }

  int attempts = 0;

 private:
  std::shared_ptr<RecordRepository> inner_;
  int failures_;
};

std::string answer_body(int choice) { return json{{"choice", choice}, {"response_time_ms", 1500}}.dump(); }

void play_through(ExperimentService& svc, const std::string& id, int last = 7) {
  for (int q = 1; q <= last; ++q) REQUIRE(svc.answer(id, q, answer_body(1 + q % 2)).status == 200);
}

}  // namespace

TEST_CASE("sessions alternate versions and validate demographics") {
  TempDir dir;
  ExperimentService svc(std::make_shared<RecordStore>(dir / "r.jsonl"));
  auto a = svc.create_session("{}");
  auto b = svc.create_session(R"({"gender":"female","age":30,"education":"university"})");
  auto c = svc.create_session("");
  CHECK(a.status == 200);
  CHECK(a.body["version"] == 1);
  CHECK(b.body["version"] == 2);
  CHECK(c.body["version"] == 1);
  CHECK(a.body["state"]["health_display"] == "1/250");
  CHECK(a.body["state"]["gold_display"] == "12");

  CHECK(svc.create_session(R"({"age":-1})").status == 400);
  CHECK(svc.create_session(R"({"age":"old"})").status == 400);
  CHECK(svc.create_session(R"({"nickname":"x"})").status == 400);
  CHECK(svc.create_session("[1]").status == 400);
  CHECK(svc.create_session("{oops").status == 400);
  CHECK(svc.live_sessions() == 3);
}

TEST_CASE("question access follows gating") {
  TempDir dir;
  ExperimentService svc(std::make_shared<RecordStore>(dir / "r.jsonl"));
  std::string id = svc.create_session("{}").body["session_id"];
  CHECK(svc.get_question("nope", 1).status == 404);
  CHECK(svc.get_question(id, 9).status == 404);
  CHECK(svc.get_question(id, 3).status == 423);
  auto q1 = svc.get_question(id, 1);
  REQUIRE(q1.status == 200);
  CHECK(q1.body["answer_one"].get<std::string>().find("Potion A will recover 150") != std::string::npos);
  CHECK(svc.answer(id, 3, answer_body(1)).status == 423);
  auto r = svc.answer(id, 1, answer_body(2));
  CHECK(r.status == 200);
  CHECK(r.body["effects"]["alert"] == "150 health points gained!");
  CHECK(r.body["state"]["health_display"] == "150/250");
  CHECK(svc.get_question(id, 1).status == 409);
  CHECK(svc.answer(id, 1, answer_body(1)).status == 409);
  CHECK(svc.answer(id, 2, R"({"choice":3})").status == 400);
  CHECK(svc.answer(id, 2, R"({})").status == 400);
  CHECK(svc.answer(id, 2, R"({"choice":1,"extra":true})").status == 400);
  auto s = svc.get_session(id);
  CHECK(s.body["available_tasks"] == json::array({2}));
}

TEST_CASE("the seventh answer finalizes exactly once") {
  TempDir dir;
  auto store = std::make_shared<RecordStore>(dir / "r.jsonl");
  ExperimentService svc(store);
  std::string id = svc.create_session(R"({"age":22})").body["session_id"];
  play_through(svc, id, 6);
  CHECK(store->size() == 0);
  auto last = svc.answer(id, 7, answer_body(2));
  CHECK(last.status == 200);
  CHECK(last.body["state"]["finalized"] == true);
  CHECK(store->size() == 1);
  CHECK(svc.answer(id, 7, answer_body(2)).status == 409);
  CHECK(svc.get_session(id).status == 200);
  CHECK(store->size() == 1);
  auto rec = store->load().at(0);
  CHECK(rec.age == 22);
  CHECK(rec.answers == std::vector<int>{2, 1, 2, 1, 2, 1, 2});
}

TEST_CASE("a failed write is retried until it lands") {
  TempDir dir;
  auto store = std::make_shared<RecordStore>(dir / "r.jsonl");
  auto flaky = std::make_shared<FlakyRepository>(store, 2);
  ExperimentService svc(flaky);
  std::string id = svc.create_session("{}").body["session_id"];
  play_through(svc, id, 6);
  auto last = svc.answer(id, 7, answer_body(1));
  CHECK(last.status == 500);
  CHECK(last.body["error"] == "persistence");
  CHECK(svc.get_session(id).status == 500);
  auto ok = svc.get_session(id);
  CHECK(ok.status == 200);
  CHECK(ok.body["state"]["finalized"] == true);
  CHECK(flaky->attempts == 3);
  CHECK(store->size() == 1);
}

TEST_CASE("summary") {
  TempDir dir;
  auto store = std::make_shared<RecordStore>(dir / "r.jsonl");
  ExperimentService svc(store);
  auto empty = svc.summary();
  CHECK(empty.status == 200);
  CHECK(empty.body["n_v1"] == 0);

  for (int i = 0; i < 10; ++i) {
    std::string id = svc.create_session("{}").body["session_id"];
    play_through(svc, id);
  }
  auto full = svc.summary();
  CHECK(full.status == 200);
  CHECK(full.body["n_v1"] == 5);
  CHECK(full.body["n_v2"] == 5);
  CHECK(full.body["questions"].size() == 7);

  std::ofstream(dir / "r.jsonl", std::ios::app) << "{\"truncated\":";
  CHECK(svc.summary().status == 500);
}

TEST_CASE("without a store nothing starts") {
  ExperimentService svc(nullptr);
  CHECK(svc.create_session("{}").status == 503);
  CHECK(svc.summary().status == 503);
  CHECK(svc.create_session(R"({"age":500})").status == 400);
}

TEST_CASE("status mapping covers every error kind") {
  CHECK(http_status(ErrorKind::validation) == 400);
  CHECK(http_status(ErrorKind::domain) == 400);
  CHECK(http_status(ErrorKind::not_found) == 404);
  CHECK(http_status(ErrorKind::already_answered) == 409);
  CHECK(http_status(ErrorKind::incomplete) == 409);
  CHECK(http_status(ErrorKind::locked) == 423);
  CHECK(http_status(ErrorKind::configuration) == 500);
  CHECK(http_status(ErrorKind::persistence) == 500);
  CHECK(http_status(ErrorKind::corrupt_store) == 500);
}

TEST_CASE("routes over a live socket") {
  TempDir dir;
  ExperimentService svc(std::make_shared<RecordStore>(dir / "r.jsonl"));
  httplib::Server server;
  svc.mount(server);
  int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/api/v1/sessions", "{}", "application/json");
  REQUIRE(created);
  CHECK(created->status == 200);
  std::string id = json::parse(created->body)["session_id"];
  std::string base = "/api/v1/sessions/" + id;

  auto q = client.Get(base + "/questions/1");
  REQUIRE(q);
  CHECK(q->status == 200);
  CHECK(client.Get(base + "/questions/5")->status == 423);
  CHECK(client.Get(base + "/questions/abc")->status == 404);
  CHECK(client.Get("/api/v1/sessions/unknown")->status == 404);
  for (int n = 1; n <= 7; ++n) {
    auto r = client.Post(base + "/questions/" + std::to_string(n) + "/answer", answer_body(1), "application/json");
    REQUIRE(r);
    CHECK(r->status == 200);
  }
  auto state = json::parse(client.Get(base)->body);
  CHECK(state["state"]["finalized"] == true);
  auto summary = client.Get("/api/v1/analysis/summary");
  REQUIRE(summary);
  CHECK(json::parse(summary->body)["n_v1"] == 1);

  server.stop();
  worker.join();
}
