#include "framing/error.hpp"
#include "framing/session.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

using namespace framing;

namespace {

ErrorKind kind_of_failure(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::validation;
}

// Precedence oracle written from the quest layout: the gate (task 2) opens
// the town, the ambush (task 5) opens the clinic and the mayor.
bool respects_precedence(const std::vector<int>& order) {
  auto pos = [&](int t) { return std::find(order.begin(), order.end(), t) - order.begin(); };
  for (int t : {3, 4, 5}) {
    if (pos(t) < pos(2)) return false;
  }
  for (int t : {6, 7}) {
    if (pos(t) < pos(5)) return false;
  }
  return true;
}

void enumerate(const SessionState& s, std::vector<int>& prefix, std::set<std::vector<int>>& orders,
               std::vector<SessionState>& finals) {
  auto open = available_tasks(s);
  if (open.empty()) {
    orders.insert(prefix);
    finals.push_back(s);
    return;
  }
  for (int t : open) {
    prefix.push_back(t);
    enumerate(submit_answer(s, t, 1).state, prefix, orders, finals);
    prefix.pop_back();
  }
}

SessionState complete(SessionState s, const std::vector<int>& order, const std::vector<int>& choices) {
  for (std::size_t i = 0; i < order.size(); ++i) s = submit_answer(s, order[i], choices[i]).state;
  return s;
}

}  // namespace

TEST_CASE("start_session") {
  auto s = start_session({}, 1);
  CHECK(s.player.health == 1);
  CHECK(s.player.gold_display() == "12");
  CHECK(s.player.health_display() == "1/250");
  CHECK(s.session_id.size() == 32);
  CHECK(start_session({}, 1).session_id != s.session_id);
  CHECK(start_session({"", 30, ""}, 2, "fixed").session_id == "fixed");
  CHECK(kind_of_failure([] { start_session({"", 200, ""}, 1); }) == ErrorKind::validation);
  CHECK(kind_of_failure([] { start_session({"", -1, ""}, 1); }) == ErrorKind::validation);
  CHECK(kind_of_failure([] { start_session({}, 3); }) == ErrorKind::validation);
}

TEST_CASE("gating examples") {
  auto s = start_session({}, 1, "g");
  CHECK(available_tasks(s) == std::vector<int>{1, 2});
  CHECK(kind_of_failure([&] { submit_answer(s, 3, 1); }) == ErrorKind::locked);
  s = submit_answer(s, 2, 1).state;
  CHECK(available_tasks(s) == std::vector<int>{1, 3, 4, 5});
  CHECK(kind_of_failure([&] { submit_answer(s, 6, 1); }) == ErrorKind::locked);
  s = submit_answer(s, 5, 2).state;
  CHECK(available_tasks(s) == std::vector<int>{1, 3, 4, 6, 7});
  CHECK(kind_of_failure([&] { submit_answer(s, 5, 1); }) == ErrorKind::already_answered);
  CHECK(kind_of_failure([&] { submit_answer(s, 8, 1); }) == ErrorKind::validation);
  CHECK(kind_of_failure([&] { submit_answer(s, 1, 3); }) == ErrorKind::validation);
}

TEST_CASE("golden in-order trace") {
  auto s = start_session({}, 1, "golden");
  struct Step {
    const char* alert;
    int health;
    const char* health_display;
    const char* gold;
    std::optional<std::string> bonus;
  };
  const Step steps[] = {
      {"150 health points gained!", 150, "150/250", "12", std::nullopt},
      {"3 gold coins lost!", 150, "150/250", "9", std::nullopt},
      {"3.5 gold coins gained!", 150, "150/250", "12.5", std::nullopt},
      {"You've won the dagger!", 150, "150/250", "12.5", "+20"},
      {"You've been injured!", 30, "30/250", "12.5", "+20"},
      {"Healing steadily!", 250, "250/250", "12.5", "+20"},
  };
  for (int task = 1; task <= 6; ++task) {
    CAPTURE(task);
    auto r = submit_answer(s, task, task % 2 + 1);
    s = r.state;
    const Step& e = steps[task - 1];
    CHECK(r.consequence.alert_text == e.alert);
    CHECK(s.player.health == e.health);
    CHECK(s.player.health_display() == e.health_display);
    CHECK(s.player.gold_display() == e.gold);
    CHECK(s.player.bonus_display == e.bonus);
    CHECK_FALSE(r.continuation.empty());
    if (task == 2) CHECK(s.gate_open);
    if (task == 5) {
      bool unlock = std::any_of(r.consequence.effects.begin(), r.consequence.effects.end(), [](const Effect& ef) {
        auto* u = std::get_if<UnlockTasks>(&ef);
        return u && u->tasks == std::vector<int>{6, 7};
      });
      CHECK(unlock);
      CHECK(available_tasks(s) == std::vector<int>{6, 7});
    }
  }
  CHECK_FALSE(is_complete(s));
  s = submit_answer(s, 7, 1).state;
  CHECK(is_complete(s));
  CHECK(available_tasks(s).empty());
}

TEST_CASE("gold trace through the gate and the butcher") {
  auto s = start_session({}, 2, "gold");
  s = submit_answer(s, 2, 2).state;
  CHECK(s.player.gold == Amount::units(9));
  s = submit_answer(s, 3, 1).state;
  CHECK(s.player.gold == Amount::from_tenths(125));
}

TEST_CASE("every valid order respects precedence and ends in the same state") {
  std::set<std::vector<int>> orders;
  std::vector<SessionState> finals;
  std::vector<int> prefix;
  enumerate(start_session({}, 1, "enum"), prefix, orders, finals);

  std::set<std::vector<int>> oracle;
  std::vector<int> perm(7);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    if (respects_precedence(perm)) oracle.insert(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  CHECK(orders == oracle);
  CHECK(finals.size() == orders.size());
  for (const auto& o : orders) CHECK(o.size() == 7);
  for (const auto& f : finals) {
    CHECK(is_complete(f));
    CHECK(f == finals.front());
  }
}

TEST_CASE("consequences do not depend on the chosen answer") {
  std::mt19937_64 rng(3);
  std::vector<int> order{2, 1, 3, 5, 4, 7, 6};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> a(7), b(7);
    for (int i = 0; i < 7; ++i) {
      a[i] = 1 + static_cast<int>(rng() % 2);
      b[i] = 1 + static_cast<int>(rng() % 2);
    }
    auto sa = complete(start_session({}, 1, "x"), order, a);
    auto sb = complete(start_session({}, 1, "x"), order, b);
    CHECK(sa.player == sb.player);
    CHECK(sa.gate_open == sb.gate_open);
  }
}

TEST_CASE("each task can be answered once") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = start_session({}, 1 + trial % 2, "once");
    while (!is_complete(s)) {
      auto open = available_tasks(s);
      int t = open[rng() % open.size()];
      s = submit_answer(s, t, 1).state;
      CHECK(kind_of_failure([&] { submit_answer(s, t, 2); }) == ErrorKind::already_answered);
    }
  }
}

TEST_CASE("to_record") {
  auto s = start_session({"female", 24, "university"}, 2, "rec");
  CHECK(kind_of_failure([&] { to_record(s); }) == ErrorKind::incomplete);
  std::vector<int> choices{2, 1, 2, 2, 1, 1, 2};
  for (int t = 1; t <= 7; ++t) s = submit_answer(s, t, choices[t - 1], 1000u * t).state;
  auto when = parse_timestamp("2021-06-01T12:00:00Z");
  auto r = to_record(s, when);
  CHECK(r.session_id == "rec");
  CHECK(r.record_id == derive_record_id("rec"));
  CHECK(r.version == 2);
  CHECK(r.age == 24);
  CHECK(r.answers == choices);
  CHECK(r.response_times_ms[6] == 7000u);
  CHECK(r.created_at == when);
  CHECK(validate_record(r).empty());
  s.finalized = true;
  CHECK(kind_of_failure([&] { to_record(s); }) == ErrorKind::validation);
}

TEST_CASE("the potion never lowers health") {
  auto s = start_session({}, 1, "late-potion");
  for (int t : {2, 5, 6}) s = submit_answer(s, t, 1).state;
  CHECK(s.player.health == 250);
  s = submit_answer(s, 1, 1).state;
  CHECK(s.player.health == 250);

  auto early = start_session({}, 1, "mid-potion");
  for (int t : {2, 5, 1}) early = submit_answer(early, t, 1).state;
  CHECK(early.player.health == 150);
}
