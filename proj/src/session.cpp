#include "framing/session.hpp"

#include "framing/error.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <type_traits>

namespace framing {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string random_session_id() {
  std::random_device rd;
  std::uniform_int_distribution<std::uint32_t> dist;
  char buf[33];
  std::snprintf(buf, sizeof buf, "%08x%08x%08x%08x", dist(rd), dist(rd), dist(rd), dist(rd));
  return buf;
}

void apply(const Effect& effect, SessionState& s) {
  std::visit(overloaded{
                 [&](const HealthSet& h) {
                   int target = std::clamp(h.health, 0, kHealthMax);
                   s.player.health = h.heal_only ? std::max(s.player.health, target) : target;
                 },
                 [&](const GoldDelta& g) {
                   Amount next = s.player.gold + g.delta;
                   if (next < Amount{}) fail(ErrorKind::validation, "gold would go negative");
                   s.player.gold = next;
                 },
                 [&](const GateOpen&) { s.gate_open = true; },
                 [&](const BonusDisplay& b) { s.player.bonus_display = b.text; },
                 // Gating is derived from the solved flags; these two are
                 // events for the client.
                 [](const UnlockTasks&) {},
                 [](const BlackoutRelocate&) {},
             },
             effect);
}

}  // namespace

void validate(const Demographics& d) {
  if (d.age && (*d.age < 0 || *d.age > 130)) {
    fail(ErrorKind::validation, "age " + std::to_string(*d.age) + " outside [0, 130]");
  }
}

std::string PlayerState::health_display() const {
  return std::to_string(health) + "/" + std::to_string(kHealthMax);
}

SessionState start_session(const Demographics& d, int version, std::string session_id) {
  validate(d);
  if (version != 1 && version != 2) {
    fail(ErrorKind::validation, "version must be 1 or 2, got " + std::to_string(version));
  }
  SessionState s;
  s.session_id = session_id.empty() ? random_session_id() : std::move(session_id);
  s.version = version;
  s.demographics = d;
  return s;
}

std::vector<int> available_tasks(const SessionState& s) {
  const bool gate_task_done = s.solved[1];
  const bool bandits_done = s.solved[4];
  std::vector<int> out;
  for (int id = 1; id <= kTaskCount; ++id) {
    if (s.solved[id - 1]) continue;
    bool unlocked = id <= 2 || (id <= 5 ? gate_task_done : bandits_done);
    if (unlocked) out.push_back(id);
  }
  return out;
}

AnswerResult submit_answer(const SessionState& s, int task_id, int choice,
                           std::optional<std::uint32_t> response_time_ms, const QuestionBank& bank) {
  if (task_id < 1 || task_id > kTaskCount) {
    fail(ErrorKind::validation, "task id must be in 1..7, got " + std::to_string(task_id));
  }
  if (choice != 1 && choice != 2) {
    fail(ErrorKind::validation, "choice must be 1 or 2, got " + std::to_string(choice));
  }
  if (s.solved[task_id - 1]) {
    fail(ErrorKind::already_answered, "task " + std::to_string(task_id) + " already answered");
  }
  auto open = available_tasks(s);
  if (std::find(open.begin(), open.end(), task_id) == open.end()) {
    fail(ErrorKind::locked, "task " + std::to_string(task_id) + " is locked");
  }

  const FramedQuestion& q = bank.question(task_id);
  AnswerResult result{s, q.consequence, q.script(bank.frame_for(s.version, task_id)).continuation};
  SessionState& next = result.state;
  for (const auto& e : q.consequence.effects) apply(e, next);
  next.answers[task_id - 1] = choice;
  next.solved[task_id - 1] = true;
  next.response_times_ms[task_id - 1] = response_time_ms;
  return result;
}

bool is_complete(const SessionState& s) {
  return std::all_of(s.solved.begin(), s.solved.end(), [](bool b) { return b; });
}

ResponseRecord to_record(const SessionState& s, Timestamp created_at) {
  if (!is_complete(s)) fail(ErrorKind::incomplete, "session " + s.session_id + " is not complete");
  if (s.finalized) fail(ErrorKind::validation, "session " + s.session_id + " is already finalized");
  ResponseRecord r;
  r.record_id = derive_record_id(s.session_id);
  r.session_id = s.session_id;
  r.version = s.version;
  r.gender = s.demographics.gender;
  r.age = s.demographics.age;
  r.education = s.demographics.education;
  r.answers.assign(s.answers.begin(), s.answers.end());
  r.response_times_ms.assign(s.response_times_ms.begin(), s.response_times_ms.end());
  r.created_at = created_at;
  return r;
}

}  // namespace framing
