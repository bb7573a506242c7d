#pragma once

#include "framing/consequence.hpp"
#include "framing/question_bank.hpp"
#include "framing/response_record.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace framing {

inline constexpr int kHealthMax = 250;

struct Demographics {
  std::string gender;
  std::optional<int> age;
  std::string education;

  bool operator==(const Demographics&) const = default;
};

/// Throws a validation error for an age outside [0, 130].
void validate(const Demographics& d);

struct PlayerState {
  int health = 1;
  Amount gold = Amount::units(12);
  std::optional<std::string> bonus_display;

  std::string health_display() const;  // "150/250"
  std::string gold_display() const { return gold.display(); }

  bool operator==(const PlayerState&) const = default;
};

struct SessionState {
  std::string session_id;
  int version = 1;
  Demographics demographics;
  PlayerState player;
  std::array<bool, kTaskCount> solved{};
  std::array<int, kTaskCount> answers{};  // 0 = unsolved, else 1 or 2
  std::array<std::optional<std::uint32_t>, kTaskCount> response_times_ms{};
  bool finalized = false;
  bool gate_open = false;

  bool operator==(const SessionState&) const = default;
};

/// Fresh run at 1 health and 12 gold. An empty session_id is replaced with a
/// random one.
SessionState start_session(const Demographics& d, int version, std::string session_id = {});

/// Unsolved tasks whose prerequisites are met, ascending. Tasks 3-5 wait on
/// task 2; tasks 6-7 wait on task 5.
std::vector<int> available_tasks(const SessionState& s);

struct AnswerResult {
  SessionState state;
  ConsequenceBundle consequence;
  std::string continuation;
};

/// Records the choice and applies the task's consequence. The consequence
/// depends on the task only, never on which answer was picked.
AnswerResult submit_answer(const SessionState& s, int task_id, int choice,
                           std::optional<std::uint32_t> response_time_ms = std::nullopt,
                           const QuestionBank& bank = QuestionBank::embedded());

bool is_complete(const SessionState& s);

/// Requires a complete, not yet finalized session.
ResponseRecord to_record(const SessionState& s, Timestamp created_at = now_utc());

}  // namespace framing
