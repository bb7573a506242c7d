#pragma once

#include "framing/decision.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace framing {

// In-game effects of solving a task. The variant keeps each payload tied
// to its kind.

struct HealthSet {
  int health = 0;
  std::string display;  // HUD label, e.g. "150/250"
  // A heal never lowers health that is already above the target.
  bool heal_only = false;
  bool operator==(const HealthSet&) const = default;
};

struct GoldDelta {
  Amount delta;
  bool operator==(const GoldDelta&) const = default;
};

struct GateOpen {
  bool operator==(const GateOpen&) const = default;
};

struct BonusDisplay {
  std::string text;
  bool operator==(const BonusDisplay&) const = default;
};

struct UnlockTasks {
  std::vector<int> tasks;
  bool operator==(const UnlockTasks&) const = default;
};

/// Fade to black and move the player; the engine only emits the event.
struct BlackoutRelocate {
  std::string destination;
  bool operator==(const BlackoutRelocate&) const = default;
};

using Effect = std::variant<HealthSet, GoldDelta, GateOpen, BonusDisplay, UnlockTasks, BlackoutRelocate>;

enum class EffectKind { health_set, gold_delta, gate_open, bonus_display, unlock_tasks, blackout_relocate };

EffectKind kind_of(const Effect& e) noexcept;
std::string_view to_string(EffectKind k) noexcept;

struct ConsequenceBundle {
  std::vector<Effect> effects;
  std::string alert_text;

  bool operator==(const ConsequenceBundle&) const = default;
};

}  // namespace framing
