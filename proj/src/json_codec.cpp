#include "framing/json_codec.hpp"

#include "framing/error.hpp"

namespace framing {

using nlohmann::json;

EffectKind kind_of(const Effect& e) noexcept { return static_cast<EffectKind>(e.index()); }

std::string_view to_string(EffectKind k) noexcept {
  switch (k) {
    case EffectKind::health_set: return "health_set";
    case EffectKind::gold_delta: return "gold_delta";
    case EffectKind::gate_open: return "gate_open";
    case EffectKind::bonus_display: return "bonus_display";
    case EffectKind::unlock_tasks: return "unlock_tasks";
    case EffectKind::blackout_relocate: return "blackout_relocate";
  }
  return "unknown";
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

json to_json(const Effect& e) {
  json j = {{"kind", to_string(kind_of(e))}};
  std::visit(overloaded{
                 [&](const HealthSet& h) {
                   j["health"] = h.health;
                   j["display"] = h.display;
                   if (h.heal_only) j["heal_only"] = true;
                 },
                 [&](const GoldDelta& g) { j["gold"] = g.delta.display(); },
                 [](const GateOpen&) {},
                 [&](const BonusDisplay& b) { j["text"] = b.text; },
                 [&](const UnlockTasks& u) { j["tasks"] = u.tasks; },
                 [&](const BlackoutRelocate& b) { j["destination"] = b.destination; },
             },
             e);
  return j;
}

Effect effect_from_json(const json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "health_set") {
      return HealthSet{j.at("health").get<int>(), j.at("display").get<std::string>(), j.value("heal_only", false)};
    }
    if (kind == "gold_delta") return GoldDelta{Amount::parse(j.at("gold").get<std::string>())};
    if (kind == "gate_open") return GateOpen{};
    if (kind == "bonus_display") return BonusDisplay{j.at("text").get<std::string>()};
    if (kind == "unlock_tasks") return UnlockTasks{j.at("tasks").get<std::vector<int>>()};
    if (kind == "blackout_relocate") return BlackoutRelocate{j.at("destination").get<std::string>()};
    fail(ErrorKind::validation, "unknown effect kind '" + kind + "'");
  } catch (const json::exception& e) {
    fail(ErrorKind::validation, std::string("malformed effect: ") + e.what());
  }
}

json to_json(const ConsequenceBundle& b) {
  json effects = json::array();
  for (const auto& e : b.effects) effects.push_back(to_json(e));
  return {{"alert", b.alert_text}, {"effects", std::move(effects)}};
}

ConsequenceBundle bundle_from_json(const json& j) {
  ConsequenceBundle out;
  try {
    out.alert_text = j.at("alert").get<std::string>();
    for (const auto& e : j.at("effects")) out.effects.push_back(effect_from_json(e));
  } catch (const json::exception& e) {
    fail(ErrorKind::validation, std::string("malformed consequence: ") + e.what());
  }
  return out;
}

json to_json(const DialogueScript& s) {
  return {{"npc_name", s.npc_name},
          {"question", s.question},
          {"answer_one", s.answer_one},
          {"answer_two", s.answer_two},
          {"continuation", s.continuation}};
}

json to_json(const ResponseRecord& r) {
  json times = json::array();
  for (const auto& t : r.response_times_ms) times.push_back(t ? json(*t) : json(nullptr));
  return {{"record_id", r.record_id},
          {"session_id", r.session_id},
          {"version", r.version},
          {"gender", r.gender},
          {"age", r.age ? json(*r.age) : json(nullptr)},
          {"education", r.education},
          {"answers", r.answers},
          {"response_times_ms", std::move(times)},
          {"created_at", format_timestamp(r.created_at)}};
}

ResponseRecord record_from_json(const json& j) {
  ResponseRecord r;
  try {
    if (!j.is_object()) fail(ErrorKind::validation, "record is not an object");
    r.record_id = j.at("record_id").get<std::string>();
    r.session_id = j.at("session_id").get<std::string>();
    r.version = j.at("version").get<int>();
    r.gender = j.at("gender").get<std::string>();
    if (!j.at("age").is_null()) r.age = j.at("age").get<int>();
    r.education = j.at("education").get<std::string>();
    r.answers = j.at("answers").get<std::vector<int>>();
    for (const auto& t : j.at("response_times_ms")) {
      r.response_times_ms.push_back(t.is_null() ? std::nullopt
                                                : std::optional<std::uint32_t>(t.get<std::uint32_t>()));
    }
    r.created_at = parse_timestamp(j.at("created_at").get<std::string>());
  } catch (const json::exception& e) {
    fail(ErrorKind::validation, std::string("malformed record: ") + e.what());
  }
  return r;
}

}  // namespace framing
