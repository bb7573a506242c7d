#pragma once

#include "framing/consequence.hpp"
#include "framing/question_bank.hpp"
#include "framing/response_record.hpp"

#include <json.hpp>

namespace framing {

// Wire forms shared by the bank file, the record store and the HTTP API.
// Decoders raise a validation error on malformed input.

nlohmann::json to_json(const Effect& e);
Effect effect_from_json(const nlohmann::json& j);

/// {"alert": ..., "effects": [...]}
nlohmann::json to_json(const ConsequenceBundle& b);
ConsequenceBundle bundle_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DialogueScript& s);

/// Store line form; keys sorted, age and response times null when absent.
nlohmann::json to_json(const ResponseRecord& r);
ResponseRecord record_from_json(const nlohmann::json& j);

}  // namespace framing
