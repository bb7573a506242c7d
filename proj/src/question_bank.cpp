#include "framing/question_bank.hpp"

#include "framing/error.hpp"
#include "framing/json_codec.hpp"
#include "question_bank_data.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <map>

namespace framing {

using nlohmann::json;

char to_char(Frame f) noexcept { return f == Frame::positive ? 'P' : 'N'; }

Frame inverse(Frame f) noexcept { return f == Frame::positive ? Frame::negative : Frame::positive; }

std::string_view to_string(Valence v) noexcept {
  switch (v) {
    case Valence::gain: return "gain";
    case Valence::loss: return "loss";
    case Valence::neutral: return "neutral";
  }
  return "unknown";
}

namespace {

std::optional<Prospect> as_prospect(const std::vector<Branch>& branches, Domain domain) {
  std::vector<Outcome> outcomes;
  for (const auto& b : branches) {
    if (!b.value) return std::nullopt;
    outcomes.push_back({*b.value, b.probability});
  }
  return Prospect(std::move(outcomes), domain);
}

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorKind::validation, "question bank: " + where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) bad(where, std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::string text_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string() || v.get<std::string>().empty()) {
    bad(where, std::string("field '") + key + "' must be a non-empty string");
  }
  return v.get<std::string>();
}

Valence parse_valence(const std::string& s, const std::string& where) {
  for (Valence v : {Valence::gain, Valence::loss, Valence::neutral}) {
    if (to_string(v) == s) return v;
  }
  bad(where, "unknown valence '" + s + "'");
}

std::vector<Branch> parse_branches(const json& arr, const std::string& where) {
  if (!arr.is_array()) bad(where, "expected a list of branches");
  std::vector<Branch> out;
  Probability total = 0;
  for (const auto& b : arr) {
    Branch branch;
    branch.probability = parse_rational(field(b, "p", where).get<std::string>());
    const json& value = field(b, "value", where);
    if (!value.is_null()) branch.value = Amount::parse(value.get<std::string>());
    branch.label = text_field(b, "label", where);
    if (branch.probability < Probability(0)) bad(where, "negative probability");
    total += branch.probability;
    out.push_back(std::move(branch));
  }
  if (total != Probability(1)) bad(where, "branch probabilities sum to " + to_string(total));
  return out;
}

struct ParsedScript {
  DialogueScript script;
  ScriptCues cues;
  std::vector<ValenceTag> labels;
};

ParsedScript parse_script(const json& obj, const std::string& npc, const std::string& question,
                          const std::string& where) {
  ParsedScript out;
  out.script.npc_name = npc;
  out.script.question = question;
  out.script.answer_one = text_field(obj, "answer_one", where);
  out.script.answer_two = text_field(obj, "answer_two", where);
  out.script.continuation = text_field(obj, "continuation", where);
  out.cues.certain_cue = text_field(obj, "certain_cue", where);
  out.cues.risky_cue = text_field(obj, "risky_cue", where);
  if (out.script.answer_one.find(out.cues.certain_cue) == std::string::npos) {
    bad(where, "answer_one does not carry the certain option");
  }
  if (out.script.answer_two.find(out.cues.risky_cue) == std::string::npos) {
    bad(where, "answer_two does not carry the risky option");
  }
  for (const auto& tag : field(obj, "labels", where)) {
    out.labels.push_back({text_field(tag, "term", where),
                          parse_valence(text_field(tag, "valence", where), where)});
  }
  return out;
}

FramedQuestion parse_question(const json& q, const std::map<std::string, ConsequenceBundle>& consequences) {
  FramedQuestion out;
  out.id = field(q, "id", "question").get<int>();
  const std::string where = "question " + std::to_string(out.id);
  out.npc_name = text_field(q, "npc_name", where);
  out.deep.domain = parse_domain(text_field(q, "domain", where));
  out.deep.quantified = field(q, "quantified", where).get<bool>();
  out.deep.certain = parse_branches(field(q, "certain", where), where + " certain");
  out.deep.risky = parse_branches(field(q, "risky", where), where + " risky");
  if (out.deep.certain.size() != 1) bad(where, "certain option must have exactly one branch");
  if (out.deep.risky.size() < 2) bad(where, "risky option needs at least two branches");
  if (out.deep.quantified && (!out.deep.certain_prospect() || !out.deep.risky_prospect())) {
    bad(where, "quantified question has a branch without a value");
  }
  std::string question = text_field(q, "question", where);
  auto pos = parse_script(field(q, "positive", where), out.npc_name, question, where + " positive");
  auto neg = parse_script(field(q, "negative", where), out.npc_name, question, where + " negative");
  out.positive = std::move(pos.script);
  out.positive_cues = std::move(pos.cues);
  out.labels_positive = std::move(pos.labels);
  out.negative = std::move(neg.script);
  out.negative_cues = std::move(neg.cues);
  out.labels_negative = std::move(neg.labels);
  out.consequence_id = text_field(q, "consequence", where);
  auto it = consequences.find(out.consequence_id);
  if (it == consequences.end()) bad(where, "unknown consequence '" + out.consequence_id + "'");
  out.consequence = it->second;
  return out;
}

VersionPlan parse_plan(int version, const std::string& labels) {
  const std::string where = "version plan " + std::to_string(version);
  if (labels.size() != kTaskCount) bad(where, "expected seven frame labels");
  VersionPlan plan{version, {}};
  for (int i = 0; i < kTaskCount; ++i) {
    if (labels[i] == 'P') plan.frames[i] = Frame::positive;
    else if (labels[i] == 'N') plan.frames[i] = Frame::negative;
    else bad(where, std::string("unknown frame label '") + labels[i] + "'");
  }
  return plan;
}

void check_id(int id) {
  if (id < 1 || id > kTaskCount) fail(ErrorKind::not_found, "no question with id " + std::to_string(id));
}

void check_version(int version) {
  if (version != 1 && version != 2) {
    fail(ErrorKind::validation, "version must be 1 or 2, got " + std::to_string(version));
  }
}

}  // namespace

std::optional<Prospect> DeepStructure::certain_prospect() const { return as_prospect(certain, domain); }

std::optional<Prospect> DeepStructure::risky_prospect() const { return as_prospect(risky, domain); }

QuestionBank QuestionBank::parse(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorKind::validation, std::string("question bank: not valid JSON: ") + e.what());
  }
  QuestionBank bank;
  try {
    if (field(doc, "format_version", "document").get<int>() != 1) {
      bad("document", "unsupported format_version");
    }
    std::map<std::string, ConsequenceBundle> consequences;
    for (const auto& [name, bundle] : field(doc, "consequences", "document").items()) {
      consequences.emplace(name, bundle_from_json(bundle));
      if (consequences.at(name).alert_text.empty()) bad("consequence " + name, "empty alert text");
    }

    const json& plans = field(doc, "version_plans", "document");
    bank.plans_[0] = parse_plan(1, field(plans, "1", "version_plans").get<std::string>());
    bank.plans_[1] = parse_plan(2, field(plans, "2", "version_plans").get<std::string>());
    for (int i = 0; i < kTaskCount; ++i) {
      if (bank.plans_[1].frames[i] != inverse(bank.plans_[0].frames[i])) {
        bad("version_plans", "version 2 must invert version 1 at question " + std::to_string(i + 1));
      }
    }

    std::array<bool, kTaskCount> seen{};
    for (const auto& q : field(doc, "questions", "document")) {
      FramedQuestion parsed = parse_question(q, consequences);
      if (parsed.id < 1 || parsed.id > kTaskCount) bad("questions", "id out of range");
      if (seen[parsed.id - 1]) bad("questions", "duplicate id " + std::to_string(parsed.id));
      seen[parsed.id - 1] = true;
      bank.questions_[parsed.id - 1] = std::move(parsed);
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
      bad("questions", "expected exactly the ids 1..7");
    }
    bank.demo_ = parse_question(field(doc, "demo", "document"), consequences);
  } catch (const json::exception& e) {
    fail(ErrorKind::validation, std::string("question bank: ") + e.what());
  }
  bank.canonical_ = doc.dump();
  return bank;
}

const QuestionBank& QuestionBank::embedded() {
  static const QuestionBank bank = parse(kQuestionBankJson);
  return bank;
}

const FramedQuestion& QuestionBank::question(int id) const {
  check_id(id);
  return questions_[id - 1];
}

Frame QuestionBank::frame_for(int version, int id) const {
  const VersionPlan& p = plan(version);
  check_id(id);
  return p.frames[id - 1];
}

const VersionPlan& QuestionBank::plan(int version) const {
  check_version(version);
  return plans_[version - 1];
}

const DialogueScript& QuestionBank::render(int id, Frame frame) const { return question(id).script(frame); }

std::vector<BankCheck> QuestionBank::validate() const {
  std::vector<BankCheck> out;
  for (const auto& q : questions_) {
    BankCheck check{q.id, q.deep.quantified, false};
    if (q.deep.quantified) {
      check.ev_equal = prospects_equal_ev(*q.deep.certain_prospect(), *q.deep.risky_prospect());
    }
    out.push_back(check);
  }
  return out;
}

std::string QuestionBank::checksum() const { return sha256_hex(canonical_); }

const FramedQuestion& get_question(int id) { return QuestionBank::embedded().question(id); }

Frame frame_for(int version, int id) { return QuestionBank::embedded().frame_for(version, id); }

const DialogueScript& render(int id, Frame frame) { return QuestionBank::embedded().render(id, frame); }

std::vector<BankCheck> validate_bank() { return QuestionBank::embedded().validate(); }

const FramedQuestion& framing_demo_fixture() { return QuestionBank::embedded().demo(); }

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::configuration, "SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(length * 2);
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace framing
