#pragma once

#include "framing/consequence.hpp"
#include "framing/decision.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace framing {

inline constexpr int kTaskCount = 7;

enum class Frame { positive, negative };

char to_char(Frame f) noexcept;  // 'P' / 'N'
Frame inverse(Frame f) noexcept;

enum class Valence { gain, loss, neutral };

std::string_view to_string(Valence v) noexcept;

/// A term used by one framing and the reference direction it evokes.
struct ValenceTag {
  std::string term;
  Valence valence;
};

/// One branch of a deep-structure option. Qualitative questions leave the
/// value unset rather than invent a payoff.
struct Branch {
  Probability probability;
  std::optional<Amount> value;
  std::string label;
};

struct DeepStructure {
  Domain domain = Domain::health;
  std::vector<Branch> certain;
  std::vector<Branch> risky;
  bool quantified = false;

  /// Present only when every branch carries a value.
  std::optional<Prospect> certain_prospect() const;
  std::optional<Prospect> risky_prospect() const;
};

struct DialogueScript {
  std::string npc_name;
  std::string question;
  std::string answer_one;  // certain option
  std::string answer_two;  // risky option
  std::string continuation;

  bool operator==(const DialogueScript&) const = default;
};

/// Substrings that tie each answer to its deep-structure option.
struct ScriptCues {
  std::string certain_cue;
  std::string risky_cue;
};

struct FramedQuestion {
  int id = 0;
  std::string npc_name;
  DeepStructure deep;
  DialogueScript positive;
  DialogueScript negative;
  ScriptCues positive_cues;
  ScriptCues negative_cues;
  std::string consequence_id;
  ConsequenceBundle consequence;
  std::vector<ValenceTag> labels_positive;
  std::vector<ValenceTag> labels_negative;

  const DialogueScript& script(Frame f) const { return f == Frame::positive ? positive : negative; }
  const ScriptCues& cues(Frame f) const { return f == Frame::positive ? positive_cues : negative_cues; }
};

struct VersionPlan {
  int version = 0;
  std::array<Frame, kTaskCount> frames{};
};

struct BankCheck {
  int id = 0;
  bool quantified = false;
  bool ev_equal = false;
};

/// The seven tasks, both framings, the per-version framing plan and the
/// consequence table. Immutable once loaded.
class QuestionBank {
 public:
  /// Parses and validates a bank document; structural problems raise a
  /// validation error naming the offending record.
  static QuestionBank parse(std::string_view json_text);

  /// The bank compiled into the binary from data/question_bank.json.
  static const QuestionBank& embedded();

  const FramedQuestion& question(int id) const;
  Frame frame_for(int version, int id) const;
  const VersionPlan& plan(int version) const;
  const DialogueScript& render(int id, Frame frame) const;
  std::vector<BankCheck> validate() const;
  const FramedQuestion& demo() const { return demo_; }

  /// Minified, key-sorted JSON of the source document.
  const std::string& canonical() const { return canonical_; }
  /// Lower-case hex SHA-256 of canonical().
  std::string checksum() const;

 private:
  QuestionBank() = default;

  std::array<FramedQuestion, kTaskCount> questions_{};
  std::array<VersionPlan, 2> plans_{};
  FramedQuestion demo_;
  std::string canonical_;
};

// Free-function views over the embedded bank.

const FramedQuestion& get_question(int id);
Frame frame_for(int version, int id);
const DialogueScript& render(int id, Frame frame);
std::vector<BankCheck> validate_bank();
const FramedQuestion& framing_demo_fixture();

/// Lower-case hex SHA-256 of the given bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace framing
