#pragma once

#include "framing/question_bank.hpp"
#include "framing/response_record.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace framing::analysis {

// Answer 2 is always the risky option: every script lists the certain
// option first.
inline constexpr int kRiskyAnswer = 2;

/// Share of records answering question qid with the risky option.
double risky_share(std::span<const ResponseRecord> records, int qid);

struct EffectReport {
  int question_id = 0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  double risky_share_pos = 0.0;
  double risky_share_neg = 0.0;
  double delta = 0.0;  // risky_share_neg - risky_share_pos
  double z_stat = 0.0;
  double p_value = 1.0;
};

/// Splits both cohorts into the positive and negative pool for qid using the
/// version plan, then tests negative against positive.
EffectReport framing_effect(std::span<const ResponseRecord> v1, std::span<const ResponseRecord> v2, int qid,
                            const QuestionBank& bank = QuestionBank::embedded());

struct ReflectionReport {
  std::size_t n_pos = 0;  // positively framed answers over all questions
  std::size_t n_neg = 0;
  double risky_share_pos = 0.0;
  double risky_share_neg = 0.0;
  double delta = 0.0;
  double z_stat = 0.0;
  double p_value = 1.0;
  bool consistent_with_reflection = false;  // delta > 0
};

/// Pools every question instance by frame. Answers from one respondent are
/// treated as independent draws.
ReflectionReport reflection_summary(std::span<const ResponseRecord> v1, std::span<const ResponseRecord> v2,
                                    const QuestionBank& bank = QuestionBank::embedded());

struct AllaisGamble {
  std::string name;
  std::string description;
  double expected_value = 0.0;  // dollars
};

struct AllaisVerdict {
  std::string pattern;  // "1A,2B"
  bool violates_eut = false;
};

struct AllaisReport {
  std::vector<AllaisGamble> gambles;
  std::vector<AllaisVerdict> patterns;
};

AllaisReport allais_demo();
std::string render_text(const AllaisReport& r);

struct DemographicsBreakdown {
  std::map<std::string, std::size_t> gender;
  std::map<std::string, std::size_t> education;
  std::map<std::string, std::size_t> age_band;
};

struct QuestionSection {
  int question_id = 0;
  char frame_v1 = 'P';
  char frame_v2 = 'N';
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  std::optional<EffectReport> effect;  // absent when a pool is empty
};

struct Report {
  std::size_t n_v1 = 0;
  std::size_t n_v2 = 0;
  std::vector<QuestionSection> questions;
  std::optional<ReflectionReport> reflection;
  DemographicsBreakdown demographics;
  std::vector<BankCheck> bank;
  std::string bank_checksum;
};

Report build_report(std::span<const ResponseRecord> v1, std::span<const ResponseRecord> v2,
                    const QuestionBank& bank = QuestionBank::embedded());

std::string render_markdown(const Report& r);
nlohmann::json to_json(const Report& r);

}  // namespace framing::analysis
