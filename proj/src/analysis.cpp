#include "framing/analysis.hpp"

#include "framing/decision.hpp"
#include "framing/error.hpp"
#include "framing/stats.hpp"

#include <cstdio>
#include <sstream>

namespace framing::analysis {

namespace {

void check_qid(int qid) {
  if (qid < 1 || qid > kTaskCount) fail(ErrorKind::validation, "question id must be in 1..7");
}

std::size_t count_risky(std::span<const ResponseRecord> records, int qid) {
  std::size_t n = 0;
  for (const auto& r : records) {
    if (static_cast<int>(r.answers.size()) >= qid && r.answers[qid - 1] == kRiskyAnswer) ++n;
  }
  return n;
}

double share(std::size_t k, std::size_t n) { return n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n); }

std::string age_band(const std::optional<int>& age) {
  if (!age) return "(unspecified)";
  if (*age < 18) return "<18";
  if (*age < 25) return "18-24";
  if (*age < 35) return "25-34";
  if (*age < 45) return "35-44";
  if (*age < 65) return "45-64";
  return "65+";
}

std::string or_unspecified(const std::string& s) { return s.empty() ? "(unspecified)" : s; }

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

nlohmann::json effect_json(const EffectReport& e) {
  return {{"question_id", e.question_id}, {"n_pos", e.n_pos},     {"n_neg", e.n_neg},
          {"risky_share_pos", e.risky_share_pos}, {"risky_share_neg", e.risky_share_neg},
          {"delta", e.delta},               {"z_stat", e.z_stat}, {"p_value", e.p_value}};
}

}  // namespace

double risky_share(std::span<const ResponseRecord> records, int qid) {
  check_qid(qid);
  if (records.empty()) fail(ErrorKind::validation, "risky share of an empty record set");
  return share(count_risky(records, qid), records.size());
}

EffectReport framing_effect(std::span<const ResponseRecord> v1, std::span<const ResponseRecord> v2, int qid,
                            const QuestionBank& bank) {
  check_qid(qid);
  const bool v1_positive = bank.frame_for(1, qid) == Frame::positive;
  auto pos = v1_positive ? v1 : v2;
  auto neg = v1_positive ? v2 : v1;
  if (pos.empty() || neg.empty()) {
    fail(ErrorKind::validation, "question " + std::to_string(qid) + ": a framing pool is empty");
  }
  EffectReport e;
  e.question_id = qid;
  e.n_pos = pos.size();
  e.n_neg = neg.size();
  const std::size_t k_pos = count_risky(pos, qid);
  const std::size_t k_neg = count_risky(neg, qid);
  e.risky_share_pos = share(k_pos, e.n_pos);
  e.risky_share_neg = share(k_neg, e.n_neg);
  e.delta = e.risky_share_neg - e.risky_share_pos;
  auto test = stats::two_proportion_z_test(k_neg, e.n_neg, k_pos, e.n_pos);
  e.z_stat = test.z;
  e.p_value = test.p_value;
  return e;
}

ReflectionReport reflection_summary(std::span<const ResponseRecord> v1, std::span<const ResponseRecord> v2,
                                    const QuestionBank& bank) {
  if (v1.empty() && v2.empty()) fail(ErrorKind::validation, "reflection summary of an empty record set");
  std::size_t k_pos = 0, k_neg = 0;
  ReflectionReport out;
  for (int version : {1, 2}) {
    const auto& plan = bank.plan(version);
    for (const auto& r : version == 1 ? v1 : v2) {
      for (int q = 1; q <= kTaskCount; ++q) {
        const bool risky = static_cast<int>(r.answers.size()) >= q && r.answers[q - 1] == kRiskyAnswer;
        if (plan.frames[q - 1] == Frame::positive) {
          ++out.n_pos;
          k_pos += risky;
        } else {
          ++out.n_neg;
          k_neg += risky;
        }
      }
    }
  }
  out.risky_share_pos = share(k_pos, out.n_pos);
  out.risky_share_neg = share(k_neg, out.n_neg);
  out.delta = out.risky_share_neg - out.risky_share_pos;
  auto test = stats::two_proportion_z_test(k_neg, out.n_neg, k_pos, out.n_pos);
  out.z_stat = test.z;
  out.p_value = test.p_value;
  out.consistent_with_reflection = out.delta > 0.0;
  return out;
}

AllaisReport allais_demo() {
  AllaisReport r;
  r.gambles = {
      {"1A", "100% chance of winning $100 million", expected_value(allais::option_1a())},
      {"1B", "89% $100 million, 10% $500 million, 1% nothing", expected_value(allais::option_1b())},
      {"2A", "89% nothing, 11% $100 million", expected_value(allais::option_2a())},
      {"2B", "90% nothing, 10% $500 million", expected_value(allais::option_2b())},
  };
  for (auto a : {GambleAChoice::A1, GambleAChoice::B1}) {
    for (auto b : {GambleBChoice::A2, GambleBChoice::B2}) {
      AllaisChoice c{a, b};
      r.patterns.push_back({to_string(c), allais_violates_eut(c)});
    }
  }
  return r;
}

std::string render_text(const AllaisReport& r) {
  std::ostringstream os;
  os << "Allais gambles (expected value, $ millions)\n";
  for (const auto& g : r.gambles) {
    os << "  " << g.name << "  " << fmt("%8.2f", g.expected_value / 1e6) << "  " << g.description << "\n";
  }
  os << "Choice patterns\n";
  for (const auto& p : r.patterns) {
    os << "  (" << p.pattern << ")  " << (p.violates_eut ? "violates expected utility" : "consistent with expected utility")
       << "\n";
  }
  return os.str();
}

Report build_report(std::span<const ResponseRecord> v1, std::span<const ResponseRecord> v2,
                    const QuestionBank& bank) {
  Report rep;
  rep.n_v1 = v1.size();
  rep.n_v2 = v2.size();
  for (int q = 1; q <= kTaskCount; ++q) {
    QuestionSection s;
    s.question_id = q;
    s.frame_v1 = to_char(bank.frame_for(1, q));
    s.frame_v2 = to_char(bank.frame_for(2, q));
    const bool v1_positive = bank.frame_for(1, q) == Frame::positive;
    s.n_pos = v1_positive ? v1.size() : v2.size();
    s.n_neg = v1_positive ? v2.size() : v1.size();
    if (s.n_pos > 0 && s.n_neg > 0) s.effect = framing_effect(v1, v2, q, bank);
    rep.questions.push_back(s);
  }
  if (!v1.empty() || !v2.empty()) rep.reflection = reflection_summary(v1, v2, bank);
  for (auto records : {v1, v2}) {
    for (const auto& r : records) {
      ++rep.demographics.gender[or_unspecified(r.gender)];
      ++rep.demographics.education[or_unspecified(r.education)];
      ++rep.demographics.age_band[age_band(r.age)];
    }
  }
  rep.bank = bank.validate();
  rep.bank_checksum = bank.checksum();
  return rep;
}

std::string render_markdown(const Report& r) {
  std::ostringstream os;
  os << "# Framing effect report\n\n";
  os << "Respondents: " << r.n_v1 + r.n_v2 << " (version 1: " << r.n_v1 << ", version 2: " << r.n_v2 << ")\n\n";
  for (const auto& s : r.questions) {
    os << "## Question " << s.question_id << "\n\n";
    os << "Frames: version 1 = " << s.frame_v1 << ", version 2 = " << s.frame_v2 << "\n\n";
    if (!s.effect) {
      os << "Positive pool n = " << s.n_pos << ", negative pool n = " << s.n_neg
         << "; not enough data for a framing test.\n\n";
      continue;
    }
    const auto& e = *s.effect;
    os << "| pool | n | risky share |\n|---|---|---|\n";
    os << "| positive | " << e.n_pos << " | " << fmt("%.4f", e.risky_share_pos) << " |\n";
    os << "| negative | " << e.n_neg << " | " << fmt("%.4f", e.risky_share_neg) << " |\n\n";
    os << "delta = " << fmt("%.4f", e.delta) << ", z = " << fmt("%.4f", e.z_stat)
       << ", p = " << fmt("%.4g", e.p_value) << "\n\n";
  }
  os << "## Reflection summary\n\n";
  if (r.reflection) {
    const auto& f = *r.reflection;
    os << "Positive-frame answers: " << f.n_pos << " (risky share " << fmt("%.4f", f.risky_share_pos) << ")\n";
    os << "Negative-frame answers: " << f.n_neg << " (risky share " << fmt("%.4f", f.risky_share_neg) << ")\n";
    os << "delta = " << fmt("%.4f", f.delta) << ", z = " << fmt("%.4f", f.z_stat)
       << ", p = " << fmt("%.4g", f.p_value) << "\n";
    os << (f.consistent_with_reflection ? "Consistent with reflection.\n\n" : "Not consistent with reflection.\n\n");
  } else {
    os << "No records.\n\n";
  }
  os << "## Demographics\n\n";
  auto table = [&](const char* title, const std::map<std::string, std::size_t>& counts) {
    os << "### " << title << "\n\n";
    if (counts.empty()) os << "No records.\n";
    for (const auto& [k, n] : counts) os << "- " << k << ": " << n << "\n";
    os << "\n";
  };
  table("Gender", r.demographics.gender);
  table("Education", r.demographics.education);
  table("Age", r.demographics.age_band);
  os << "## Question bank\n\n";
  os << "Checksum: `" << r.bank_checksum << "`\n\n";
  for (const auto& b : r.bank) {
    os << "- question " << b.id << ": "
       << (b.quantified ? (b.ev_equal ? "expected values equal" : "EXPECTED VALUES DIFFER") : "qualitative") << "\n";
  }
  return os.str();
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json questions = nlohmann::json::array();
  for (const auto& s : r.questions) {
    questions.push_back({{"question_id", s.question_id},
                         {"frame_v1", std::string(1, s.frame_v1)},
                         {"frame_v2", std::string(1, s.frame_v2)},
                         {"n_pos", s.n_pos},
                         {"n_neg", s.n_neg},
                         {"effect", s.effect ? effect_json(*s.effect) : nlohmann::json(nullptr)}});
  }
  nlohmann::json reflection = nullptr;
  if (r.reflection) {
    const auto& f = *r.reflection;
    reflection = {{"n_pos", f.n_pos},
                  {"n_neg", f.n_neg},
                  {"risky_share_pos", f.risky_share_pos},
                  {"risky_share_neg", f.risky_share_neg},
                  {"delta", f.delta},
                  {"z_stat", f.z_stat},
                  {"p_value", f.p_value},
                  {"consistent_with_reflection", f.consistent_with_reflection}};
  }
  nlohmann::json bank = nlohmann::json::array();
  for (const auto& b : r.bank) {
    bank.push_back({{"id", b.id}, {"quantified", b.quantified}, {"ev_equal", b.ev_equal}});
  }
  return {{"n_v1", r.n_v1},
          {"n_v2", r.n_v2},
          {"questions", std::move(questions)},
          {"reflection", std::move(reflection)},
          {"demographics",
           {{"gender", r.demographics.gender},
            {"education", r.demographics.education},
            {"age_band", r.demographics.age_band}}},
          {"bank", {{"checksum", r.bank_checksum}, {"questions", std::move(bank)}}}};
}

}  // namespace framing::analysis
