#pragma once

#include "framing/question_bank.hpp"
#include "framing/response_record.hpp"

#include <cstdint>
#include <vector>

namespace framing::simulation {

struct AgentPolicy {
  double p_risky_positive = 0.5;
  double p_risky_negative = 0.5;
  std::uint64_t seed = 42;
};

/// Throws a validation error unless both probabilities lie in [0, 1].
void validate(const AgentPolicy& p);

struct SimulatedSession {
  ResponseRecord record;
  std::vector<int> order;  // task ids in the order they were answered
};

/// One agent: repeatedly picks an available task uniformly at random and
/// answers it risky with the probability for that task's frame. Depends only
/// on (policy.seed, version, index).
SimulatedSession simulate_session(int version, std::uint64_t index, const AgentPolicy& policy,
                                  const QuestionBank& bank = QuestionBank::embedded());

struct Cohort {
  std::vector<ResponseRecord> v1;
  std::vector<ResponseRecord> v2;
};

Cohort simulate(std::size_t n_per_version, const AgentPolicy& policy,
                const QuestionBank& bank = QuestionBank::embedded());

}  // namespace framing::simulation
