#include "framing/simulation.hpp"

#include "framing/error.hpp"
#include "framing/session.hpp"

#include <random>
#include <string>

namespace framing::simulation {

namespace {

// Fixed creation time keeps simulated record streams byte-reproducible.
constexpr Timestamp kSimulationEpoch{std::chrono::seconds(1'600'000'000)};

/// Uniform in [0, 1) from the top 53 bits; the standard distributions are
/// not portable across library implementations.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(n));
}

}  // namespace

void validate(const AgentPolicy& p) {
  auto ok = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!ok(p.p_risky_positive) || !ok(p.p_risky_negative)) {
    fail(ErrorKind::validation, "agent probabilities must lie in [0, 1]");
  }
}

SimulatedSession simulate_session(int version, std::uint64_t index, const AgentPolicy& policy,
                                  const QuestionBank& bank) {
  validate(policy);
  std::seed_seq seq{static_cast<std::uint32_t>(policy.seed), static_cast<std::uint32_t>(policy.seed >> 32),
                    static_cast<std::uint32_t>(version), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);

  std::string id = "sim-" + std::to_string(policy.seed) + "-v" + std::to_string(version) + "-" + std::to_string(index);
  SessionState state = start_session({}, version, id);
  SimulatedSession out;
  for (auto open = available_tasks(state); !open.empty(); open = available_tasks(state)) {
    int task = open[uniform_index(rng, open.size())];
    double p_risky = bank.frame_for(version, task) == Frame::positive ? policy.p_risky_positive
                                                                        : policy.p_risky_negative;
    int choice = unit_uniform(rng) < p_risky ? 2 : 1;
    state = submit_answer(state, task, choice, std::nullopt, bank).state;
    out.order.push_back(task);
  }
  out.record = to_record(state, kSimulationEpoch + std::chrono::seconds(index));
  return out;
}

Cohort simulate(std::size_t n_per_version, const AgentPolicy& policy, const QuestionBank& bank) {
  if (n_per_version == 0) fail(ErrorKind::validation, "simulate needs at least one session per version");
  Cohort c;
  c.v1.reserve(n_per_version);
  c.v2.reserve(n_per_version);
  for (std::size_t i = 0; i < n_per_version; ++i) {
    c.v1.push_back(simulate_session(1, i, policy, bank).record);
    c.v2.push_back(simulate_session(2, i, policy, bank).record);
  }
  return c;
}

}  // namespace framing::simulation
