#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace framing {

// Compare rationals only against Rational operands: with C++20 rewritten
// comparisons, Boost 1.74's rational == int recurses without end.
using Rational = boost::rational<std::int64_t>;
using Probability = Rational;

/// Parses an exact decimal literal such as "0.875", "-3" or "1/8".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// Signed fixed-point quantity stored in tenths of a domain unit
/// (3.5 gold == 35 tenths).
class Amount {
 public:
  static constexpr std::int64_t kScale = 10;

  constexpr Amount() = default;

  static constexpr Amount from_tenths(std::int64_t tenths) { return Amount(tenths); }
  static constexpr Amount units(std::int64_t whole) { return Amount(whole * kScale); }
  /// Accepts at most one decimal digit; anything finer is a validation error.
  static Amount parse(std::string_view text);

  constexpr std::int64_t tenths() const { return tenths_; }
  Rational exact() const { return Rational(tenths_, kScale); }
  double to_double() const { return static_cast<double>(tenths_) / kScale; }

  /// "12", "12.5", "-3": the decimal is dropped when the amount is whole.
  std::string display() const;

  constexpr Amount operator+(Amount o) const { return Amount(tenths_ + o.tenths_); }
  constexpr Amount operator-(Amount o) const { return Amount(tenths_ - o.tenths_); }
  constexpr Amount operator-() const { return Amount(-tenths_); }
  constexpr auto operator<=>(const Amount&) const = default;

 private:
  constexpr explicit Amount(std::int64_t tenths) : tenths_(tenths) {}
  std::int64_t tenths_ = 0;
};

enum class Domain { health, gold, lives, abstract_money };

std::string_view to_string(Domain d) noexcept;
Domain parse_domain(std::string_view text);

struct Outcome {
  Amount value;
  Probability probability;

  bool operator==(const Outcome&) const = default;
};

/// A lottery over outcomes in one domain. Construction enforces that the
/// list is non-empty, every probability is non-negative and the
/// probabilities sum to exactly one.
class Prospect {
 public:
  Prospect(std::vector<Outcome> outcomes, Domain domain);

  static Prospect certain(Amount value, Domain domain);

  std::span<const Outcome> outcomes() const { return outcomes_; }
  Domain domain() const { return domain_; }
  bool is_certain() const;

  bool operator==(const Prospect&) const = default;

 private:
  std::vector<Outcome> outcomes_;
  Domain domain_;
};

/// Sum of value * probability, accumulated exactly, in domain units.
Rational expected_value_exact(const Prospect& p);
double expected_value(const Prospect& p);

/// Utility over domain-unit values. An empty result marks the value as
/// outside the utility's domain.
using Utility = std::function<std::optional<double>(double value)>;

Utility identity_utility();

double expected_utility(const Prospect& p, const Utility& u);

/// Power-form value function parameters; invalid combinations cannot be
/// constructed.
class ValueFnParams {
 public:
  /// alpha = beta = 0.88, lambda = 2.25.
  ValueFnParams() = default;
  ValueFnParams(double alpha, double beta, double lambda);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double lambda() const { return lambda_; }

 private:
  double alpha_ = 0.88;
  double beta_ = 0.88;
  double lambda_ = 2.25;
};

/// Value of a deviation x from the reference point (x = 0).
double pt_value(double x, const ValueFnParams& params = {});

using ProbabilityWeighting = std::function<double(double p)>;

ProbabilityWeighting identity_weighting();

/// Sum of w(p_k) * v(x_k). A weighting that misses w(0) = 0, w(1) = 1 or
/// leaves [0, 1] raises a configuration error.
double pt_prospect_value(const Prospect& p, const ValueFnParams& params = {},
                         const ProbabilityWeighting& weighting = {});

/// Exact comparison of expected values; prospects must share a domain.
bool prospects_equal_ev(const Prospect& a, const Prospect& b);

enum class GambleAChoice { A1, B1 };
enum class GambleBChoice { A2, B2 };

struct AllaisChoice {
  GambleAChoice gamble_a;
  GambleBChoice gamble_b;
};

std::string to_string(const AllaisChoice& c);

/// True for the two patterns no utility function with u(0) = 0 can
/// rationalise: (A1, B2) and (B1, A2).
bool allais_violates_eut(const AllaisChoice& c);

namespace allais {

// Outcomes are whole dollars.
const Prospect& option_1a();
const Prospect& option_1b();
const Prospect& option_2a();
const Prospect& option_2b();

}  // namespace allais

}  // namespace framing
