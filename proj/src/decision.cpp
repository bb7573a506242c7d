#include "framing/decision.hpp"

#include "framing/error.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace framing {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view context) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    fail(ErrorKind::validation, "malformed number '" + std::string(context) + "'");
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(text.substr(0, slash), text);
    auto den = parse_int(text.substr(slash + 1), text);
    if (den <= 0) fail(ErrorKind::validation, "non-positive denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  bool negative = !text.empty() && text.front() == '-';
  std::string_view body = negative ? text.substr(1) : text;
  auto dot = body.find('.');
  std::string_view whole = body.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (whole.empty() || (dot != std::string_view::npos && frac.empty()) || whole.front() == '-' ||
      whole.front() == '+' || whole.size() + frac.size() > 17) {
    fail(ErrorKind::validation, "malformed number '" + std::string(text) + "'");
  }
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  std::int64_t num = parse_int(whole, text) * den + (frac.empty() ? 0 : parse_int(frac, text));
  return Rational(negative ? -num : num, den);
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

Amount Amount::parse(std::string_view text) {
  Rational r = parse_rational(text);
  Rational scaled = r * kScale;
  if (scaled.denominator() != 1) {
    fail(ErrorKind::validation, "amount '" + std::string(text) + "' is finer than a tenth");
  }
  return Amount(scaled.numerator());
}

std::string Amount::display() const {
  std::int64_t magnitude = tenths_ < 0 ? -tenths_ : tenths_;
  std::string out = tenths_ < 0 ? "-" : "";
  out += std::to_string(magnitude / kScale);
  if (magnitude % kScale != 0) out += "." + std::to_string(magnitude % kScale);
  return out;
}

std::string_view to_string(Domain d) noexcept {
  switch (d) {
    case Domain::health: return "health";
    case Domain::gold: return "gold";
    case Domain::lives: return "lives";
    case Domain::abstract_money: return "abstract_money";
  }
  return "unknown";
}

Domain parse_domain(std::string_view text) {
  for (Domain d : {Domain::health, Domain::gold, Domain::lives, Domain::abstract_money}) {
    if (to_string(d) == text) return d;
  }
  fail(ErrorKind::validation, "unknown domain '" + std::string(text) + "'");
}

Prospect::Prospect(std::vector<Outcome> outcomes, Domain domain)
    : outcomes_(std::move(outcomes)), domain_(domain) {
  if (outcomes_.empty()) fail(ErrorKind::validation, "prospect has no outcomes");
  Probability total = 0;
  for (const auto& o : outcomes_) {
    if (o.probability < Probability(0)) fail(ErrorKind::validation, "negative probability " + to_string(o.probability));
    total += o.probability;
  }
  if (total != Probability(1)) {
    fail(ErrorKind::validation, "probabilities sum to " + to_string(total) + ", expected 1");
  }
}

Prospect Prospect::certain(Amount value, Domain domain) {
  return Prospect({{value, Probability(1)}}, domain);
}

bool Prospect::is_certain() const {
  return outcomes_.size() == 1 && outcomes_.front().probability == Probability(1);
}

Rational expected_value_exact(const Prospect& p) {
  Rational sum = 0;
  for (const auto& o : p.outcomes()) sum += o.value.exact() * o.probability;
  return sum;
}

double expected_value(const Prospect& p) {
  return boost::rational_cast<double>(expected_value_exact(p));
}

Utility identity_utility() {
  return [](double v) -> std::optional<double> { return v; };
}

double expected_utility(const Prospect& p, const Utility& u) {
  if (!u) fail(ErrorKind::configuration, "utility function not set");
  double sum = 0.0;
  for (const auto& o : p.outcomes()) {
    auto value = u(o.value.to_double());
    if (!value || !std::isfinite(*value)) {
      fail(ErrorKind::domain, "utility undefined at outcome " + o.value.display());
    }
    sum += *value * boost::rational_cast<double>(o.probability);
  }
  return sum;
}

ValueFnParams::ValueFnParams(double alpha, double beta, double lambda)
    : alpha_(alpha), beta_(beta), lambda_(lambda) {
  auto in_unit = [](double v) { return std::isfinite(v) && v > 0.0 && v <= 1.0; };
  if (!in_unit(alpha_) || !in_unit(beta_)) {
    fail(ErrorKind::configuration, "alpha and beta must lie in (0, 1]");
  }
  if (!std::isfinite(lambda_) || lambda_ < 1.0) {
    fail(ErrorKind::configuration, "lambda must be finite and >= 1");
  }
}

double pt_value(double x, const ValueFnParams& params) {
  if (x >= 0.0) return std::pow(x, params.alpha());
  return -params.lambda() * std::pow(-x, params.beta());
}

ProbabilityWeighting identity_weighting() {
  return [](double p) { return p; };
}

double pt_prospect_value(const Prospect& p, const ValueFnParams& params,
                         const ProbabilityWeighting& weighting) {
  const ProbabilityWeighting& w = weighting ? weighting : identity_weighting();
  constexpr double kEndpointTolerance = 1e-12;
  if (std::abs(w(0.0)) > kEndpointTolerance || std::abs(w(1.0) - 1.0) > kEndpointTolerance) {
    fail(ErrorKind::configuration, "probability weighting must satisfy w(0) = 0 and w(1) = 1");
  }
  double sum = 0.0;
  for (const auto& o : p.outcomes()) {
    double weight = o.probability == Probability(1) ? 1.0 : w(boost::rational_cast<double>(o.probability));
    if (!(weight >= 0.0 && weight <= 1.0)) {
      fail(ErrorKind::configuration, "probability weighting left [0, 1]");
    }
    sum += weight * pt_value(o.value.to_double(), params);
  }
  return sum;
}

bool prospects_equal_ev(const Prospect& a, const Prospect& b) {
  if (a.domain() != b.domain()) {
    fail(ErrorKind::validation, "cannot compare prospects across domains " +
                                    std::string(to_string(a.domain())) + " and " +
                                    std::string(to_string(b.domain())));
  }
  return expected_value_exact(a) == expected_value_exact(b);
}

std::string to_string(const AllaisChoice& c) {
  std::string out = c.gamble_a == GambleAChoice::A1 ? "1A" : "1B";
  out += ",";
  out += c.gamble_b == GambleBChoice::A2 ? "2A" : "2B";
  return out;
}

bool allais_violates_eut(const AllaisChoice& c) {
  // With u(0) = 0 both gambles reduce to the sign of 0.11 u(100M) - 0.10 u(500M):
  // 1A and 2A both need it positive, 1B and 2B both need it negative.
  bool prefers_certain_side = c.gamble_a == GambleAChoice::A1;
  bool prefers_safer_b = c.gamble_b == GambleBChoice::A2;
  return prefers_certain_side != prefers_safer_b;
}

namespace allais {

namespace {

constexpr std::int64_t kMillion = 1'000'000;

Prospect make(std::initializer_list<std::pair<std::int64_t, Probability>> entries) {
  std::vector<Outcome> outcomes;
  for (const auto& [millions, p] : entries) outcomes.push_back({Amount::units(millions * kMillion), p});
  return Prospect(std::move(outcomes), Domain::abstract_money);
}

}  // namespace

const Prospect& option_1a() {
  static const Prospect p = make({{100, Probability(1)}});
  return p;
}

const Prospect& option_1b() {
  static const Prospect p =
      make({{100, Probability(89, 100)}, {500, Probability(10, 100)}, {0, Probability(1, 100)}});
  return p;
}

const Prospect& option_2a() {
  static const Prospect p = make({{0, Probability(89, 100)}, {100, Probability(11, 100)}});
  return p;
}

const Prospect& option_2b() {
  static const Prospect p = make({{0, Probability(90, 100)}, {500, Probability(10, 100)}});
  return p;
}

}  // namespace allais

}  // namespace framing
