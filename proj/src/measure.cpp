#include "bconv/measure.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "bconv/errors.hpp"

namespace bconv {

BernoulliParam::BernoulliParam(long num, long den)
    : num_(num), den_(den), lambda_(num, den), value_(static_cast<double>(num) / den) {}

BernoulliParam BernoulliParam::make(long numerator, long denominator) {
  if (denominator <= 0 || numerator <= 0) {
    throw ContractViolation("lambda must be a positive rational");
  }
  const Rational r = make_rational(numerator, denominator);
  if (r >= 1) throw ContractViolation("lambda must lie in (0, 1)");
  return BernoulliParam(r.get_num().get_si(), r.get_den().get_si());
}

BernoulliParam BernoulliParam::parse(std::string_view text) {
  const Rational r = parse_rational(text);
  if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p()) {
    throw ContractViolation("lambda components out of range");
  }
  return make(r.get_num().get_si(), r.get_den().get_si());
}

long BernoulliParam::n() const {
  if (den_ % 2 != 0) throw ContractViolation("lambda = " + to_string() + " is not of the form q/(2n)");
  return den_ / 2;
}

std::string BernoulliParam::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double truncation_bound(const BernoulliParam& lam, double t, int depth) {
  const double l = lam.value();
  const double l2 = l * l;
  return 2.0 * std::numbers::pi * std::numbers::pi * t * t * std::pow(l2, depth + 1) / (1.0 - l2);
}

TransformValue eval_muhat(const BernoulliParam& lam, double t, int depth) {
  if (depth < 1) throw ContractViolation("product depth must be >= 1");
  if (!std::isfinite(t)) throw ContractViolation("t must be finite");
  const double l = lam.value();
  double scale = l;
  double product = 1.0;
  for (int k = 1; k <= depth; ++k) {
    product *= cos_2pi(scale * t);
    scale *= l;
  }
  return {product, truncation_bound(lam, t, depth), depth};
}

Interval support_interval(const BernoulliParam& lam) {
  const Rational r = lam.lambda() / (1 - lam.lambda());
  return {-r, r};
}

SampleSet sample_measure(const BernoulliParam& lam, std::size_t count, int terms,
                         std::uint64_t seed) {
  if (count == 0) throw ContractViolation("sample count must be positive");
  if (terms < 1) throw ContractViolation("terms must be >= 1");

  std::vector<double> powers(static_cast<std::size_t>(terms));
  double p = lam.value();
  for (auto& v : powers) {
    v = p;
    p *= lam.value();
  }

  SampleSet out;
  out.terms = terms;
  out.tail_radius = std::pow(lam.value(), terms + 1) / (1.0 - lam.value());
  out.values.resize(count);

  std::mt19937_64 gen(seed);
  for (auto& x : out.values) {
    double sum = 0.0;
    std::uint64_t bits = 0;
    for (int k = 0; k < terms; ++k) {
      if (k % 64 == 0) bits = gen();
      sum += (bits & 1u) ? powers[k] : -powers[k];
      bits >>= 1;
    }
    x = sum;
  }
  return out;
}

double check_invariance(const BernoulliParam& lam, std::span<const double> grid, int depth) {
  if (grid.empty()) throw ContractViolation("invariance grid is empty");
  if (depth < 2) throw ContractViolation("invariance check needs depth >= 2");
  double worst = 0.0;
  for (const double t : grid) {
    const double lhs = eval_muhat(lam, t, depth).value;
    const double rhs = cos_2pi(lam.value() * t) *
                       eval_muhat(lam, lam.value() * t, depth).value;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double empirical_transform(std::span<const double> samples, double t) {
  if (samples.empty()) throw ContractViolation("no samples");
  double sum = 0.0;
  for (const double x : samples) sum += std::cos(2.0 * std::numbers::pi * t * x);
  return sum / static_cast<double>(samples.size());
}

}  // namespace bconv
