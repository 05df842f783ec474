#pragma once

// Bernoulli convolution measures: the law of sum_{k>=1} +-lambda^k with fair
// independent signs, equivalently the invariant measure of the IFS
// {lambda(x+1), lambda(x-1)}.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "bconv/rational.hpp"

namespace bconv {

// Contraction ratio lambda = num/den, reduced, 0 < lambda < 1.
// The spectral constructions use lambda = q/(2n); n() is only meaningful when
// the denominator is even.
class BernoulliParam {
 public:
  static BernoulliParam make(long numerator, long denominator);
  // "q/m" or "q/m" with common factors; the value is reduced before validation.
  static BernoulliParam parse(std::string_view text);

  long q() const { return num_; }
  long denominator() const { return den_; }
  bool has_even_denominator() const { return den_ % 2 == 0; }
  long n() const;  // denominator / 2, requires an even denominator

  const Rational& lambda() const { return lambda_; }
  double value() const { return value_; }

  std::string to_string() const;

  friend bool operator==(const BernoulliParam& a, const BernoulliParam& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  BernoulliParam(long num, long den);

  long num_;
  long den_;
  Rational lambda_;
  double value_;
};

struct TransformValue {
  double value = 1.0;
  double abs_error_bound = 0.0;
  int product_depth = 0;
};

struct Interval {
  Rational lo;
  Rational hi;
};

struct SampleSet {
  std::vector<double> values;
  // Every draw is within this distance of a draw from the untruncated measure.
  double tail_radius = 0.0;
  int terms = 0;
};

// cos(2 pi x) after exact reduction of x mod 1. Odd multiples of 1/4 give an
// exact 0 and multiples of 1/2 an exact +-1.
inline double cos_2pi(double x) {
  const double r = std::fmod(std::abs(x), 1.0);
  if (r == 0.25 || r == 0.75) return 0.0;
  if (r == 0.0) return 1.0;
  if (r == 0.5) return -1.0;
  return std::cos(2.0 * std::numbers::pi * r);
}

// Upper bound on |muhat(t) - prod_{k<=depth} cos(2 pi lambda^k t)|:
// 2 pi^2 t^2 lambda^{2(depth+1)} / (1 - lambda^2).
double truncation_bound(const BernoulliParam& lam, double t, int depth);

// prod_{k=1..depth} cos(2 pi lambda^k t) together with its truncation bound.
TransformValue eval_muhat(const BernoulliParam& lam, double t, int depth);

// [-lambda/(1-lambda), lambda/(1-lambda)]
Interval support_interval(const BernoulliParam& lam);

// `count` independent draws of sum_{k=1..terms} w_k lambda^k, w_k uniform on {-1, +1}.
// Deterministic for a fixed seed.
SampleSet sample_measure(const BernoulliParam& lam, std::size_t count, int terms,
                         std::uint64_t seed);

// max over the grid of |muhat(t) - cos(2 pi lambda t) muhat(lambda t)|, both
// sides evaluated at the same product depth.
double check_invariance(const BernoulliParam& lam, std::span<const double> grid, int depth);

// Mean of cos(2 pi t X) over the samples. The measure is symmetric, so this is
// the empirical characteristic function.
double empirical_transform(std::span<const double> samples, double t);

}  // namespace bconv
