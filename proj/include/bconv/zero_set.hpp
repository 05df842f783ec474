#pragma once

// Exact decisions about Z_lambda = { (2m+1) / (4 lambda^k) : m in Z, k >= 1 },
// the zero set of the Fourier transform of mu_lambda. Exponentials e_a, e_b are
// orthogonal in L^2(mu_lambda) exactly when a - b lies in Z_lambda.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "bconv/measure.hpp"
#include "bconv/rational.hpp"

namespace bconv {

inline constexpr std::size_t kDefaultPairwiseCap = 4096;

struct ZeroWitness {
  bool member = false;
  long k = 0;          // valid iff member
  Integer m = 0;       // valid iff member: t = (2m+1) / (4 lambda^k)
  long search_bound = 1;
};

// t = 2^d * u / 3^p with u odd, and 3 does not divide u when p > 0.
struct ReducedForm38 {
  long d = 0;
  Integer u = 1;
  long p = 0;
};

// Largest k that can possibly witness membership of t (t != 0).
long zero_search_bound(const BernoulliParam& lam, const Rational& t);

ZeroWitness in_zero_set(const BernoulliParam& lam, const Rational& t);

// Exhaustive search over k <= zero_search_bound, without the lambda = 3/8 fast path.
ZeroWitness in_zero_set_search(const BernoulliParam& lam, const Rational& t);

// nullopt when the denominator has a prime factor other than 2 or 3.
// Throws ContractViolation for t = 0.
std::optional<ReducedForm38> reduced_form_38(const Rational& t);

struct OrthogonalityResult {
  bool orthogonal = false;
  std::optional<ZeroWitness> witness;  // present when orthogonal
};

OrthogonalityResult are_orthogonal(const BernoulliParam& lam, const Rational& a, const Rational& b);

struct PairwiseReport {
  bool all_orthogonal = true;
  std::optional<std::pair<std::size_t, std::size_t>> first_failure;  // indices into the set
  std::size_t pairs_checked = 0;
};

// Exhaustive exact check over unordered pairs, stopping at the first
// non-orthogonal pair in row-major (i < j) order.
PairwiseReport pairwise_orthogonal(const BernoulliParam& lam, std::span<const Rational> set,
                                   std::size_t cap = kDefaultPairwiseCap);

}  // namespace bconv
