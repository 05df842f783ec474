#pragma once

// Maximality of E(Gamma(1/8)) in L^2(mu_{3/8}): for a rational t outside
// Gamma(1/8), find g in Gamma(1/8) with muhat_{3/8}(t - g) != 0.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "bconv/rational.hpp"

namespace bconv {

enum class CaseTag {
  not_in_zero_set,
  p0_i0,
  p0_odd_digit,
  p0_even_digit,
  p1_i0,
  p1_odd_digit,
  p1_even_digit,
  p_large,
  fallback_search,
};

inline constexpr std::array kAllCaseTags = {
    CaseTag::not_in_zero_set, CaseTag::p0_i0,         CaseTag::p0_odd_digit,
    CaseTag::p0_even_digit,   CaseTag::p1_i0,         CaseTag::p1_odd_digit,
    CaseTag::p1_even_digit,   CaseTag::p_large,       CaseTag::fallback_search,
};

std::string_view to_string(CaseTag tag);

struct MaximalityWitness {
  Rational t;
  Rational gamma;
  CaseTag case_tag = CaseTag::not_in_zero_set;
  bool verified = false;
};

inline constexpr int kFallbackDepth = 12;

// Throws ContractViolation when t is in Gamma(1/8) (no witness can exist
// there) and Unresolved when neither the constructive cases nor the
// bounded fallback search produce a verified witness.
MaximalityWitness find_witness(const Rational& t);

// t - gamma is not in Z_{3/8}. Throws ContractViolation when gamma is not in Gamma(1/8).
bool verify_witness(const Rational& t, const Rational& gamma);

bool in_gamma_18(const Rational& value);

struct CaseCount {
  std::size_t attempted = 0;
  std::size_t verified = 0;
};

struct StressReport {
  std::size_t requested = 0;
  std::size_t sampled = 0;          // after excluding members of Gamma(1/8)
  std::size_t excluded_in_gamma = 0;
  std::array<CaseCount, kAllCaseTags.size()> by_case{};
  std::vector<Rational> unresolved;

  const CaseCount& count(CaseTag tag) const { return by_case[static_cast<std::size_t>(tag)]; }
  std::size_t verified_total() const;
};

// Draws `count` elements (2l+1) 8^k / (4 * 3^k) of Z_{3/8} with reduced numerator
// and denominator of absolute value at most height_bound, skips members of
// Gamma(1/8), and runs find_witness on the rest.
StressReport stress_maximality(std::size_t count, std::int64_t height_bound, std::uint64_t seed);

}  // namespace bconv
