#include "bconv/maximality.hpp"

#include <optional>
#include <random>

#include "bconv/errors.hpp"
#include "bconv/gamma_lattice.hpp"
#include "bconv/measure.hpp"
#include "bconv/zero_set.hpp"

namespace bconv {

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::not_in_zero_set: return "not-in-zero-set";
    case CaseTag::p0_i0: return "p0-i0";
    case CaseTag::p0_odd_digit: return "p0-odd-digit";
    case CaseTag::p0_even_digit: return "p0-even-digit";
    case CaseTag::p1_i0: return "p1-i0";
    case CaseTag::p1_odd_digit: return "p1-odd-digit";
    case CaseTag::p1_even_digit: return "p1-even-digit";
    case CaseTag::p_large: return "p-large";
    case CaseTag::fallback_search: return "fallback-search";
  }
  return "fallback-search";
}

namespace {

const BernoulliParam& lambda_38() {
  static const BernoulliParam lam = BernoulliParam::make(3, 8);
  return lam;
}

const SpectrumSpec& gamma_18() {
  static const SpectrumSpec spec = SpectrumSpec::make(4, 1, 0);
  return spec;
}

std::vector<unsigned> base8_digits(Integer v) {
  std::vector<unsigned> out;
  while (v > 0) {
    out.push_back(static_cast<unsigned>(mpz_fdiv_ui(v.get_mpz_t(), 8)));
    mpz_fdiv_q_ui(v.get_mpz_t(), v.get_mpz_t(), 8);
  }
  return out;
}

struct Candidate {
  Rational gamma;
  CaseTag tag;
};

// The constructive cases for positive t in Z_{3/8}, with reduced form 2^d u / 3^p.
// Case p = 0 reads base-8 digits of u against {0, 1}; case p = 1 against {0, 3}.
// For an odd offending digit the candidate places a 1 at that position, so that
// the difference starts with b_i' - 1 (resp. b_i' - 3).
std::optional<Candidate> constructive_candidate(const ReducedForm38& form) {
  if (form.u <= 0 || form.d < 1) return std::nullopt;
  if (form.p > 1) return Candidate{Rational(2), CaseTag::p_large};

  const unsigned unit = form.p == 0 ? 1u : 3u;
  const std::vector<unsigned> digits = base8_digits(form.u);
  std::size_t first = digits.size();
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] != 0 && digits[i] != unit) {
      first = i;
      break;
    }
  }
  if (first == digits.size()) return std::nullopt;

  const Integer scale = pow_integer(2, static_cast<unsigned long>(form.d));
  const bool p0 = form.p == 0;
  if (first == 0) return Candidate{Rational(scale), p0 ? CaseTag::p0_i0 : CaseTag::p1_i0};

  Integer prefix = 0;
  Integer place = 1;
  for (std::size_t i = 0; i < first; ++i) {
    if (digits[i] == unit) prefix += place;
    place *= 8;
  }
  if (digits[first] % 2 == 1) {
    return Candidate{Rational(scale * (prefix + place)), p0 ? CaseTag::p0_odd_digit : CaseTag::p1_odd_digit};
  }
  return Candidate{Rational(scale * prefix), p0 ? CaseTag::p0_even_digit : CaseTag::p1_even_digit};
}

bool not_in_zero_set(const Rational& x) { return !in_zero_set(lambda_38(), x).member; }

}  // namespace

bool in_gamma_18(const Rational& value) { return value_to_digits(gamma_18(), value).has_value(); }

bool verify_witness(const Rational& t, const Rational& gamma) {
  if (!in_gamma_18(gamma)) throw ContractViolation(to_fraction_string(gamma) + " is not in Gamma(1/8)");
  return not_in_zero_set(t - gamma);
}

MaximalityWitness find_witness(const Rational& t) {
  if (in_gamma_18(t)) {
    throw ContractViolation(to_fraction_string(t) + " lies in Gamma(1/8); no witness is required");
  }
  MaximalityWitness w{t, Rational(0), CaseTag::not_in_zero_set, false};
  if (not_in_zero_set(t)) {
    w.verified = true;
    return w;
  }

  if (t > 0) {
    if (const auto form = reduced_form_38(t)) {
      if (const auto cand = constructive_candidate(*form)) {
        if (in_gamma_18(cand->gamma) && verify_witness(t, cand->gamma)) {
          w.gamma = cand->gamma;
          w.case_tag = cand->tag;
          w.verified = true;
          return w;
        }
      }
    }
  }

  const GammaLattice lattice(SpectrumSpec::make(4, 1, kFallbackDepth));
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    Rational g = lattice.value(i);
    if (not_in_zero_set(t - g)) {
      w.gamma = std::move(g);
      w.case_tag = CaseTag::fallback_search;
      w.verified = true;
      return w;
    }
  }
  throw Unresolved("no witness for t = " + to_fraction_string(t) + " in Gamma(1/8) up to depth " +
                   std::to_string(kFallbackDepth));
}

std::size_t StressReport::verified_total() const {
  std::size_t total = 0;
  for (const auto& c : by_case) total += c.verified;
  return total;
}

namespace {

// (2l+1) 8^k / (4 * 3^k) with reduced height <= bound, or nullopt on rejection.
std::optional<Rational> draw_zero_set_member(std::mt19937_64& gen, std::int64_t bound) {
  long max_k = 1;
  while ((std::int64_t{1} << (3 * (max_k + 1) - 2)) <= bound && max_k < 20) ++max_k;
  const long k = std::uniform_int_distribution<long>(1, max_k)(gen);
  const std::int64_t odd_cap = bound >> (3 * k - 2);
  if (odd_cap < 1) return std::nullopt;
  // odd o with |o| <= odd_cap
  const std::int64_t half = (odd_cap - 1) / 2;
  const std::int64_t l = std::uniform_int_distribution<std::int64_t>(-half - 1, half)(gen);
  const Integer odd = Integer(2) * static_cast<long>(l) + 1;
  const Rational t = make_rational(odd * pow_integer(8, static_cast<unsigned long>(k)),
                                   Integer(4) * pow_integer(3, static_cast<unsigned long>(k)));
  if (abs(t.get_num()) > bound || t.get_den() > bound) return std::nullopt;
  return t;
}

}  // namespace

StressReport stress_maximality(std::size_t count, std::int64_t height_bound, std::uint64_t seed) {
  if (count == 0) throw ContractViolation("stress count must be positive");
  if (height_bound < 2) throw ContractViolation("height bound must be at least 2");

  StressReport report;
  report.requested = count;
  std::mt19937_64 gen(seed);
  std::vector<Rational> inputs;
  const std::size_t max_draws = 1000 * count;
  for (std::size_t draws = 0; inputs.size() < count && draws < max_draws; ++draws) {
    auto t = draw_zero_set_member(gen, height_bound);
    if (!t) continue;
    if (in_gamma_18(*t)) {
      ++report.excluded_in_gamma;
      continue;
    }
    inputs.push_back(std::move(*t));
  }
  report.sampled = inputs.size();

  std::vector<std::optional<MaximalityWitness>> results(inputs.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long si = 0; si < static_cast<long>(inputs.size()); ++si) {
    const auto i = static_cast<std::size_t>(si);
    try {
      results[i] = find_witness(inputs[i]);
    } catch (const Unresolved&) {
      results[i] = std::nullopt;
    }
  }

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!results[i]) {
      report.unresolved.push_back(inputs[i]);
      continue;
    }
    auto& slot = report.by_case[static_cast<std::size_t>(results[i]->case_tag)];
    ++slot.attempted;
    if (results[i]->verified) ++slot.verified;
  }
  return report;
}

}  // namespace bconv
