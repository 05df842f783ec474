#pragma once

// Candidate spectra p * Gamma(1/2n): finite sums sum_k a_k (2n)^k with digits
// a_k in {0, n/2}, dilated by an odd integer p.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bconv/rational.hpp"

namespace bconv {

inline constexpr int kDefaultEnumerationCap = 24;

// Reads BS_MAX_ENUM when set to a positive integer, otherwise the default.
int enumeration_cap_from_env();

struct SpectrumSpec {
  long n = 4;
  long p = 1;
  int depth = 1;  // digit depth K

  static SpectrumSpec make(long n, long p, int depth);
  Rational digit() const { return make_rational(n, 2); }
  long base() const { return 2 * n; }
};

struct GammaElement {
  Rational value;
  // bit k set <=> digit k equals n/2
  std::uint32_t digit_mask = 0;
  int depth = 0;

  Rational digit(const SpectrumSpec& spec, int k) const;
  std::vector<Rational> digits(const SpectrumSpec& spec) const;
};

// Lazily indexed view of the 2^K elements of p * Gamma(1/2n) at depth K.
// Element i has digit mask i, and ascending i gives ascending value.
class GammaLattice {
 public:
  explicit GammaLattice(const SpectrumSpec& spec, int cap = enumeration_cap_from_env());

  const SpectrumSpec& spec() const { return spec_; }
  std::size_t size() const { return std::size_t{1} << spec_.depth; }
  Rational value(std::size_t index) const;
  GammaElement element(std::size_t index) const;
  std::vector<Rational> values() const;

 private:
  SpectrumSpec spec_;
  std::vector<Rational> place_values_;  // p * (n/2) * (2n)^k
};

// All 2^K elements sorted ascending. Throws ResourceLimit when K exceeds the cap.
std::vector<GammaElement> enumerate_gamma(const SpectrumSpec& spec,
                                          int cap = enumeration_cap_from_env());

// digits are the actual digit values, each 0 or n/2, little-endian.
Rational digits_to_value(const SpectrumSpec& spec, std::span<const Rational> digits);

// Shortest little-endian digit string for value, or nullopt when value is not in
// p * Gamma(1/2n) at any depth. Zero maps to an empty digit string.
std::optional<std::vector<Rational>> value_to_digits(const SpectrumSpec& spec, const Rational& value);

// The |B| x |L| matrix of exp(2 pi i b l / N) / sqrt|B| is unitary, tested column by
// column to within 1e-12.
bool is_hadamard_triple(std::span<const Integer> b_set, std::span<const Rational> l_set, long modulus);

}  // namespace bconv
