#include "bconv/gamma_lattice.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <string>

#include "bconv/errors.hpp"

namespace bconv {

int enumeration_cap_from_env() {
  if (const char* env = std::getenv("BS_MAX_ENUM")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 31) return static_cast<int>(v);
  }
  return kDefaultEnumerationCap;
}

SpectrumSpec SpectrumSpec::make(long n, long p, int depth) {
  if (n < 2) throw ContractViolation("spectrum requires n >= 2");
  if (p < 1 || p % 2 == 0) throw ContractViolation("dilation p must be a positive odd integer");
  if (depth < 0) throw ContractViolation("digit depth must be nonnegative");
  return SpectrumSpec{n, p, depth};
}

Rational GammaElement::digit(const SpectrumSpec& spec, int k) const {
  return ((digit_mask >> k) & 1u) ? spec.digit() : Rational(0);
}

std::vector<Rational> GammaElement::digits(const SpectrumSpec& spec) const {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(depth));
  for (int k = 0; k < depth; ++k) out.push_back(digit(spec, k));
  return out;
}

GammaLattice::GammaLattice(const SpectrumSpec& spec, int cap) : spec_(SpectrumSpec::make(spec.n, spec.p, spec.depth)) {
  if (spec_.depth > cap) {
    throw ResourceLimit("digit depth " + std::to_string(spec_.depth) + " exceeds enumeration cap " +
                        std::to_string(cap));
  }
  Rational place = spec_.p * spec_.digit();
  for (int k = 0; k < spec_.depth; ++k) {
    place_values_.push_back(place);
    place *= spec_.base();
  }
}

Rational GammaLattice::value(std::size_t index) const {
  Rational v = 0;
  for (int k = 0; k < spec_.depth; ++k) {
    if ((index >> k) & 1u) v += place_values_[static_cast<std::size_t>(k)];
  }
  return v;
}

GammaElement GammaLattice::element(std::size_t index) const {
  return GammaElement{value(index), static_cast<std::uint32_t>(index), spec_.depth};
}

std::vector<Rational> GammaLattice::values() const {
  std::vector<Rational> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(value(i));
  return out;
}

std::vector<GammaElement> enumerate_gamma(const SpectrumSpec& spec, int cap) {
  const GammaLattice lattice(spec, cap);
  std::vector<GammaElement> out;
  out.reserve(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) out.push_back(lattice.element(i));
  return out;
}

Rational digits_to_value(const SpectrumSpec& spec, std::span<const Rational> digits) {
  const Rational half_n = spec.digit();
  Rational v = 0;
  Rational place = spec.p;
  for (const auto& d : digits) {
    if (d != 0 && d != half_n) {
      throw ContractViolation("digit " + to_compact_string(d) + " is not in {0, n/2}");
    }
    v += d * place;
    place *= spec.base();
  }
  return v;
}

std::optional<std::vector<Rational>> value_to_digits(const SpectrumSpec& spec, const Rational& value) {
  if (value < 0) return std::nullopt;
  // value = p * (n/2) * w with w a nonnegative integer whose base-2n digits are all 0 or 1
  const Rational w_q = value / (spec.p * spec.digit());
  if (!is_integer(w_q)) return std::nullopt;
  Integer w = w_q.get_num();
  std::vector<Rational> digits;
  const Integer base = spec.base();
  while (w > 0) {
    Integer r;
    mpz_fdiv_qr(w.get_mpz_t(), r.get_mpz_t(), w.get_mpz_t(), base.get_mpz_t());
    if (r > 1) return std::nullopt;
    digits.push_back(r == 1 ? spec.digit() : Rational(0));
  }
  return digits;
}

bool is_hadamard_triple(std::span<const Integer> b_set, std::span<const Rational> l_set, long modulus) {
  if (b_set.size() != l_set.size() || b_set.empty()) {
    throw ContractViolation("Hadamard triple needs |B| = |L| >= 1");
  }
  if (modulus < 2) throw ContractViolation("Hadamard modulus must be >= 2");

  const std::size_t size = b_set.size();
  const double norm = 1.0 / std::sqrt(static_cast<double>(size));
  // phase b*l/N reduced mod 1 exactly before going to floating point
  std::vector<std::complex<double>> m(size * size);
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      const Rational phase = fractional_part(Rational(b_set[r]) * l_set[c] / modulus);
      const double theta = 2.0 * std::numbers::pi * phase.get_d();
      m[r * size + c] = std::polar(norm, theta);
    }
  }
  for (std::size_t c1 = 0; c1 < size; ++c1) {
    for (std::size_t c2 = c1; c2 < size; ++c2) {
      std::complex<double> ip = 0.0;
      for (std::size_t r = 0; r < size; ++r) ip += std::conj(m[r * size + c1]) * m[r * size + c2];
      const std::complex<double> expected = (c1 == c2) ? 1.0 : 0.0;
      if (std::abs(ip - expected) > 1e-12) return false;
    }
  }
  return true;
}

}  // namespace bconv
