#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <random>

#include "bconv/errors.hpp"
#include "bconv/gamma_lattice.hpp"
#include "oracles.hpp"

using namespace bconv;

namespace {

std::vector<Rational> values_of(const std::vector<GammaElement>& elements) {
  std::vector<Rational> out;
  for (const auto& e : elements) out.push_back(e.value);
  return out;
}

std::vector<Rational> rationals(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (const long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("enumerate_gamma small sets") {
  CHECK(values_of(enumerate_gamma(SpectrumSpec::make(4, 1, 2))) == rationals({0, 2, 16, 18}));
  CHECK(values_of(enumerate_gamma(SpectrumSpec::make(2, 1, 2))) == rationals({0, 1, 4, 5}));
  CHECK(values_of(enumerate_gamma(SpectrumSpec::make(4, 3, 2))) == rationals({0, 6, 48, 54}));
  // n odd: the digit is a half-integer
  const auto odd = values_of(enumerate_gamma(SpectrumSpec::make(3, 1, 2)));
  CHECK(odd == std::vector<Rational>{0, Rational(3, 2), 9, Rational(21, 2)});
}

TEST_CASE("enumerate_gamma matches brute force") {
  for (long n = 2; n <= 6; ++n) {
    for (long p : {1L, 3L, 5L, 7L}) {
      for (int depth = 0; depth <= 7; ++depth) {
        const auto got = values_of(enumerate_gamma(SpectrumSpec::make(n, p, depth)));
        const auto want = oracle::gamma_set(n, p, depth);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
      }
    }
  }
}

TEST_CASE("lattice invariants") {
  const auto spec = SpectrumSpec::make(5, 3, 8);
  const auto elements = enumerate_gamma(spec);
  CHECK(std::is_sorted(elements.begin(), elements.end(),
                       [](const GammaElement& a, const GammaElement& b) { return a.value < b.value; }));
  CHECK(std::adjacent_find(elements.begin(), elements.end(), [](const auto& a, const auto& b) {
          return a.value == b.value;
        }) == elements.end());
  for (const auto& e : elements) {
    CHECK(e.value >= 0);
    CHECK((e.value.get_den() == 1 || e.value.get_den() == 2));
    CHECK(digits_to_value(spec, e.digits(spec)) == e.value);
  }

  // prefix closure: depth K is the first 2^K entries of depth K+1
  const auto shallow = values_of(enumerate_gamma(SpectrumSpec::make(5, 3, 7)));
  const auto deep = values_of(enumerate_gamma(spec));
  CHECK(std::equal(shallow.begin(), shallow.end(), deep.begin()));

  // scaling law
  const auto base = values_of(enumerate_gamma(SpectrumSpec::make(5, 1, 8)));
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(deep[i] == 3 * base[i]);
}

TEST_CASE("digit round trips") {
  const auto spec = SpectrumSpec::make(4, 1, 0);
  const std::vector<Rational> two_two{2, 2};
  CHECK(digits_to_value(spec, two_two) == 18);
  CHECK_FALSE(value_to_digits(spec, Rational(6)).has_value());
  const auto spec3 = SpectrumSpec::make(4, 3, 0);
  CHECK(*value_to_digits(spec3, Rational(54)) == two_two);
  CHECK(value_to_digits(spec, Rational(0))->empty());
  CHECK_FALSE(value_to_digits(spec, Rational(-2)).has_value());
  CHECK_FALSE(value_to_digits(spec, Rational(1, 2)).has_value());
  const std::vector<Rational> bad{1};
  CHECK_THROWS_AS(digits_to_value(spec, bad), ContractViolation);

  // membership agrees with brute force over depth 3 and beyond
  const auto deep = oracle::gamma_set(4, 1, 4);
  for (long v = 0; v <= 4 * 8 * 8 * 8; ++v) {
    const bool member = std::binary_search(deep.begin(), deep.end(), Rational(v));
    const auto digits = value_to_digits(spec, Rational(v));
    CHECK(digits.has_value() == member);
    if (digits) CHECK(digits_to_value(spec, *digits) == v);
  }
}

TEST_CASE("spec validation and the enumeration cap") {
  CHECK_THROWS_AS(SpectrumSpec::make(1, 1, 2), ContractViolation);
  CHECK_THROWS_AS(SpectrumSpec::make(4, 2, 2), ContractViolation);
  CHECK_THROWS_AS(SpectrumSpec::make(4, -1, 2), ContractViolation);
  CHECK_THROWS_AS(enumerate_gamma(SpectrumSpec::make(4, 1, 25)), ResourceLimit);
  CHECK_THROWS_AS(enumerate_gamma(SpectrumSpec::make(4, 1, 6), 5), ResourceLimit);
  CHECK(enumerate_gamma(SpectrumSpec::make(4, 1, 5), 5).size() == 32);

  ::setenv("BS_MAX_ENUM", "3", 1);
  CHECK(enumeration_cap_from_env() == 3);
  CHECK_THROWS_AS(enumerate_gamma(SpectrumSpec::make(4, 1, 4)), ResourceLimit);
  ::setenv("BS_MAX_ENUM", "junk", 1);
  CHECK(enumeration_cap_from_env() == kDefaultEnumerationCap);
  ::unsetenv("BS_MAX_ENUM");
}

TEST_CASE("GammaLattice indexes by digit mask") {
  const GammaLattice lattice(SpectrumSpec::make(4, 1, 3));
  CHECK(lattice.size() == 8);
  CHECK(lattice.value(5) == 2 + 128);
  CHECK(lattice.element(5).digit_mask == 5);
  CHECK(lattice.element(5).digits(lattice.spec()) == std::vector<Rational>{2, 0, 2});
}

TEST_CASE("Hadamard triples") {
  const std::vector<Rational> l{0, 2};
  CHECK(is_hadamard_triple(std::vector<Integer>{0, 2}, l, 8));
  CHECK(is_hadamard_triple(std::vector<Integer>{-1, 1}, l, 8));
  // column inner product 1 + e^{i pi/2} = 1 + i
  CHECK_FALSE(is_hadamard_triple(std::vector<Integer>{0, 1}, l, 8));
  // the 4-point DFT
  CHECK(is_hadamard_triple(std::vector<Integer>{0, 1, 2, 3}, std::vector<Rational>{0, 1, 2, 3}, 4));
  CHECK_THROWS_AS(is_hadamard_triple(std::vector<Integer>{0}, l, 8), ContractViolation);
  CHECK_THROWS_AS(is_hadamard_triple(std::vector<Integer>{}, std::vector<Rational>{}, 8), ContractViolation);
}
