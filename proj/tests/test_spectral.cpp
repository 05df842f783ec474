#include <doctest.h>

#include <cmath>

#include "bconv/errors.hpp"
#include "bconv/spectral.hpp"
#include "bconv/zero_set.hpp"
#include "oracles.hpp"

using namespace bconv;

namespace {

std::vector<SpectralPoint> grid_points(const Rational& lo, const Rational& hi, long count) {
  return Grid::make(lo, hi, count).points();
}

}  // namespace

TEST_CASE("Grid parsing") {
  const Grid g = Grid::parse("0:6/7:8");
  CHECK(g.count == 8);
  CHECK(g.exact_points().back() == Rational(6, 7));
  CHECK(g.exact_points()[1] == Rational(6, 49));
  CHECK(Grid::parse("1/2:1/2:1").exact_points() == std::vector<Rational>{Rational(1, 2)});
  CHECK_THROWS_AS(Grid::parse("0:1"), ContractViolation);
  CHECK_THROWS_AS(Grid::parse("0:1:0"), ContractViolation);
  CHECK_THROWS_AS(Grid::parse("1:0:4"), ContractViolation);
  CHECK_THROWS_AS(Grid::parse("0:1:2.5"), ContractViolation);
}

TEST_CASE("partial_spectral at the origin") {
  const auto origin = SpectralPoint::from(Rational(0));
  const auto a = partial_spectral(BernoulliParam::make(3, 8), SpectrumSpec::make(4, 1, 10), origin, 30);
  CHECK(a.value == 1.0);
  CHECK(a.per_term_error == 0.0);
  const auto b = partial_spectral(BernoulliParam::make(1, 4), SpectrumSpec::make(2, 1, 10), origin, 30);
  CHECK(b.value == 1.0);
}

TEST_CASE("defect witness for p = 2n - 1") {
  const auto lam = BernoulliParam::make(1, 8);
  const auto two = SpectralPoint::from(Rational(2));
  for (int depth = 0; depth <= 8; ++depth) {
    CHECK(partial_spectral(lam, SpectrumSpec::make(4, 7, depth), two, 30).value == 0.0);
  }
  // each term independently certified by brute force
  for (const auto& g : oracle::gamma_set(4, 7, 6)) CHECK(oracle::zero_member(1, 8, 2 + g).has_value());
}

TEST_CASE("scan_history monotone in depth and bounded for orthogonal families") {
  const auto lam = BernoulliParam::make(1, 8);
  const auto pts = grid_points(0, Rational(6, 7), 32);
  const std::vector<int> depths{2, 4, 6, 8};
  const auto hist = scan_history(lam, 4, 3, depths, pts, 30);
  REQUIRE(hist.size() == 4);
  for (std::size_t s = 0; s < hist.size(); ++s) {
    CHECK(hist[s].digit_depth == depths[s]);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(hist[s].values[i] >= 0.0);
      CHECK(hist[s].values[i] <= 1.0 + hist[s].error_bounds[i] + 1e-12);
      if (s > 0) CHECK(hist[s].values[i] >= hist[s - 1].values[i]);
    }
  }
  // scan() is the single-depth slice
  const auto one = scan(lam, SpectrumSpec::make(4, 3, 6), pts, 30);
  CHECK(one.values == hist[2].values);
  CHECK(one.term_truncation_note.find("2^6") != std::string::npos);

  CHECK_THROWS_AS(scan(lam, SpectrumSpec::make(4, 3, 6), std::vector<SpectralPoint>{}, 30), ContractViolation);
  const std::vector<int> unsorted{4, 2};
  CHECK_THROWS_AS(scan_history(lam, 4, 3, unsorted, pts, 30), ContractViolation);
}

TEST_CASE("partial sums match a naive sum over the brute-force lattice") {
  const auto lam = BernoulliParam::make(1, 4);
  const auto set = oracle::gamma_set(2, 3, 5);
  for (const double t : {0.0625, 0.4, 0.9}) {
    long double want = 0.0L;
    for (const auto& g : set) {
      const long double v = oracle::product_transform(0.25L, t + g.get_d(), 40);
      want += v * v;
    }
    const auto got = partial_spectral(lam, SpectrumSpec::make(2, 3, 5), SpectralPoint{t, std::nullopt}, 40);
    CHECK(std::abs(got.value - static_cast<double>(want)) < 1e-12);
  }
}

TEST_CASE("classify_scan") {
  const auto pts = grid_points(0, 1, 16);
  const std::vector<int> depths{4, 8, 12};
  const auto onb = scan_history(BernoulliParam::make(1, 4), 2, 1, depths, pts, 40);
  CHECK(classify_scan(onb) == Diagnosis::consistent_with_onb);

  auto defect_pts = grid_points(0, 4, 9);  // contains t = 2
  const auto defect = scan_history(BernoulliParam::make(1, 8), 4, 7, depths, defect_pts, 30);
  CHECK(classify_scan(defect) == Diagnosis::deficiency_evidence);

  CHECK_THROWS_AS(classify_scan(std::span(onb.data(), 1)), ContractViolation);
  CHECK(to_string(Diagnosis::inconclusive) == "inconclusive");

  // thresholds are honoured
  ClassifyThresholds strict;
  strict.plateau = 1e-30;
  CHECK(classify_scan(onb, strict) != Diagnosis::consistent_with_onb);
}

TEST_CASE("gram_section") {
  const auto lam = BernoulliParam::make(1, 8);
  const auto g = gram_section(lam, GammaLattice(SpectrumSpec::make(4, 1, 3)).values(), 30);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(g(i, j) == (i == j ? 1.0 : 0.0));
  }
  const auto single = gram_section(BernoulliParam::make(3, 8), std::vector<Rational>{0}, 10);
  CHECK(single.entries == std::vector<double>{1.0});

  const auto third = BernoulliParam::make(1, 3);
  const auto h = gram_section(third, std::vector<Rational>{0, Rational(1, 2)}, 40);
  const double off = static_cast<double>(oracle::product_transform(1.0L / 3.0L, 0.5L, 40));
  CHECK(h(0, 1) == doctest::Approx(off).epsilon(1e-12));
  CHECK(h(0, 1) != 0.0);
  CHECK(h(1, 0) == h(0, 1));

  CHECK_THROWS_AS(gram_section(lam, std::vector<Rational>{}, 10), ContractViolation);
  CHECK_THROWS_AS(gram_section(lam, GammaLattice(SpectrumSpec::make(4, 1, 3)).values(), 10, 4), ResourceLimit);
}

TEST_CASE("frame_bound_estimates") {
  GramSection id;
  id.frequencies = {0, 1, 2};
  id.entries = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  auto b = frame_bound_estimates(id, 20);
  CHECK(b.upper == doctest::Approx(1.0));
  CHECK(b.lower == doctest::Approx(1.0));

  GramSection two;
  two.frequencies = {0, 1};
  const double r = 0.3;
  two.entries = {1, r, r, 1};
  b = frame_bound_estimates(two, 200);
  CHECK(b.upper == doctest::Approx(1.0 + r).epsilon(1e-10));
  CHECK(b.lower == doctest::Approx(1.0 - r).epsilon(1e-10));

  const auto g = gram_section(BernoulliParam::make(1, 8), GammaLattice(SpectrumSpec::make(4, 3, 5)).values(), 30);
  b = frame_bound_estimates(g, 50);
  CHECK(std::abs(b.upper - 1.0) < 1e-12);
  CHECK(std::abs(b.lower - 1.0) < 1e-12);

  // a non-orthogonal family spreads the spectrum
  const auto h = gram_section(BernoulliParam::make(1, 3), std::vector<Rational>{0, Rational(1, 4), Rational(1, 2)}, 40);
  b = frame_bound_estimates(h, 500);
  CHECK(b.upper > 1.0);
  CHECK(b.lower < 1.0);
  CHECK(b.lower > 0.0);
  CHECK_THROWS_AS(frame_bound_estimates(h, 0), ContractViolation);
}

TEST_CASE("derivative_scan") {
  SpectralScan flat;
  flat.grid = {0.0, 0.5, 1.0, 1.5};
  flat.values = {1.0, 1.0, 1.0, 1.0};
  CHECK(derivative_scan(flat) == 0.0);

  SpectralScan line = flat;
  line.values = {0.0, 1.0, 2.0, 3.0};
  CHECK(derivative_scan(line) == doctest::Approx(2.0));

  SpectralScan uneven = flat;
  uneven.grid = {0.0, 0.5, 1.2, 1.5};
  CHECK_THROWS_AS(derivative_scan(uneven), ContractViolation);
  SpectralScan tiny;
  tiny.grid = {0.0, 1.0};
  tiny.values = {0.0, 1.0};
  CHECK_THROWS_AS(derivative_scan(tiny), ContractViolation);

  CHECK(derivative_bound(BernoulliParam::make(1, 4)) == doctest::Approx(2.0 / 3.0));
  CHECK(derivative_bound(BernoulliParam::make(1, 8)) == doctest::Approx(2.0 / 7.0));

  // Gamma(1/4) scans stay under 2/3 at every depth
  const auto pts = grid_points(0, 1, 64);
  const std::vector<int> depths{2, 4, 8};
  for (const auto& s : scan_history(BernoulliParam::make(1, 4), 2, 1, depths, pts, 40)) {
    CHECK(derivative_scan(s) <= 2.0 / 3.0 + 0.05);
  }
}
