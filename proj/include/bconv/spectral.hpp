#pragma once

// Truncated spectral functions c(t) = sum_{g in p Gamma} |muhat(t + g)|^2 and the
// finite Gram sections of an exponential family.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bconv/gamma_lattice.hpp"
#include "bconv/kernels.hpp"
#include "bconv/measure.hpp"

namespace bconv {

// `count` equally spaced points from lo to hi inclusive ("lo:hi:count").
// count = 1 is the single point lo.
struct Grid {
  Rational lo;
  Rational hi;
  long count = 1;

  static Grid parse(std::string_view text);
  static Grid make(const Rational& lo, const Rational& hi, long count);

  std::vector<Rational> exact_points() const;
  std::vector<SpectralPoint> points() const;
  std::vector<double> values() const;
};

struct SpectralScan {
  BernoulliParam lam = BernoulliParam::make(1, 2);
  SpectrumSpec spec;
  std::vector<double> grid;
  std::vector<double> values;        // certified lower bounds, up to error_bounds
  std::vector<double> error_bounds;  // accumulated product-truncation error per point
  int digit_depth = 0;
  int product_depth = 0;
  std::string term_truncation_note;
};

// Sum over the 2^K elements of p * Gamma(1/2n) at depth K = spec.depth.
PartialSpectral partial_spectral(const BernoulliParam& lam, const SpectrumSpec& spec,
                                 const SpectralPoint& t, int product_depth);

SpectralScan scan(const BernoulliParam& lam, const SpectrumSpec& spec,
                  std::span<const SpectralPoint> grid, int product_depth);

// One scan per digit depth in `depths` (ascending), sharing a single term table
// at the largest depth; the smaller sums are prefixes of the largest.
std::vector<SpectralScan> scan_history(const BernoulliParam& lam, long n, long p,
                                       std::span<const int> depths,
                                       std::span<const SpectralPoint> grid, int product_depth);

enum class Diagnosis { consistent_with_onb, deficiency_evidence, inconclusive };

std::string_view to_string(Diagnosis d);

struct ClassifyThresholds {
  double plateau = 1e-2;
  double increment = 1e-4;
  double gap = 5e-2;
};

// history: scans over the same grid at increasing digit depth (at least two).
// Deficiency is judged on the increment between the two deepest scans.
Diagnosis classify_scan(std::span<const SpectralScan> history, const ClassifyThresholds& thresholds = {});

struct GramSection {
  std::vector<Rational> frequencies;
  std::vector<double> entries;  // row-major
  int product_depth = 0;

  std::size_t size() const { return frequencies.size(); }
  double operator()(std::size_t i, std::size_t j) const { return entries[i * size() + j]; }
};

inline constexpr std::size_t kDefaultGramCap = 2048;

GramSection gram_section(const BernoulliParam& lam, std::span<const Rational> frequencies,
                         int product_depth, std::size_t cap = kDefaultGramCap);

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  double lower_error = 0.0;  // residual norm |G v - theta v| of the final iterate
  double upper_error = 0.0;
};

// Largest eigenvalue by power iteration; smallest by power iteration on
// (upper + upper_error) I - G.
FrameBounds frame_bound_estimates(const GramSection& gram, int iterations);

// Largest |central difference| over interior points of a uniform grid.
double derivative_scan(const SpectralScan& s);

// 2 lambda / (1 - lambda)
double derivative_bound(const BernoulliParam& lam);

}  // namespace bconv
