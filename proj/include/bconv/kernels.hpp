#pragma once

// Data-parallel kernels behind the spectral scans, Gram sections and transfer
// operators. Every OpenMP kernel has a serial twin with the same contract; the
// tests require the two to agree bit for bit, and bench/ compares their speed.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bconv/measure.hpp"
#include "bconv/rational.hpp"

namespace bconv {

// A value of the truncated transform below this magnitude triggers an exact
// zero-set check when the evaluation point is rational.
inline constexpr double kExactCheckThreshold = 1e-6;

struct PartialSpectral {
  double value = 0.0;
  double per_term_error = 0.0;
};

struct SpectralPoint {
  double t = 0.0;
  std::optional<Rational> exact;  // set when t is a known rational

  static SpectralPoint from(const Rational& q) { return {q.get_d(), q}; }
};

// Truncated transforms muhat(t + offset_j) for a fixed family of rational
// offsets. The phases frac(lambda^k * offset_j), k = 1..depth, are reduced
// exactly before conversion to double, so large offsets lose no accuracy.
class TermTable {
 public:
  static constexpr std::size_t kMaxEntries = std::size_t{1} << 27;

  TermTable(const BernoulliParam& lam, std::vector<Rational> offsets, int depth);

  const BernoulliParam& lambda() const { return lam_; }
  int depth() const { return depth_; }
  std::size_t size() const { return offsets_.size(); }
  const Rational& offset(std::size_t j) const { return offsets_[j]; }
  double magnitude(std::size_t j) const { return magnitudes_[j]; }
  std::span<const double> phases(std::size_t j) const {
    return {phases_.data() + j * static_cast<std::size_t>(depth_), static_cast<std::size_t>(depth_)};
  }

  // prod_{k=1..depth} cos(2 pi (lambda^k t + phase_k(j))), overlaid with an exact
  // zero when `exact` is given and t + offset_j lies in the zero set.
  double term(std::size_t j, double t, const Rational* exact = nullptr) const;
  double term_bound(std::size_t j, double t) const;

 private:
  BernoulliParam lam_;
  int depth_;
  std::vector<Rational> offsets_;
  std::vector<double> magnitudes_;
  std::vector<double> phases_;
  std::vector<double> powers_;  // lambda^k, k = 1..depth
};

namespace kernels {

// out[p * prefixes.size() + s] = sum_{j < prefixes[s]} |term(j, t_p)|^2 with the
// matching truncation error. Each point's sum runs over j in ascending order, so
// prefix values are nondecreasing. Parallel over points.
void spectral_sums(const TermTable& table, std::span<const SpectralPoint> points,
                   std::span<const std::size_t> prefixes, std::span<PartialSpectral> out);

void spectral_sums_serial(const TermTable& table, std::span<const SpectralPoint> points,
                          std::span<const std::size_t> prefixes, std::span<PartialSpectral> out);

// Row-major |F| x |F| matrix of muhat(f_i - f_j), the phases of the differences
// taken from the table of the frequencies themselves. Parallel over rows.
void gram_matrix(const TermTable& frequencies, std::span<double> out);
void gram_matrix_serial(const TermTable& frequencies, std::span<double> out);

}  // namespace kernels

}  // namespace bconv
