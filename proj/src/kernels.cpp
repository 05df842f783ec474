#include "bconv/kernels.hpp"

#include <cmath>
#include <string>

#include "bconv/errors.hpp"
#include "bconv/zero_set.hpp"

namespace bconv {

TermTable::TermTable(const BernoulliParam& lam, std::vector<Rational> offsets, int depth)
    : lam_(lam), depth_(depth), offsets_(std::move(offsets)) {
  if (depth_ < 1) throw ContractViolation("product depth must be >= 1");
  const std::size_t entries = offsets_.size() * static_cast<std::size_t>(depth_);
  if (entries > kMaxEntries) {
    throw ResourceLimit("phase table of " + std::to_string(entries) + " entries exceeds cap");
  }
  powers_.resize(static_cast<std::size_t>(depth_));
  double p = lam_.value();
  for (auto& v : powers_) {
    v = p;
    p *= lam_.value();
  }

  magnitudes_.resize(offsets_.size());
  phases_.resize(entries);
  const Integer a = lam_.q();
  const Integer b = lam_.denominator();
#pragma omp parallel for schedule(dynamic, 64)
  for (long sj = 0; sj < static_cast<long>(offsets_.size()); ++sj) {
    const auto j = static_cast<std::size_t>(sj);
    const Rational& x = offsets_[j];
    magnitudes_[j] = std::abs(x.get_d());
    Integer num = x.get_num();
    Integer den = x.get_den();
    Integer rem;
    mpq_class frac;
    for (int k = 0; k < depth_; ++k) {
      num *= a;
      den *= b;
      mpz_fdiv_r(rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      mpq_set_num(frac.get_mpq_t(), rem.get_mpz_t());
      mpq_set_den(frac.get_mpq_t(), den.get_mpz_t());
      phases_[j * static_cast<std::size_t>(depth_) + static_cast<std::size_t>(k)] = mpq_get_d(frac.get_mpq_t());
    }
  }
}

double TermTable::term(std::size_t j, double t, const Rational* exact) const {
  const double* phase = phases_.data() + j * static_cast<std::size_t>(depth_);
  double product = 1.0;
  for (int k = 0; k < depth_; ++k) {
    product *= cos_2pi(powers_[static_cast<std::size_t>(k)] * t + phase[k]);
  }
  if (exact != nullptr && std::abs(product) < kExactCheckThreshold && product != 0.0) {
    if (in_zero_set(lam_, *exact + offsets_[j]).member) product = 0.0;
  }
  return product;
}

double TermTable::term_bound(std::size_t j, double t) const {
  return truncation_bound(lam_, std::abs(t) + magnitudes_[j], depth_);
}

namespace kernels {

namespace {

void check_shapes(const TermTable& table, std::span<const SpectralPoint> points,
                  std::span<const std::size_t> prefixes, std::span<PartialSpectral> out) {
  if (out.size() != points.size() * prefixes.size()) throw ContractViolation("output span has the wrong size");
  std::size_t last = 0;
  for (const auto p : prefixes) {
    if (p < last || p > table.size()) throw ContractViolation("prefix sizes must be ascending and within the table");
    last = p;
  }
}

// |muhat|^2 error from a transform error e: |a^2 - b^2| <= e (2 + e), capped at 1.
double squared_error(double e) { return std::min(1.0, e * (2.0 + e)); }

}  // namespace

void spectral_sums(const TermTable& table, std::span<const SpectralPoint> points,
                   std::span<const std::size_t> prefixes, std::span<PartialSpectral> out) {
  check_shapes(table, points, prefixes, out);
  const std::size_t stride = prefixes.size();
#pragma omp parallel for schedule(dynamic, 1)
  for (long sp = 0; sp < static_cast<long>(points.size()); ++sp) {
    const auto p = static_cast<std::size_t>(sp);
    const SpectralPoint& pt = points[p];
    const Rational* exact = pt.exact ? &*pt.exact : nullptr;
    double value = 0.0;
    double error = 0.0;
    std::size_t j = 0;
    for (std::size_t s = 0; s < stride; ++s) {
      for (; j < prefixes[s]; ++j) {
        const double v = table.term(j, pt.t, exact);
        value += v * v;
        if (v != 0.0) error += squared_error(table.term_bound(j, pt.t));
      }
      out[p * stride + s] = {value, error};
    }
  }
}

void spectral_sums_serial(const TermTable& table, std::span<const SpectralPoint> points,
                          std::span<const std::size_t> prefixes, std::span<PartialSpectral> out) {
  check_shapes(table, points, prefixes, out);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const Rational* exact = points[p].exact ? &*points[p].exact : nullptr;
    for (std::size_t s = 0; s < prefixes.size(); ++s) {
      double value = 0.0;
      double error = 0.0;
      for (std::size_t j = 0; j < prefixes[s]; ++j) {
        const double v = table.term(j, points[p].t, exact);
        value += v * v;
        if (v != 0.0) error += squared_error(table.term_bound(j, points[p].t));
      }
      out[p * prefixes.size() + s] = {value, error};
    }
  }
}

namespace {

double gram_entry(const TermTable& f, std::size_t i, std::size_t j) {
  if (i == j) return 1.0;
  const auto pi = f.phases(i);
  const auto pj = f.phases(j);
  double product = 1.0;
  for (std::size_t k = 0; k < pi.size(); ++k) product *= cos_2pi(pi[k] - pj[k]);
  if (std::abs(product) < kExactCheckThreshold && product != 0.0 &&
      in_zero_set(f.lambda(), f.offset(i) - f.offset(j)).member) {
    product = 0.0;
  }
  return product;
}

}  // namespace

void gram_matrix(const TermTable& frequencies, std::span<double> out) {
  const std::size_t size = frequencies.size();
  if (out.size() != size * size) throw ContractViolation("Gram output has the wrong size");
#pragma omp parallel for schedule(dynamic, 4)
  for (long si = 0; si < static_cast<long>(size); ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (std::size_t j = i; j < size; ++j) out[i * size + j] = gram_entry(frequencies, i, j);
  }
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < i; ++j) out[i * size + j] = out[j * size + i];
  }
}

void gram_matrix_serial(const TermTable& frequencies, std::span<double> out) {
  const std::size_t size = frequencies.size();
  if (out.size() != size * size) throw ContractViolation("Gram output has the wrong size");
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      out[i * size + j] = j >= i ? gram_entry(frequencies, i, j) : out[j * size + i];
    }
  }
}

}  // namespace kernels

}  // namespace bconv
