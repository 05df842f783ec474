#include "bconv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bconv/errors.hpp"

namespace bconv {

Grid Grid::make(const Rational& lo, const Rational& hi, long count) {
  if (count < 1) throw ContractViolation("grid needs at least one point");
  if (hi < lo) throw ContractViolation("grid upper end is below its lower end");
  return Grid{lo, hi, count};
}

Grid Grid::parse(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) throw ContractViolation("grid must look like lo:hi:count");
  const Rational lo = parse_rational(text.substr(0, first));
  const Rational hi = parse_rational(text.substr(first + 1, second - first - 1));
  const Rational count = parse_rational(text.substr(second + 1));
  if (!is_integer(count) || !count.get_num().fits_slong_p()) throw ContractViolation("grid count must be an integer");
  return make(lo, hi, count.get_num().get_si());
}

std::vector<Rational> Grid::exact_points() const {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  const Rational step = (hi - lo) / (count - 1);
  for (long i = 0; i < count; ++i) {
    Rational v = lo + step * i;
    v.canonicalize();
    out.push_back(v);
  }
  return out;
}

std::vector<SpectralPoint> Grid::points() const {
  std::vector<SpectralPoint> out;
  for (const auto& q : exact_points()) out.push_back(SpectralPoint::from(q));
  return out;
}

std::vector<double> Grid::values() const {
  std::vector<double> out;
  for (const auto& q : exact_points()) out.push_back(q.get_d());
  return out;
}

namespace {

std::string truncation_note(const SpectrumSpec& spec, int product_depth) {
  return "partial sum over 2^" + std::to_string(spec.depth) + " lattice terms; no tail bound over the lattice; " +
         "transform products truncated at depth " + std::to_string(product_depth);
}

}  // namespace

PartialSpectral partial_spectral(const BernoulliParam& lam, const SpectrumSpec& spec,
                                 const SpectralPoint& t, int product_depth) {
  const GammaLattice lattice(spec);
  const TermTable table(lam, lattice.values(), product_depth);
  const std::size_t prefix = table.size();
  PartialSpectral out;
  kernels::spectral_sums_serial(table, std::span(&t, 1), std::span(&prefix, 1), std::span(&out, 1));
  return out;
}

std::vector<SpectralScan> scan_history(const BernoulliParam& lam, long n, long p,
                                       std::span<const int> depths,
                                       std::span<const SpectralPoint> grid, int product_depth) {
  if (grid.empty()) throw ContractViolation("scan grid is empty");
  if (depths.empty()) throw ContractViolation("no digit depths requested");
  if (!std::is_sorted(depths.begin(), depths.end())) throw ContractViolation("digit depths must be ascending");

  const GammaLattice lattice(SpectrumSpec::make(n, p, depths.back()));
  const TermTable table(lam, lattice.values(), product_depth);
  std::vector<std::size_t> prefixes;
  for (const int k : depths) {
    if (k < 0) throw ContractViolation("digit depth must be nonnegative");
    prefixes.push_back(std::size_t{1} << k);
  }
  std::vector<PartialSpectral> sums(grid.size() * prefixes.size());
  kernels::spectral_sums(table, grid, prefixes, sums);

  std::vector<SpectralScan> out;
  for (std::size_t s = 0; s < depths.size(); ++s) {
    SpectralScan sc;
    sc.lam = lam;
    sc.spec = SpectrumSpec::make(n, p, depths[s]);
    sc.digit_depth = depths[s];
    sc.product_depth = product_depth;
    sc.term_truncation_note = truncation_note(sc.spec, product_depth);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      sc.grid.push_back(grid[i].t);
      sc.values.push_back(sums[i * prefixes.size() + s].value);
      sc.error_bounds.push_back(sums[i * prefixes.size() + s].per_term_error);
    }
    out.push_back(std::move(sc));
  }
  return out;
}

SpectralScan scan(const BernoulliParam& lam, const SpectrumSpec& spec,
                  std::span<const SpectralPoint> grid, int product_depth) {
  const int depth = spec.depth;
  return std::move(scan_history(lam, spec.n, spec.p, std::span(&depth, 1), grid, product_depth).front());
}

std::string_view to_string(Diagnosis d) {
  switch (d) {
    case Diagnosis::consistent_with_onb: return "consistent-with-ONB";
    case Diagnosis::deficiency_evidence: return "deficiency-evidence";
    case Diagnosis::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Diagnosis classify_scan(std::span<const SpectralScan> history, const ClassifyThresholds& thresholds) {
  if (history.size() < 2) throw ContractViolation("classification needs scans at two or more digit depths");
  const SpectralScan& last = history.back();
  const SpectralScan& prev = history[history.size() - 2];
  for (const auto& s : history) {
    if (s.values.size() != last.values.size()) throw ContractViolation("scans must share one grid");
  }
  if (std::all_of(last.values.begin(), last.values.end(),
                  [&](double v) { return v > 1.0 - thresholds.plateau; })) {
    return Diagnosis::consistent_with_onb;
  }
  for (std::size_t i = 0; i < last.values.size(); ++i) {
    const double rise = last.values[i] - prev.values[i];
    if (rise < thresholds.increment && last.values[i] < 1.0 - thresholds.gap) {
      return Diagnosis::deficiency_evidence;
    }
  }
  return Diagnosis::inconclusive;
}

GramSection gram_section(const BernoulliParam& lam, std::span<const Rational> frequencies,
                         int product_depth, std::size_t cap) {
  if (frequencies.empty()) throw ContractViolation("Gram section needs at least one frequency");
  if (frequencies.size() > cap) {
    throw ResourceLimit("Gram section of " + std::to_string(frequencies.size()) + " frequencies exceeds cap " +
                        std::to_string(cap));
  }
  GramSection g;
  g.frequencies.assign(frequencies.begin(), frequencies.end());
  g.product_depth = product_depth;
  const TermTable table(lam, g.frequencies, product_depth);
  g.entries.resize(g.size() * g.size());
  kernels::gram_matrix(table, g.entries);
  return g;
}

namespace {

struct PowerResult {
  double value = 0.0;
  double residual = 0.0;
};

// Power iteration for the dominant eigenvalue of shift*I + sign*G.
PowerResult power_iteration(const GramSection& g, double shift, double sign, int iterations) {
  const std::size_t size = g.size();
  std::vector<double> v(size), w(size);
  for (std::size_t i = 0; i < size; ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + static_cast<double>(i));
  auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
    for (std::size_t i = 0; i < size; ++i) {
      double acc = shift * in[i];
      for (std::size_t j = 0; j < size; ++j) acc += sign * g(i, j) * in[j];
      out[i] = acc;
    }
  };
  auto normalize = [](std::vector<double>& x) {
    const double nrm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    if (nrm == 0.0) return false;
    for (auto& e : x) e /= nrm;
    return true;
  };
  normalize(v);
  for (int it = 0; it < iterations; ++it) {
    apply(v, w);
    if (!normalize(w)) return {0.0, 0.0};
    v.swap(w);
  }
  apply(v, w);
  const double theta = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);
  double res = 0.0;
  for (std::size_t i = 0; i < size; ++i) res += (w[i] - theta * v[i]) * (w[i] - theta * v[i]);
  return {theta, std::sqrt(res)};
}

}  // namespace

FrameBounds frame_bound_estimates(const GramSection& gram, int iterations) {
  if (iterations < 1) throw ContractViolation("power iteration needs at least one step");
  FrameBounds out;
  const PowerResult top = power_iteration(gram, 0.0, 1.0, iterations);
  out.upper = top.value;
  out.upper_error = top.residual;
  const double shift = out.upper + out.upper_error;
  const PowerResult bottom = power_iteration(gram, shift, -1.0, iterations);
  out.lower = shift - bottom.value;
  out.lower_error = bottom.residual;
  return out;
}

double derivative_scan(const SpectralScan& s) {
  const std::size_t size = s.grid.size();
  if (size < 3) throw ContractViolation("derivative scan needs at least three grid points");
  const double h = (s.grid.back() - s.grid.front()) / static_cast<double>(size - 1);
  if (!(h > 0.0)) throw ContractViolation("grid must be increasing");
  for (std::size_t i = 1; i < size; ++i) {
    if (std::abs((s.grid[i] - s.grid[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw ContractViolation("derivative scan needs a uniform grid");
    }
  }
  double slope = 0.0;
  for (std::size_t i = 1; i + 1 < size; ++i) {
    slope = std::max(slope, std::abs(s.values[i + 1] - s.values[i - 1]) / (2.0 * h));
  }
  return slope;
}

double derivative_bound(const BernoulliParam& lam) { return 2.0 * lam.value() / (1.0 - lam.value()); }

}  // namespace bconv
