#include "bconv/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bconv/errors.hpp"
#include "bconv/gamma_lattice.hpp"

namespace bconv {

GridFunction::GridFunction(double lo, double hi, std::vector<double> samples)
    : lo_(lo), hi_(hi), step_(0.0), samples_(std::move(samples)) {
  if (samples_.size() < 2) throw ContractViolation("grid function needs at least two nodes");
  if (!(hi_ > lo_)) throw ContractViolation("grid function interval is empty");
  step_ = (hi_ - lo_) / static_cast<double>(samples_.size() - 1);
}

GridFunction GridFunction::sample(double lo, double hi, std::size_t nodes, const std::function<double(double)>& f) {
  if (nodes < 2) throw ContractViolation("grid function needs at least two nodes");
  std::vector<double> s(nodes);
  const double h = (hi - lo) / static_cast<double>(nodes - 1);
  for (std::size_t i = 0; i < nodes; ++i) s[i] = f(i + 1 == nodes ? hi : lo + h * static_cast<double>(i));
  return GridFunction(lo, hi, std::move(s));
}

GridFunction GridFunction::constant(double lo, double hi, std::size_t nodes, double value) {
  return GridFunction(lo, hi, std::vector<double>(nodes, value));
}

double GridFunction::node(std::size_t i) const {
  return i + 1 == samples_.size() ? hi_ : lo_ + step_ * static_cast<double>(i);
}

double GridFunction::operator()(double t) const {
  const double slack = 1e-12 * std::max({1.0, std::abs(lo_), std::abs(hi_)});
  if (t < lo_ - slack || t > hi_ + slack) {
    throw ContractViolation("grid function evaluated at " + std::to_string(t) + " outside [" + std::to_string(lo_) +
                            ", " + std::to_string(hi_) + "]");
  }
  const double x = std::clamp((t - lo_) / step_, 0.0, static_cast<double>(samples_.size() - 1));
  const auto i = std::min(static_cast<std::size_t>(x), samples_.size() - 2);
  const double frac = x - static_cast<double>(i);
  return samples_[i] + frac * (samples_[i + 1] - samples_[i]);
}

double GridFunction::seminorm() const {
  double out = 0.0;
  for (std::size_t i = 1; i < samples_.size(); ++i) out = std::max(out, std::abs(samples_[i] - samples_[i - 1]));
  return out / step_;
}

double GridFunction::sup_distance(const GridFunction& other) const {
  if (other.size() != size()) throw ContractViolation("grid functions live on different grids");
  double out = 0.0;
  for (std::size_t i = 0; i < size(); ++i) out = std::max(out, std::abs(samples_[i] - other.samples_[i]));
  return out;
}

double GridFunction::sup_distance_from(double value) const {
  double out = 0.0;
  for (const double v : samples_) out = std::max(out, std::abs(v - value));
  return out;
}

TwoBranchTransfer::TwoBranchTransfer(const Rational& contraction, const Rational& shift)
    : contraction_(contraction), shift_(shift), c_(contraction.get_d()), s_(shift.get_d()) {
  if (contraction_ <= 0 || contraction_ >= 1) throw ContractViolation("branch contraction must lie in (0, 1)");
}

double TwoBranchTransfer::weight(double t) const {
  const double c = cos_2pi(c_ * t);
  return c * c;
}

SpectralPoint TwoBranchTransfer::branch0(const SpectralPoint& t) const {
  SpectralPoint out{c_ * t.t, std::nullopt};
  if (t.exact) out.exact = contraction_ * *t.exact;
  return out;
}

SpectralPoint TwoBranchTransfer::branch1(const SpectralPoint& t) const {
  SpectralPoint out{c_ * t.t + s_, std::nullopt};
  if (t.exact) out.exact = contraction_ * *t.exact + shift_;
  return out;
}

double TwoBranchTransfer::combine(double t, double f_branch0, double f_branch1) const {
  const double w = weight(t);
  return w * f_branch0 + (1.0 - w) * f_branch1;
}

void TwoBranchTransfer::check_domain(const GridFunction& f) const {
  // branch images of the endpoints bound the images of the whole interval
  const double slack = 1e-12 * std::max({1.0, std::abs(f.lo()), std::abs(f.hi())});
  for (const double t : {f.lo(), f.hi()}) {
    for (const double x : {c_ * t, c_ * t + s_}) {
      if (x < f.lo() - slack || x > f.hi() + slack) {
        throw ContractViolation("transfer maps [" + std::to_string(f.lo()) + ", " + std::to_string(f.hi()) +
                                "] outside itself; widen the domain");
      }
    }
  }
}

GridFunction TwoBranchTransfer::apply(const GridFunction& f) const {
  check_domain(f);
  std::vector<double> out(f.size());
#pragma omp parallel for schedule(static)
  for (long si = 0; si < static_cast<long>(f.size()); ++si) {
    const auto i = static_cast<std::size_t>(si);
    out[i] = apply_at(f, f.node(i));
  }
  return GridFunction(f.lo(), f.hi(), std::move(out));
}

GridFunction TwoBranchTransfer::apply_serial(const GridFunction& f) const {
  check_domain(f);
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = apply_at(f, f.node(i));
  return GridFunction(f.lo(), f.hi(), std::move(out));
}

TransferSpec TransferSpec::make(long n, long p) {
  if (n < 2) throw ContractViolation("transfer operator requires n >= 2");
  if (p < 1 || p % 2 == 0) throw ContractViolation("dilation p must be a positive odd integer");
  return TransferSpec{n, p};
}

TwoBranchTransfer TransferSpec::op() const { return TwoBranchTransfer(make_rational(1, 2 * n), make_rational(p, 4)); }

Interval invariant_interval(long n, long p) {
  const TransferSpec spec = TransferSpec::make(n, p);
  return {Rational(0), make_rational(spec.p * spec.n, 2 * (2 * spec.n - 1))};
}

GridFunction apply_transfer(const TransferSpec& spec, const GridFunction& f) { return spec.op().apply(f); }

Contractivity contractivity_constant(long n, long p) {
  const TransferSpec spec = TransferSpec::make(n, p);
  const long double pi = std::numbers::pi_v<long double>;
  Contractivity out;
  out.constant = static_cast<double>(pi * spec.p / (4.0L * spec.n) + 1.0L / (2.0L * spec.n));
  out.contractive = static_cast<long double>(spec.p) * pi < 2.0L * (2.0L * spec.n - 1.0L);
  return out;
}

FixedPointRun iterate_to_fixed_point(const TransferSpec& spec, const GridFunction& f0, int max_iters, double tol) {
  if (max_iters < 0) throw ContractViolation("iteration count must be nonnegative");
  if (f0.lo() > 0.0 || f0.hi() < 0.0) throw ContractViolation("start function must be defined at 0");
  if (std::abs(f0(0.0) - 1.0) > 1e-12) throw ContractViolation("start function must satisfy f(0) = 1");
  if (std::any_of(f0.samples().begin(), f0.samples().end(), [](double v) { return v < 0.0; })) {
    throw ContractViolation("start function must be nonnegative");
  }
  const TwoBranchTransfer op = spec.op();
  FixedPointRun run{f0, {f0.sup_distance_from(1.0)}, {f0.seminorm()}, {0.0}, 0, false};
  for (int it = 1; it <= max_iters; ++it) {
    GridFunction next = op.apply(run.f);
    const double step = next.sup_distance(run.f);
    run.f = std::move(next);
    run.sup_deviation.push_back(run.f.sup_distance_from(1.0));
    run.seminorm.push_back(run.f.seminorm());
    run.step.push_back(step);
    run.iterations = it;
    if (step < tol) {
      run.converged = true;
      break;
    }
  }
  if (run.sup_deviation.back() == 0.0) run.converged = true;
  return run;
}

double asymptotic_ratio(std::span<const double> history, double floor, std::size_t window) {
  std::size_t end = history.size();
  while (end > 0 && !(history[end - 1] > floor)) --end;
  if (end < 2) return 0.0;
  const std::size_t begin = end > window + 1 ? end - window - 1 : 0;
  const std::size_t ratios = end - 1 - begin;
  if (ratios == 0) return 0.0;
  return std::pow(history[end - 1] / history[begin], 1.0 / static_cast<double>(ratios));
}

namespace {

std::vector<Rational> shifted(std::vector<Rational> values, const Rational& by) {
  for (auto& v : values) v += by;
  return values;
}

// Residual of c_lhs(t) = T c_rhs(t), with c_rhs summed over `rhs_lattice` at depth D-1.
ResidualReport two_branch_residual(const BernoulliParam& lam, const TwoBranchTransfer& op,
                                   const SpectrumSpec& lhs_spec, const SpectrumSpec& rhs_spec,
                                   std::span<const SpectralPoint> grid, int product_depth) {
  if (grid.empty()) throw ContractViolation("residual grid is empty");
  if (product_depth < 2) throw ContractViolation("residual check needs product depth >= 2");

  const TermTable lhs(lam, GammaLattice(lhs_spec).values(), product_depth);
  const std::vector<Rational> rhs_values = GammaLattice(rhs_spec).values();
  const TermTable rhs0(lam, rhs_values, product_depth - 1);
  const TermTable rhs1(lam, shifted(rhs_values, op.shift()), product_depth - 1);

  std::vector<SpectralPoint> mapped;
  mapped.reserve(grid.size());
  for (const auto& pt : grid) mapped.push_back(op.branch0(pt));

  const std::size_t lhs_all = lhs.size();
  const std::size_t rhs_all = rhs0.size();
  std::vector<PartialSpectral> left(grid.size()), right0(grid.size()), right1(grid.size());
  kernels::spectral_sums(lhs, grid, std::span(&lhs_all, 1), left);
  kernels::spectral_sums(rhs0, mapped, std::span(&rhs_all, 1), right0);
  // rhs1 carries the shift in its offsets, so it is evaluated at the same base points
  kernels::spectral_sums(rhs1, mapped, std::span(&rhs_all, 1), right1);

  ResidualReport out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i].t;
    const double transferred = op.combine(t, right0[i].value, right1[i].value);
    out.max_residual = std::max(out.max_residual, std::abs(left[i].value - transferred));
    const double w = op.weight(t);
    out.max_truncation_bound =
        std::max(out.max_truncation_bound,
                 left[i].per_term_error + w * right0[i].per_term_error + (1.0 - w) * right1[i].per_term_error);
  }
  return out;
}

long pow3(int k) {
  long v = 1;
  for (int i = 0; i < k; ++i) v *= 3;
  return v;
}

}  // namespace

ResidualReport functional_equation_residual(const BernoulliParam& lam, long n, long p, int digit_depth,
                                            std::span<const SpectralPoint> grid, int product_depth) {
  if (digit_depth < 1) throw ContractViolation("functional equation needs digit depth >= 1");
  if (lam.denominator() != 2 * n) {
    throw ContractViolation("lambda = " + lam.to_string() + " does not have denominator 2n = " + std::to_string(2 * n));
  }
  const SpectrumSpec lhs = SpectrumSpec::make(n, p, digit_depth);
  const SpectrumSpec rhs = SpectrumSpec::make(n, lam.q() * p, digit_depth - 1);
  const TwoBranchTransfer op(lam.lambda(), make_rational(lam.q() * p, 4));
  return two_branch_residual(lam, op, lhs, rhs, grid, product_depth);
}

TwoBranchTransfer chain_operator_38(int k) {
  if (k < 0) throw ContractViolation("chain index must be nonnegative");
  return TwoBranchTransfer(make_rational(3, 8), make_rational(pow3(k + 1), 4));
}

GridFunction chain_transfer_38(int k, const GridFunction& f) { return chain_operator_38(k).apply(f); }

double chain_domain_38(int k) { return std::max(3.0, 2.0 * static_cast<double>(pow3(k + 1)) / 5.0); }

std::vector<PartialSpectral> chain_function_38(int k, int digit_depth, std::span<const SpectralPoint> points,
                                               int product_depth) {
  if (k < 0) throw ContractViolation("chain index must be nonnegative");
  const BernoulliParam lam = BernoulliParam::make(3, 8);
  const TermTable table(lam, GammaLattice(SpectrumSpec::make(4, pow3(k), digit_depth)).values(), product_depth);
  const std::size_t all = table.size();
  std::vector<PartialSpectral> out(points.size());
  kernels::spectral_sums(table, points, std::span(&all, 1), out);
  return out;
}

ResidualReport chain_residual_38(int k, int digit_depth, std::span<const SpectralPoint> grid, int product_depth,
                                 int cap) {
  if (k < 0 || k > cap) throw ResourceLimit("chain index " + std::to_string(k) + " outside [0, " + std::to_string(cap) + "]");
  if (digit_depth < 1) throw ContractViolation("chain residual needs digit depth >= 1");
  const BernoulliParam lam = BernoulliParam::make(3, 8);
  return two_branch_residual(lam, chain_operator_38(k), SpectrumSpec::make(4, pow3(k), digit_depth),
                             SpectrumSpec::make(4, pow3(k + 1), digit_depth - 1), grid, product_depth);
}

}  // namespace bconv
