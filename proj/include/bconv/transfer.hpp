#pragma once

// Transfer operators of the form
//   (T f)(t) = cos^2(2 pi c t) f(c t) + sin^2(2 pi c t) f(c t + s)
// with contraction c and shift s. T_pL for mu_{1/2n} has c = 1/(2n), s = p/4;
// the chain operators T_k for mu_{3/8} have c = 3/8, s = 3^{k+1}/4.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bconv/kernels.hpp"
#include "bconv/measure.hpp"
#include "bconv/rational.hpp"

namespace bconv {

inline constexpr std::size_t kDefaultNodeCount = 4097;

// Uniform samples on [lo, hi] with linear interpolation between nodes.
class GridFunction {
 public:
  GridFunction(double lo, double hi, std::vector<double> samples);
  static GridFunction sample(double lo, double hi, std::size_t nodes, const std::function<double(double)>& f);
  static GridFunction constant(double lo, double hi, std::size_t nodes, double value);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t size() const { return samples_.size(); }
  double step() const { return step_; }
  double node(std::size_t i) const;
  std::span<const double> samples() const { return samples_; }
  std::vector<double>& mutable_samples() { return samples_; }

  // Throws ContractViolation outside [lo, hi] (a relative slack of 1e-12 is clamped).
  double operator()(double t) const;

  // max |f(node_{i+1}) - f(node_i)| / step
  double seminorm() const;
  double sup_distance(const GridFunction& other) const;
  double sup_distance_from(double value) const;

 private:
  double lo_;
  double hi_;
  double step_;
  std::vector<double> samples_;
};

class TwoBranchTransfer {
 public:
  TwoBranchTransfer(const Rational& contraction, const Rational& shift);

  const Rational& contraction() const { return contraction_; }
  const Rational& shift() const { return shift_; }

  double weight(double t) const;  // cos^2(2 pi c t)
  SpectralPoint branch0(const SpectralPoint& t) const;
  SpectralPoint branch1(const SpectralPoint& t) const;
  double combine(double t, double f_branch0, double f_branch1) const;

  template <class F>
  double apply_at(const F& f, double t) const {
    const double w = weight(t);
    return w * f(c_ * t) + (1.0 - w) * f(c_ * t + s_);
  }

  // Requires both branch images of [f.lo(), f.hi()] to stay inside it.
  GridFunction apply(const GridFunction& f) const;
  GridFunction apply_serial(const GridFunction& f) const;

 private:
  void check_domain(const GridFunction& f) const;

  Rational contraction_;
  Rational shift_;
  double c_;
  double s_;
};

struct TransferSpec {
  long n = 4;
  long p = 3;

  static TransferSpec make(long n, long p);
  TwoBranchTransfer op() const;
};

// [0, p n / (2 (2n - 1))]: the smallest [0, R] mapped into itself by both branches.
Interval invariant_interval(long n, long p);

GridFunction apply_transfer(const TransferSpec& spec, const GridFunction& f);

struct Contractivity {
  double constant = 0.0;  // pi p / (4n) + 1 / (2n)
  bool contractive = false;
};

// contractive iff p < 2(2n - 1) / pi
Contractivity contractivity_constant(long n, long p);

struct FixedPointRun {
  GridFunction f;
  std::vector<double> sup_deviation;  // sup |f_i - 1|, entry 0 is the start
  std::vector<double> seminorm;       // finite-difference seminorm of f_i
  std::vector<double> step;           // sup |f_i - f_{i-1}|, entry 0 is 0
  int iterations = 0;
  bool converged = false;
};

// f0 must satisfy f0 >= 0 at every node and f0(0) = 1 (within 1e-12).
FixedPointRun iterate_to_fixed_point(const TransferSpec& spec, const GridFunction& f0, int max_iters,
                                     double tol = 1e-10);

// Geometric mean of successive ratios over the last `window` entries above `floor`.
double asymptotic_ratio(std::span<const double> history, double floor, std::size_t window = 10);

struct ResidualReport {
  double max_residual = 0.0;
  double max_truncation_bound = 0.0;
};

// For lambda = q/(2n) and the lattice p*Gamma(1/2n) at digit depth K >= 1:
//   c_K(t) = cos^2(2 pi lambda t) c'_{K-1}(lambda t) + sin^2(2 pi lambda t) c'_{K-1}(lambda t + q p / 4)
// where c' sums over q p Gamma(1/2n). The right side uses product depth D-1, for
// which the identity is exact apart from rounding.
ResidualReport functional_equation_residual(const BernoulliParam& lam, long n, long p, int digit_depth,
                                            std::span<const SpectralPoint> grid, int product_depth);

// T_k: c = 3/8, s = 3^{k+1}/4.
TwoBranchTransfer chain_operator_38(int k);
GridFunction chain_transfer_38(int k, const GridFunction& f);

inline constexpr int kDefaultChainCap = 3;

// Working interval [0, R] for chain functions at level k: R = max(3, 2 * 3^{k+1} / 5),
// which T_k maps into itself.
double chain_domain_38(int k);

// f_k(t) = sum over 3^k Gamma(1/8) at depth K of |muhat_{3/8}(t + g)|^2.
std::vector<PartialSpectral> chain_function_38(int k, int digit_depth, std::span<const SpectralPoint> points,
                                               int product_depth);

// max |T_k f_{k+1} - f_k| over the grid, f_{k+1} taken at depth K - 1.
ResidualReport chain_residual_38(int k, int digit_depth, std::span<const SpectralPoint> grid, int product_depth,
                                 int cap = kDefaultChainCap);

}  // namespace bconv
