// Serial reference vs OpenMP kernels on the workloads the acceptance suite runs.
//
//   bench_kernels [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "bconv/gamma_lattice.hpp"
#include "bconv/kernels.hpp"
#include "bconv/spectral.hpp"
#include "bconv/transfer.hpp"

using namespace bconv;

namespace {

double time_ms(const std::function<void()>& fn, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto begin = std::chrono::steady_clock::now();
    fn();
    const auto end = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(end - begin).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-34s serial %10.2f ms   omp %10.2f ms   speedup %5.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d\n", omp_get_max_threads());

  {
    const auto lam = BernoulliParam::make(1, 8);
    const GammaLattice lattice(SpectrumSpec::make(4, 3, 14));
    const TermTable table(lam, lattice.values(), 30);
    const auto grid = Grid::make(0, Rational(6, 7), 64).points();
    const std::size_t prefix = table.size();
    std::vector<PartialSpectral> out(grid.size());
    const double s = time_ms([&] { kernels::spectral_sums_serial(table, grid, std::span(&prefix, 1), out); }, repeats);
    const double p = time_ms([&] { kernels::spectral_sums(table, grid, std::span(&prefix, 1), out); }, repeats);
    report("spectral sums (3Gamma(1/8), K=14)", s, p);
  }
  {
    const auto lam = BernoulliParam::make(3, 8);
    const GammaLattice lattice(SpectrumSpec::make(4, 1, 9));
    const TermTable table(lam, lattice.values(), 30);
    std::vector<double> out(table.size() * table.size());
    const double s = time_ms([&] { kernels::gram_matrix_serial(table, out); }, repeats);
    const double p = time_ms([&] { kernels::gram_matrix(table, out); }, repeats);
    report("Gram matrix (Gamma(1/8), 512)", s, p);
  }
  {
    const auto op = TransferSpec::make(4, 3).op();
    auto f = GridFunction::sample(0.0, 6.0 / 7.0, 1 << 18, [](double t) { return 1.0 + t * t; });
    const double s = time_ms([&] { f = op.apply_serial(f); }, repeats);
    const double p = time_ms([&] { f = op.apply(f); }, repeats);
    report("transfer apply (2^18 nodes)", s, p);
  }
  return 0;
}
