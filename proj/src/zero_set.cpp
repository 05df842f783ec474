#include "bconv/zero_set.hpp"

#include <atomic>
#include <limits>
#include <string>

#include "bconv/errors.hpp"

namespace bconv {

namespace {

// Every prime factor of den divides 2 * lambda's numerator.
bool denominator_clears(const Integer& den, long lambda_num) {
  Integer rest = den;
  const Integer allowed = Integer(2) * lambda_num;
  Integer g;
  for (;;) {
    mpz_gcd(g.get_mpz_t(), rest.get_mpz_t(), allowed.get_mpz_t());
    if (g == 1) break;
    rest /= g;
  }
  return rest == 1;
}

bool is_odd(const Integer& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

ZeroWitness fast_path_38(const Rational& t, long search_bound) {
  ZeroWitness w;
  w.search_bound = search_bound;
  const auto form = reduced_form_38(t);
  if (!form) return w;
  const long d = form->d;
  if (d < 1 || d % 3 != 1) return w;
  const long k = (d + 2) / 3;
  if (form->p > k) return w;
  // t = (2m+1) 8^k / (4 * 3^k) with 2m+1 = u * 3^(k-p)
  const Integer odd = form->u * pow_integer(3, static_cast<unsigned long>(k - form->p));
  w.member = true;
  w.k = k;
  w.m = (odd - 1) / 2;
  w.search_bound = std::max(search_bound, k);
  return w;
}

}  // namespace

long zero_search_bound(const BernoulliParam& lam, const Rational& t) {
  if (t == 0) return 1;
  const Integer height = 4 * abs(t.get_num()) * t.get_den();
  const Integer base = lam.denominator();
  Integer power = base;
  long k = 1;
  while (power <= height) {
    power *= base;
    ++k;
  }
  return k;
}

ZeroWitness in_zero_set_search(const BernoulliParam& lam, const Rational& t) {
  ZeroWitness w;
  w.search_bound = zero_search_bound(lam, t);
  if (t == 0) return w;
  if (!denominator_clears(t.get_den(), lam.q())) return w;

  Rational x = 4 * t;
  for (long k = 1; k <= w.search_bound; ++k) {
    x *= lam.lambda();
    x.canonicalize();
    if (x.get_den() == 1 && is_odd(x.get_num())) {
      w.member = true;
      w.k = k;
      w.m = (x.get_num() - 1) / 2;
      return w;
    }
  }
  return w;
}

ZeroWitness in_zero_set(const BernoulliParam& lam, const Rational& t) {
  if (lam.q() == 3 && lam.denominator() == 8) {
    if (t == 0) return ZeroWitness{};
    return fast_path_38(t, zero_search_bound(lam, t));
  }
  return in_zero_set_search(lam, t);
}

std::optional<ReducedForm38> reduced_form_38(const Rational& t) {
  if (t == 0) throw ContractViolation("0 has no reduced form (it is not in the zero set)");
  Integer num = t.get_num();
  Integer den = t.get_den();
  ReducedForm38 form;
  form.d = strip_factor(num, 2) - strip_factor(den, 2);
  form.p = strip_factor(den, 3);
  if (den != 1) return std::nullopt;
  form.u = num;
  return form;
}

OrthogonalityResult are_orthogonal(const BernoulliParam& lam, const Rational& a, const Rational& b) {
  OrthogonalityResult out;
  if (a == b) return out;
  const ZeroWitness w = in_zero_set(lam, a - b);
  if (w.member) {
    out.orthogonal = true;
    out.witness = w;
  }
  return out;
}

PairwiseReport pairwise_orthogonal(const BernoulliParam& lam, std::span<const Rational> set,
                                   std::size_t cap) {
  if (set.size() < 2) throw ContractViolation("pairwise check needs at least two frequencies");
  if (set.size() > cap) {
    throw ResourceLimit("set of " + std::to_string(set.size()) + " frequencies exceeds cap " +
                        std::to_string(cap));
  }
  const std::size_t size = set.size();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> first_row{kNone};
  std::vector<std::size_t> failing_col(size, kNone);

  const auto rows = static_cast<long>(size);
#pragma omp parallel for schedule(dynamic, 4)
  for (long ri = 0; ri < rows; ++ri) {
    const auto i = static_cast<std::size_t>(ri);
    if (i > first_row.load(std::memory_order_relaxed)) continue;
    for (std::size_t j = i + 1; j < size; ++j) {
      if (!are_orthogonal(lam, set[i], set[j]).orthogonal) {
        failing_col[i] = j;
        std::size_t cur = first_row.load();
        while (i < cur && !first_row.compare_exchange_weak(cur, i)) {
        }
        break;
      }
    }
  }

  PairwiseReport report;
  const std::size_t row = first_row.load();
  if (row == kNone) {
    report.pairs_checked = size * (size - 1) / 2;
    return report;
  }
  const std::size_t col = failing_col[row];
  report.all_orthogonal = false;
  report.first_failure = std::make_pair(row, col);
  // pairs preceding (row, col) in row-major order, plus the failing one
  report.pairs_checked = row * size - row * (row + 1) / 2 + (col - row);
  return report;
}

}  // namespace bconv
