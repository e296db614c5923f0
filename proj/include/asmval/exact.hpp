#pragma once

// Exact integer side: digit sums, factorial valuations and three independent
// routes to v_p(T(N)) where T(N) = prod_{j<N} (3j+1)! / (N+j)! counts
// alternating sign matrices. Everything here is checked 64-bit arithmetic;
// overflow throws std::overflow_error instead of wrapping.

#include <cstdint>
#include <vector>

#include "asmval/prime.hpp"

namespace asmval::exact {

using Count = std::int64_t;

/// One evaluation point (p, N). N = 0 is accepted (T(0) = 1, valuation 0).
struct ValuationQuery {
  Prime p;
  Count n;
};

/// Largest N accepted by vp_T_bignum unless the caller raises it.
inline constexpr Count default_bignum_cap = 30;

Count checked_add(Count a, Count b);
Count checked_sub(Count a, Count b);
Count checked_mul(Count a, Count b);

/// Sum of the base-p digits of n (0 for n = 0).
Count digit_sum(Prime p, Count n);

/// Exponent of the largest power of p dividing m. Throws std::domain_error for m = 0.
Count vp_integer(Prime p, Count m);

/// v_p(m!) by Legendre's floor sum  sum_{i>=1} floor(m / p^i).
Count vp_factorial_legendre(Prime p, Count m);

/// v_p(m!) by the digit-sum form  (m - S_p(m)) / (p - 1).
Count vp_factorial_digit_form(Prime p, Count m);

/// sum_{i=0}^{n-1} floor((a*i + b) / m) for n >= 0, m >= 1, a >= 0, b >= 0.
Count floor_sum(Count n, Count m, Count a, Count b);

/// Sum of S_p over the arithmetic progression start, start+step, ... (count terms).
Count digit_sum_progression(Prime p, Count start, Count step, Count count);

/// v_p(T(N)) as (sum_j S_p(N+j) - sum_j S_p(3j+1)) / (p-1).
/// Throws std::logic_error if the division is not exact or the result is negative.
Count vp_T_digit_sum(const ValuationQuery& q);

/// v_p(T(N)) as sum_j v_p((3j+1)!) - sum_j v_p((N+j)!) with Legendre floor sums.
Count vp_T_legendre(const ValuationQuery& q);

/// v_p(T(N)) from the exact big integer T(N). Throws std::length_error for N > n_cap.
Count vp_T_bignum(const ValuationQuery& q, Count n_cap = default_bignum_cap);

/// sum_{n=0}^{N-1} S_p(n) by direct summation.
Count prefix_digit_sum(Prime p, Count n);

/// table[n] = prefix_digit_sum(p, n) for 0 <= n <= n_max.
std::vector<Count> prefix_digit_sums(Prime p, Count n_max);

/// S_p(m) - S_p(m-1) == 1 - (p-1) v_p(m), evaluated with direct digit sums.
bool digit_sum_step_identity_check(Prime p, Count m);

struct ValuationRow {
  Count n = 0;
  Count by_digit_sum = 0;
  Count by_legendre = 0;

  bool agree() const noexcept { return by_digit_sum == by_legendre; }
  friend bool operator==(const ValuationRow&, const ValuationRow&) = default;
};

/// Both valuation routes for every n in [n_min, n_max], OpenMP-parallel over n.
std::vector<ValuationRow> valuation_sweep(Prime p, Count n_min, Count n_max);

/// Serial reference for valuation_sweep; identical output.
std::vector<ValuationRow> valuation_sweep_serial(Prime p, Count n_min, Count n_max);

}  // namespace asmval::exact
