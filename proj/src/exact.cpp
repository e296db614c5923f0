#include "asmval/exact.hpp"

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "parallel.hpp"

namespace asmval::exact {

namespace {

void require_nonnegative(Count v, const char* what) {
  if (v < 0) throw std::invalid_argument(std::string(what) + " must be nonnegative");
}

// Base-p digits of a running value, least significant first, with the digit
// sum maintained under addition of small steps.
class DigitOdometer {
 public:
  DigitOdometer(Count base, Count start) : base_(base) {
    for (Count v = start; v > 0; v /= base_) {
      digits_.push_back(v % base_);
      sum_ += v % base_;
    }
  }

  Count sum() const noexcept { return sum_; }

  void advance(Count step) {
    Count carry = step;
    for (std::size_t i = 0; carry != 0; ++i) {
      if (i == digits_.size()) digits_.push_back(0);
      const Count d = digits_[i] + carry;
      const Count digit = d % base_;
      sum_ += digit - digits_[i];
      digits_[i] = digit;
      carry = d / base_;
    }
  }

 private:
  Count base_;
  Count sum_ = 0;
  std::vector<Count> digits_;
};

Count triangular(Count n) {
  return n % 2 == 0 ? checked_mul(n / 2, n - 1) : checked_mul(n, (n - 1) / 2);
}

void check_range(Count n_min, Count n_max) {
  if (n_min < 0 || n_max < n_min) throw std::invalid_argument("invalid N range");
}

}  // namespace

Count checked_add(Count a, Count b) {
  Count r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

Count checked_sub(Count a, Count b) {
  Count r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
  return r;
}

Count checked_mul(Count a, Count b) {
  Count r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

Count digit_sum(Prime p, Count n) {
  require_nonnegative(n, "n");
  const Count base = p.value();
  Count s = 0;
  for (; n > 0; n /= base) s += n % base;
  return s;
}

Count vp_integer(Prime p, Count m) {
  if (m == 0) throw std::domain_error("v_p(0) is infinite");
  require_nonnegative(m, "m");
  const Count base = p.value();
  Count k = 0;
  for (; m % base == 0; m /= base) ++k;
  return k;
}

Count vp_factorial_legendre(Prime p, Count m) {
  require_nonnegative(m, "m");
  const Count base = p.value();
  Count v = 0;
  for (Count q = m / base; q > 0; q /= base) v += q;
  return v;
}

Count vp_factorial_digit_form(Prime p, Count m) {
  require_nonnegative(m, "m");
  return (m - digit_sum(p, m)) / (p.value() - 1);
}

Count floor_sum(Count n, Count m, Count a, Count b) {
  if (n < 0 || m < 1 || a < 0 || b < 0) throw std::invalid_argument("floor_sum: bad arguments");
  Count ans = 0;
  while (true) {
    if (a >= m) {
      ans = checked_add(ans, checked_mul(triangular(n), a / m));
      a %= m;
    }
    if (b >= m) {
      ans = checked_add(ans, checked_mul(n, b / m));
      b %= m;
    }
    const Count y_max = checked_add(checked_mul(a, n), b);
    if (y_max < m) break;
    n = y_max / m;
    b = y_max % m;
    std::swap(m, a);
  }
  return ans;
}

Count digit_sum_progression(Prime p, Count start, Count step, Count count) {
  require_nonnegative(start, "start");
  require_nonnegative(step, "step");
  require_nonnegative(count, "count");
  if (count == 0) return 0;
  DigitOdometer odo(p.value(), start);
  Count total = odo.sum();
  for (Count i = 1; i < count; ++i) {
    odo.advance(step);
    total = checked_add(total, odo.sum());
  }
  return total;
}

Count vp_T_digit_sum(const ValuationQuery& q) {
  require_nonnegative(q.n, "N");
  if (q.n == 0) return 0;
  const Count upper = digit_sum_progression(q.p, q.n, 1, q.n);
  const Count lower = digit_sum_progression(q.p, 1, 3, q.n);
  const Count diff = checked_sub(upper, lower);
  const Count denom = q.p.value() - 1;
  if (diff % denom != 0) {
    throw std::logic_error("digit-sum difference not divisible by p-1 at N=" + std::to_string(q.n));
  }
  if (diff < 0) throw std::logic_error("negative valuation at N=" + std::to_string(q.n));
  return diff / denom;
}

Count vp_T_legendre(const ValuationQuery& q) {
  require_nonnegative(q.n, "N");
  if (q.n == 0) return 0;
  const Count n = q.n;
  const Count largest = checked_sub(checked_mul(3, n), 2);  // 3(N-1)+1 >= 2N-1
  Count v = 0;
  for (Count power = q.p.value(); power <= largest;) {
    v = checked_add(v, floor_sum(n, power, 3, 1));
    v = checked_sub(v, floor_sum(n, power, 1, n));
    if (power > largest / q.p.value()) break;
    power *= q.p.value();
  }
  return v;
}

Count vp_T_bignum(const ValuationQuery& q, Count n_cap) {
  using boost::multiprecision::cpp_int;
  require_nonnegative(q.n, "N");
  if (q.n > n_cap) {
    throw std::length_error("big-integer oracle limited to N <= " + std::to_string(n_cap) +
                            " (got " + std::to_string(q.n) + ")");
  }
  if (q.n == 0) return 0;

  const Count n = q.n;
  std::vector<cpp_int> factorial(static_cast<std::size_t>(3 * n));
  factorial[0] = 1;
  for (std::size_t i = 1; i < factorial.size(); ++i) factorial[i] = factorial[i - 1] * i;

  cpp_int numerator = 1;
  cpp_int denominator = 1;
  for (Count j = 0; j < n; ++j) {
    numerator *= factorial[static_cast<std::size_t>(3 * j + 1)];
    denominator *= factorial[static_cast<std::size_t>(n + j)];
  }
  cpp_int t = numerator / denominator;
  if (t * denominator != numerator) throw std::logic_error("T(N) is not an integer");

  const cpp_int base = q.p.value();
  Count v = 0;
  while (t % base == 0) {
    t /= base;
    ++v;
  }
  return v;
}

Count prefix_digit_sum(Prime p, Count n) {
  require_nonnegative(n, "N");
  Count total = 0;
  for (Count i = 1; i < n; ++i) total = checked_add(total, digit_sum(p, i));
  return total;
}

std::vector<Count> prefix_digit_sums(Prime p, Count n_max) {
  require_nonnegative(n_max, "N");
  std::vector<Count> table(static_cast<std::size_t>(n_max) + 1, 0);
  for (Count n = 1; n <= n_max; ++n) {
    table[static_cast<std::size_t>(n)] =
        checked_add(table[static_cast<std::size_t>(n - 1)], digit_sum(p, n - 1));
  }
  return table;
}

bool digit_sum_step_identity_check(Prime p, Count m) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  return digit_sum(p, m) - digit_sum(p, m - 1) == 1 - (p.value() - 1) * vp_integer(p, m);
}

std::vector<ValuationRow> valuation_sweep(Prime p, Count n_min, Count n_max) {
  check_range(n_min, n_max);
  std::vector<ValuationRow> rows(static_cast<std::size_t>(n_max - n_min + 1));
  detail::parallel_for(static_cast<Count>(rows.size()), [&](Count i) {
    const ValuationQuery q{p, n_min + i};
    rows[static_cast<std::size_t>(i)] = {q.n, vp_T_digit_sum(q), vp_T_legendre(q)};
  });
  return rows;
}

std::vector<ValuationRow> valuation_sweep_serial(Prime p, Count n_min, Count n_max) {
  check_range(n_min, n_max);
  std::vector<ValuationRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (Count n = n_min; n <= n_max; ++n) {
    const ValuationQuery q{p, n};
    rows.push_back({n, vp_T_digit_sum(q), vp_T_legendre(q)});
  }
  return rows;
}

}  // namespace asmval::exact
