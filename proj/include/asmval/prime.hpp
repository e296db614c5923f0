#pragma once

#include <cstdint>

namespace asmval {

/// Which of the three asymptotic regimes a prime falls into.
enum class PrimeClass {
  one_mod_three,
  minus_one_mod_three,
  three,
};

bool is_prime(std::int64_t n);

/// A prime validated by trial division at construction.
class Prime {
 public:
  /// Throws std::invalid_argument unless `value` is prime.
  explicit Prime(std::int64_t value);

  std::int64_t value() const noexcept { return value_; }
  PrimeClass residue_class() const noexcept;

  /// The unit u in {+1, -1} with p = u (mod 3). Throws std::domain_error for p = 3.
  int unit() const;

  /// Natural logarithm of the prime.
  double log() const noexcept { return log_; }

  friend bool operator==(const Prime& a, const Prime& b) noexcept { return a.value_ == b.value_; }

 private:
  std::int64_t value_;
  double log_;
};

}  // namespace asmval
