#include "asmval/prime.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace asmval {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::int64_t value) : value_(value), log_(0.0) {
  if (!is_prime(value)) {
    throw std::invalid_argument("not a prime: " + std::to_string(value));
  }
  log_ = std::log(static_cast<double>(value));
}

PrimeClass Prime::residue_class() const noexcept {
  switch (value_ % 3) {
    case 0: return PrimeClass::three;
    case 1: return PrimeClass::one_mod_three;
    default: return PrimeClass::minus_one_mod_three;
  }
}

int Prime::unit() const {
  switch (residue_class()) {
    case PrimeClass::one_mod_three: return 1;
    case PrimeClass::minus_one_mod_three: return -1;
    case PrimeClass::three: break;
  }
  throw std::domain_error("p = 3 has no unit residue mod 3");
}

}  // namespace asmval
