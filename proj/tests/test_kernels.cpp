#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include <omp.h>

#include "asmval/analytic.hpp"
#include "asmval/exact.hpp"

using namespace asmval;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_bits(special::Complex a, special::Complex b) { return same_bits(a.real(), b.real()) && same_bits(a.imag(), b.imag()); }

bool same_series(const analytic::FourierSeries& a, const analytic::FourierSeries& b) {
  if (a.period() != b.period() || a.order() != b.order()) return false;
  for (int k = 1; k <= a.order(); ++k) {
    if (!same_bits(a.coefficient(k), b.coefficient(k)) || !same_bits(a.coefficient(-k), b.coefficient(-k))) return false;
  }
  return true;
}

struct ThreadCount {
  explicit ThreadCount(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~ThreadCount() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_CASE("valuation sweep matches the serial reference") {
  for (const int threads : {1, 4}) {
    ThreadCount guard(threads);
    for (const std::int64_t p : {2, 3, 7}) {
      CAPTURE(p);
      const auto par = exact::valuation_sweep(Prime(p), 1, 3000);
      const auto ser = exact::valuation_sweep_serial(Prime(p), 1, 3000);
      REQUIRE(par.size() == 3000);
      CHECK(par == ser);
      for (const auto& row : par) REQUIRE(row.agree());
    }
  }
  CHECK_THROWS_AS(exact::valuation_sweep(Prime(2), 5, 4), std::invalid_argument);
}

TEST_CASE("coefficient set build matches the serial reference") {
  for (const int threads : {1, 4}) {
    ThreadCount guard(threads);
    for (const std::int64_t p : {2, 3, 7}) {
      CAPTURE(p);
      const auto par = analytic::FourierCoefficientSet::build(Prime(p), 300);
      const auto ser = analytic::FourierCoefficientSet::build_serial(Prime(p), 300);
      CHECK(same_series(par.phi, ser.phi));
      CHECK(par.psi.has_value() == ser.psi.has_value());
      if (par.psi) {
        for (int j = -1; j <= 1; ++j) CHECK(same_series(par.psi_series(j), ser.psi_series(j)));
      }
      CHECK(par.within_envelope == ser.within_envelope);
    }
  }
}

TEST_CASE("theorem sweep matches the serial reference") {
  for (const int threads : {1, 4}) {
    ThreadCount guard(threads);
    for (const std::int64_t p : {2, 3, 7}) {
      CAPTURE(p);
      const auto coeffs = analytic::FourierCoefficientSet::build(Prime(p), 100);
      const auto par = analytic::theorem_rhs_sweep(1, 1500, coeffs);
      const auto ser = analytic::theorem_rhs_sweep_serial(1, 1500, coeffs);
      REQUIRE(par.size() == ser.size());
      for (std::size_t i = 0; i < par.size(); ++i) {
        REQUIRE(same_bits(par[i].total, ser[i].total));
        REQUIRE(same_bits(par[i].phi_term, ser[i].phi_term));
        REQUIRE(same_bits(par[i].psi_term, ser[i].psi_term));
      }
      const auto single = analytic::theorem_rhs({Prime(p), 777}, coeffs);
      CHECK(same_bits(single.total, par[776].total));
    }
  }
}

TEST_CASE("exceptions inside a parallel sweep propagate") {
  ThreadCount guard(4);
  const auto coeffs = analytic::FourierCoefficientSet::build(Prime(2), 10);
  CHECK_THROWS_AS(analytic::theorem_rhs_sweep(0, 100, coeffs), std::invalid_argument);
}
