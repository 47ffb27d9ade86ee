#include <doctest.h>

#include "jms/error.hpp"
#include "jms/specfun.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using jms::cplx;
using testutil::rel_err;

TEST_CASE("log_gamma matches high-precision values") {
  for (const auto& c : oracle::kLogGamma) {
    CAPTURE(c.arg);
    CHECK(rel_err(jms::log_gamma(c.arg), c.value) <= 1e-14);
  }
}

TEST_CASE("log_gamma rejects non-positive arguments") {
  CHECK_THROWS_AS(jms::log_gamma(0.0), jms::DomainError);
  CHECK_THROWS_AS(jms::log_gamma(-2.5), jms::DomainError);
}

TEST_CASE("laguerre_sequence matches high-precision values") {
  for (const auto& c : oracle::kLaguerre) {
    CAPTURE(c.alpha);
    CAPTURE(c.n);
    const auto seq = jms::laguerre_sequence(c.alpha, c.z, c.n);
    REQUIRE(seq.size() == static_cast<std::size_t>(c.n) + 1);
    CHECK(rel_err(seq.back(), c.value) <= 1e-12);
  }
}

TEST_CASE("laguerre_sequence satisfies its three-term recurrence") {
  testutil::Rng rng(11);
  for (int k = 0; k < 300; ++k) {
    const double alpha = rng.uniform(0.0, 12.0);
    const cplx z(rng.uniform(-20.0, 60.0), k % 3 == 0 ? rng.uniform(-5.0, 5.0) : 0.0);
    const int n_max = rng.integer(2, 200);
    const auto L = jms::laguerre_sequence(alpha, z, n_max);
    for (int n = 1; n < n_max; ++n) {
      const cplx lhs = (n + 1.0) * L[n + 1];
      const cplx rhs = (2.0 * n + alpha + 1.0 - z) * L[n] - (n + alpha) * L[n - 1];
      const double scale = std::max({std::abs(lhs), std::abs((2.0 * n + alpha + 1.0 - z) * L[n]),
                                     std::abs((n + alpha) * L[n - 1])});
      REQUIRE(std::abs(lhs - rhs) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("kummer_1f1 matches high-precision values") {
  for (const auto& c : oracle::kKummer) {
    CAPTURE(c.a);
    CAPTURE(c.c);
    CAPTURE(c.z);
    CHECK(rel_err(jms::kummer_1f1(c.a, c.c, c.z), c.value) <= 1e-12);
  }
}

TEST_CASE("kummer_1f1 edge cases") {
  CHECK(jms::kummer_1f1(2.3, 1.7, 0.0) == cplx(1.0));
  CHECK_THROWS_AS(jms::kummer_1f1(1.0, -2.0, 1.0), jms::SingularityError);
  CHECK_THROWS_AS(jms::kummer_1f1(1.0, 0.0, 1.0), jms::SingularityError);
  jms::SeriesControl bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(jms::kummer_1f1(1.0, 2.0, 1.0, bad), jms::DomainError);
  // polynomial case: 1F1(−2; c; z) = 1 − 2z/c + z²/(c(c+1))
  const double c = 1.5, z = 4.0;
  CHECK(rel_err(jms::kummer_1f1(-2.0, c, z), 1.0 - 2.0 * z / c + z * z / (c * (c + 1.0))) <= 1e-15);
}

TEST_CASE("kummer_1f1 is stable against a tighter tolerance") {
  jms::SeriesControl tight;
  tight.rel_tol = 1e-18;
  for (double a : {-7.5, -3.5, -0.5, 0.25, 1.3}) {
    for (double c : {-4.5, -1.5, 0.5, 1.75, 3.0}) {
      for (double re = -50.0; re <= 50.0; re += 12.5) {
        for (double im : {0.0, 3.0}) {
          const cplx z(re, im);
          if (std::abs(z) > 50.0) continue;
          CAPTURE(a);
          CAPTURE(c);
          CAPTURE(z);
          CHECK(rel_err(jms::kummer_1f1(a, c, z), jms::kummer_1f1(a, c, z, tight)) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("spherical_bessel_j matches high-precision values") {
  for (const auto& c : oracle::kBessel) {
    CAPTURE(c.ell);
    CAPTURE(c.x);
    CHECK(rel_err(jms::spherical_bessel_j(c.ell, c.x), c.value) <= 1e-12);
  }
  CHECK_THROWS_AS(jms::spherical_bessel_j(3, 0.0), jms::DomainError);
  CHECK_THROWS_AS(jms::spherical_bessel_j(-1, 1.0), jms::DomainError);
}

TEST_CASE("spherical_bessel_j satisfies the neighbour recurrence") {
  testutil::Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    const int ell = rng.integer(1, 30);
    const double x = rng.uniform(0.05, 100.0);
    const double jm = jms::spherical_bessel_j(ell - 1, x), j0 = jms::spherical_bessel_j(ell, x),
                 jp = jms::spherical_bessel_j(ell + 1, x);
    const double rhs = (2.0 * ell + 1.0) * j0 / x;
    const double scale = std::max({std::abs(jm), std::abs(jp), std::abs(rhs)});
    CAPTURE(ell);
    CAPTURE(x);
    REQUIRE(std::abs(jm + jp - rhs) <= 1e-9 * scale);
  }
}
