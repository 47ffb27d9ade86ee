#include <doctest.h>

#include <numbers>

#include "jms/error.hpp"
#include "jms/smatrix.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using jms::cplx;
using jms::InteractionMatrix;
using jms::KinematicTable;
using jms::SpectralPoint;

namespace {

jms::Channel channel(int ell) { return {ell, 1.0, jms::kDefaultEta}; }

InteractionMatrix from_case(const oracle::SMatrixCase& c) {
  return {std::vector<double>(c.diag.begin(), c.diag.begin() + c.rank),
          std::vector<double>(c.off.begin(), c.off.begin() + (c.rank - 1))};
}

}  // namespace

TEST_CASE("S-matrix matches high-precision reference values") {
  for (const auto& c : oracle::kSMatrix) {
    CAPTURE(c.ell);
    CAPTURE(c.x);
    CAPTURE(c.rank);
    const auto omega = from_case(c);
    const KinematicTable t(channel(c.ell), SpectralPoint::at(c.x), std::max(c.rank, 2) + 1);
    CHECK(std::abs(jms::s_linear_solve(t, omega).s_value - c.s) <= 1e-11);
    if (c.rank <= 3) CHECK(std::abs(jms::s_closed_form(t, omega).s_value - c.s) <= 1e-11);
  }
}

TEST_CASE("closed form agrees with the linear solve on random inputs") {
  testutil::Rng rng(101);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int ell = rng.integer(0, 5);
    const double x = rng.uniform(0.1, 50.0);
    const int N = rng.integer(1, 3);
    const auto omega = rng.omega(N);
    const KinematicTable t(channel(ell), SpectralPoint::at(x), 4);
    const cplx a = jms::s_closed_form(t, omega).s_value;
    const cplx b = jms::s_linear_solve(t, omega).s_value;
    worst = std::max(worst, std::abs(a - b));
    CAPTURE(ell);
    CAPTURE(x);
    CAPTURE(N);
    REQUIRE(std::abs(a - b) <= 1e-10);
  }
  MESSAGE("worst |closed - linear| = " << worst);
}

TEST_CASE("S is unimodular for ranks up to 8") {
  testutil::Rng rng(7);
  for (int k = 0; k < 800; ++k) {
    const int N = rng.integer(1, 8);
    const auto omega = rng.omega(N);
    const KinematicTable t(channel(rng.integer(0, 6)), SpectralPoint::at(rng.uniform(0.1, 50.0)), N + 1);
    const auto r = jms::s_linear_solve(t, omega);
    REQUIRE(std::abs(std::abs(r.s_value) - 1.0) <= 1e-10);
    REQUIRE(r.interior_rho.size() == static_cast<std::size_t>(N - 1));
    if (N <= 3) REQUIRE(std::abs(std::abs(jms::s_closed_form(t, omega).s_value) - 1.0) <= 1e-10);
  }
}

TEST_CASE("zero interaction gives S = 1") {
  for (int ell = 0; ell <= 5; ++ell) {
    for (double x = 0.05; x <= 50.0; x += 0.37) {
      for (int N : {1, 2, 3, 6}) {
        const KinematicTable t(channel(ell), SpectralPoint::at(x), N + 1);
        REQUIRE(std::abs(jms::s_linear_solve(t, InteractionMatrix::zero(N)).s_value - 1.0) <= 1e-12);
        if (N <= 3) REQUIRE(std::abs(jms::s_closed_form(t, InteractionMatrix::zero(N)).s_value - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("minus branch amplitude is the conjugate of the plus branch") {
  testutil::Rng rng(13);
  for (int k = 0; k < 300; ++k) {
    const int N = rng.integer(1, 8);
    const auto omega = rng.omega(N);
    const KinematicTable t(channel(rng.integer(0, 5)), SpectralPoint::at(rng.uniform(0.1, 50.0)), N + 1);
    const auto plus = jms::s_linear_solve(t, omega, jms::Branch::plus);
    const auto minus = jms::s_linear_solve(t, omega, jms::Branch::minus);
    REQUIRE(std::abs(*minus.beta - std::conj(*plus.beta)) <= 1e-12 * std::abs(*plus.beta));
    REQUIRE(std::abs(minus.s_value - plus.s_value) <= 1e-12);
  }
}

TEST_CASE("restriction chain reproduces lower ranks exactly") {
  testutil::Rng rng(19);
  for (int k = 0; k < 300; ++k) {
    const KinematicTable t(channel(rng.integer(0, 5)), SpectralPoint::at(rng.uniform(0.1, 50.0)), 3);
    const auto o1 = rng.omega(1);
    const auto o2 = rng.omega(2);
    REQUIRE(jms::s_closed_form(t, o1).s_value == jms::s_closed_form(t, o1.padded(2)).s_value);
    REQUIRE(jms::s_closed_form(t, o1.padded(2)).s_value == jms::s_closed_form(t, o1.padded(3)).s_value);
    REQUIRE(jms::s_closed_form(t, o2).s_value == jms::s_closed_form(t, o2.padded(3)).s_value);
    REQUIRE(std::abs(jms::s_linear_solve(t, o2).s_value - jms::s_linear_solve(t, o2.padded(3)).s_value) <= 1e-12);
  }
}

TEST_CASE("phase shift is the half-argument of S") {
  const KinematicTable t(channel(1), SpectralPoint::at(3.3), 3);
  const auto r = jms::s_linear_solve(t, InteractionMatrix({2.5}, {}));
  CHECK(std::abs(std::polar(1.0, 2.0 * r.delta) - r.s_value) <= 1e-14);
  CHECK(r.delta > -std::numbers::pi / 2);
  CHECK(r.delta <= std::numbers::pi / 2);
}

TEST_CASE("interaction matrix validation") {
  CHECK_THROWS_AS(InteractionMatrix({}, {}), jms::DomainError);
  CHECK_THROWS_AS(InteractionMatrix({1.0, 2.0}, {}), jms::DomainError);
  CHECK_THROWS_AS(InteractionMatrix({1.0, 2.0}, {1.0, 2.0}), jms::DomainError);
  CHECK_THROWS_AS(InteractionMatrix({std::nan("")}, {}), jms::DomainError);
  const InteractionMatrix m({1.0, 2.0, 3.0}, {4.0, 5.0});
  CHECK(m.at(0, 1) == 4.0);
  CHECK(m.at(2, 1) == 5.0);
  CHECK(m.at(0, 2) == 0.0);
  CHECK(m.at(3, 3) == 0.0);
  CHECK_THROWS_AS(m.padded(2), jms::DomainError);
  CHECK(InteractionMatrix::zero(4).is_zero());
}

TEST_CASE("S-matrix error paths") {
  const KinematicTable t(channel(0), SpectralPoint::at(1.0), 5);
  CHECK_THROWS_AS(jms::s_closed_form(t, InteractionMatrix::zero(4)), jms::DomainError);
  const KinematicTable negative(channel(0), SpectralPoint::at(-1.0), 5);
  CHECK_THROWS_AS(jms::s_closed_form(negative, InteractionMatrix::zero(1)), jms::DomainError);
  CHECK_THROWS_AS(jms::s_linear_solve(negative, InteractionMatrix::zero(1)), jms::DomainError);
  const KinematicTable short_table(channel(0), SpectralPoint::at(1.0), 1);
  CHECK_THROWS_AS(jms::s_closed_form(short_table, InteractionMatrix::zero(1)), jms::DomainError);
  CHECK_THROWS_AS(jms::s_linear_solve(t, InteractionMatrix::zero(6)), jms::DomainError);
}

TEST_CASE("phase curve is unwrapped across a sharp rise") {
  const InteractionMatrix omega({3.0, 1.0, -2.0}, {-2.0, 1.0});
  std::vector<double> xs;
  for (int j = 0; j <= 4000; ++j) xs.push_back(2.0 * (3.0 + 0.5 * j / 4000.0));
  const auto curve = jms::phase_shift_curve(channel(2), omega, xs);
  CHECK(curve.warnings.empty());
  const double rise = (curve.points.back().delta - curve.points.front().delta) / std::numbers::pi;
  CHECK(rise == doctest::Approx(1.0).epsilon(0.1));

  const std::vector<double> coarse{2.0 * 3.245, 2.0 * 3.2489, 2.0 * 3.253};
  CHECK_FALSE(jms::phase_shift_curve(channel(2), omega, coarse).warnings.empty());
  const std::vector<double> unsorted{2.0, 1.0};
  CHECK_THROWS_AS(jms::phase_shift_curve(channel(2), omega, unsorted), jms::DomainError);
}
