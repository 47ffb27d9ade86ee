#include <doctest.h>

#include <limits>

#include "jms/error.hpp"
#include "jms/spectra.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using jms::InteractionMatrix;

namespace {

jms::Channel channel(int ell, double lambda = 1.0) { return {ell, lambda, jms::kDefaultEta}; }

const InteractionMatrix kTable3({3.0, 1.0}, {2.0});

// Root of J_00 + J_01 R_1 + Ω_00 by plain bisection on [a, b].
double explicit_n1_root(int ell, double omega00, double a, double b) {
  auto f = [&](double x) {
    const jms::KinematicTable t(channel(ell), jms::SpectralPoint::at(x), 1);
    return (t.j_diag(0) + t.j_up(0) * t.tn_rn(0).second + omega00).real();
  };
  double fa = f(a);
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    const double fm = f(m);
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return a;
}

}  // namespace

TEST_CASE("rank-1 pole determinant is the explicit bound-state condition") {
  for (double x : {-0.3, -1.7, -6.0}) {
    const jms::KinematicTable t(channel(1), jms::SpectralPoint::at(x), 2);
    const double want = (t.j_diag(0) + t.j_up(0) * t.tn_rn(0).second).real() + 2.5;
    CHECK(jms::pole_determinant(channel(1), InteractionMatrix({2.5}, {}), x) == doctest::Approx(want).epsilon(1e-14));
  }
  CHECK_THROWS_AS(jms::pole_determinant(channel(0), InteractionMatrix({1.0}, {}), 0.5), jms::DomainError);
}

TEST_CASE("rank-1 roots agree with the explicit condition") {
  const InteractionMatrix omega({-0.5}, {});
  const auto found = jms::find_bound_states(channel(0), omega);
  REQUIRE(found.states.size() == 1);
  const double x = found.states[0].x_star;
  CHECK(std::abs(x - explicit_n1_root(0, -0.5, x - 0.01, x + 0.01)) <= 1e-12);
  CHECK(found.states[0].energy_over_lambda2 == doctest::Approx(-0.2765686329).epsilon(1e-6));
}

TEST_CASE("bound states of the rank-2 example") {
  const auto found = jms::find_bound_states(channel(0), kTable3);
  REQUIRE(found.states.size() == 2);
  CHECK(found.states[0].energy_over_lambda2 == doctest::Approx(-1.7447577960).epsilon(1e-9));
  CHECK(found.states[1].energy_over_lambda2 == doctest::Approx(-0.2062083314).epsilon(1e-9));
  for (const auto& s : found.states) {
    CHECK(s.residual <= 1e-9);
    CHECK(s.x_star < 0.0);
    // strictly inside a sign-change bracket
    const double h = 1e-6;
    CHECK(jms::pole_determinant(channel(0), kTable3, s.x_star - h) *
              jms::pole_determinant(channel(0), kTable3, s.x_star + h) <
          0.0);
  }
}

TEST_CASE("repulsive-looking rank-1 rows still bind") {
  const auto found = jms::find_bound_states(channel(3), InteractionMatrix({3.0}, {}));
  REQUIRE(found.states.size() == 1);
  CHECK(found.states[0].energy_over_lambda2 == doctest::Approx(-0.6090374585).epsilon(1e-9));
}

TEST_CASE("free particle has neither bound states nor resonances") {
  for (int ell = 0; ell <= 3; ++ell) {
    CHECK(jms::find_bound_states(channel(ell), InteractionMatrix::zero(1)).states.empty());
    CHECK(jms::find_resonances(channel(ell), InteractionMatrix::zero(2), 40.0, 800).peaks.empty());
  }
}

TEST_CASE("odd-wave sign changes without a root are classified as divergences") {
  const auto found = jms::find_bound_states(channel(1), kTable3);
  REQUIRE(found.states.size() == 1);
  CHECK(found.states[0].energy_over_lambda2 == doctest::Approx(-1.7991175093).epsilon(1e-9));
  CHECK_FALSE(found.singular_crossings.empty());
}

TEST_CASE("closed-form singularities of the rank-2 example") {
  const auto list = jms::closed_form_singularities(channel(1), kTable3);
  auto has = [&](double e, jms::SingularityKind kind) {
    return std::any_of(list.begin(), list.end(), [&](const auto& s) {
      return s.kind == kind && std::abs(s.energy_over_lambda2 - e) <= 1e-6 * std::abs(e);
    });
  };
  CHECK(has(-0.2588596716, jms::SingularityKind::p_plus_zero));
  CHECK(has(-0.2058919014, jms::SingularityKind::r1_lambda_zero));
  CHECK_THROWS_AS(jms::closed_form_singularities(channel(1), InteractionMatrix::zero(4)), jms::DomainError);
}

TEST_CASE("resonance peaks of the rank-1 p wave") {
  const auto weak = jms::find_resonances(channel(1), InteractionMatrix({3.0}, {}));
  const auto strong = jms::find_resonances(channel(1), InteractionMatrix({10.0}, {}));
  auto resonant = [](const jms::ResonanceSearch& r) {
    std::vector<jms::ResonancePeak> out;
    for (const auto& p : r.peaks)
      if (p.resonant()) out.push_back(p);
    return out;
  };
  const auto w = resonant(weak), s = resonant(strong);
  REQUIRE(w.size() == 1);
  REQUIRE(s.size() == 1);
  CHECK(w[0].energy_over_lambda2 == doctest::Approx(2.840800).epsilon(1e-4));
  CHECK(s[0].energy_over_lambda2 == doctest::Approx(6.424600).epsilon(1e-4));
  CHECK(s[0].half_width < w[0].half_width);
  for (const auto& p : weak.peaks) {
    CHECK(p.height >= 0.0);
    CHECK(p.height <= 2.0);
  }
}

TEST_CASE("resonance energy increases with the interaction strength") {
  double prev = 0.0;
  for (double o = 3.0; o <= 10.0; o += 1.0) {
    const auto r = jms::find_resonances(channel(1), InteractionMatrix({o}, {}));
    double e = -1.0;
    for (const auto& p : r.peaks)
      if (p.resonant()) e = p.energy_over_lambda2;
    CAPTURE(o);
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("peak positions are stable under grid refinement") {
  const InteractionMatrix omega({3.0, 1.0, -2.0}, {-2.0, 1.0});
  const auto a = jms::find_resonances(channel(2), omega, 40.0, 4000);
  const auto b = jms::find_resonances(channel(2), omega, 40.0, 8000);
  // The finer grid may resolve extra narrow peaks; every coarse peak must persist.
  REQUIRE(b.peaks.size() >= a.peaks.size());
  for (const auto& p : a.peaks) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& q : b.peaks) nearest = std::min(nearest, std::abs(p.x_star - q.x_star));
    CAPTURE(p.x_star);
    CHECK(nearest <= 1e-8);
  }
}

TEST_CASE("search results do not depend on lambda") {
  const auto a = jms::find_bound_states(channel(2, 1.0), kTable3);
  const auto b = jms::find_bound_states(channel(2, 2.0), kTable3);
  REQUIRE(a.states.size() == b.states.size());
  for (std::size_t k = 0; k < a.states.size(); ++k) CHECK(a.states[k].x_star == b.states[k].x_star);
  const auto ra = jms::find_resonances(channel(1, 1.0), InteractionMatrix({5.0}, {}), 40.0, 1000);
  const auto rb = jms::find_resonances(channel(1, 0.3), InteractionMatrix({5.0}, {}), 40.0, 1000);
  REQUIRE(ra.peaks.size() == rb.peaks.size());
  for (std::size_t k = 0; k < ra.peaks.size(); ++k) CHECK(ra.peaks[k].x_star == rb.peaks[k].x_star);
}

TEST_CASE("random interactions are reproducible and bounded") {
  const auto a = jms::random_interactions(3, 50, 42);
  const auto b = jms::random_interactions(3, 50, 42);
  const auto c = jms::random_interactions(3, 50, 43);
  REQUIRE(a.size() == 50);
  bool differs = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (int n = 0; n < 3; ++n) {
      CHECK(a[k].diag(n) == b[k].diag(n));
      CHECK(std::abs(a[k].diag(n)) <= 10.0);
      differs = differs || a[k].diag(n) != c[k].diag(n);
    }
    for (int n = 0; n < 2; ++n) CHECK(std::abs(a[k].off(n)) <= 10.0);
  }
  CHECK(differs);
  CHECK_THROWS_AS(jms::random_interactions(0, 5, 1), jms::DomainError);
}

TEST_CASE("census tallies counts per rank") {
  std::vector<InteractionMatrix> samples = jms::random_interactions(1, 40, 9);
  const auto more = jms::random_interactions(2, 40, 10);
  samples.insert(samples.end(), more.begin(), more.end());
  const auto rows = jms::conjecture_census(channel(0), samples, -40.0, 1000);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].rank == 1);
  CHECK(rows[0].samples == 40);
  CHECK(rows[1].rank == 2);
  CHECK(rows[1].samples == 40);
  for (const auto& r : rows) {
    int expected = 0, max_count = 0;
    for (const auto& m : samples) {
      if (m.rank() != r.rank) continue;
      const int n = static_cast<int>(jms::find_bound_states(channel(0), m, -40.0, 1000).states.size());
      max_count = std::max(max_count, n);
      if (n > 2 * r.rank - 1) ++expected;
    }
    CHECK(r.max_count == max_count);
    CHECK(r.violations == expected);
  }
}

TEST_CASE("s-wave rank-1 window with two poles") {
  // J_00 + J_01 R_1 peaks near 0.651 before returning to 0.5 at threshold.
  const auto found = jms::find_bound_states(channel(0), InteractionMatrix({-0.6}, {}));
  REQUIRE(found.states.size() == 2);
  CHECK(found.states[0].x_star == doctest::Approx(oracle::kTwoRootsEll0OmegaMinus0p6[0]).epsilon(1e-10));
  CHECK(found.states[1].x_star == doctest::Approx(oracle::kTwoRootsEll0OmegaMinus0p6[1]).epsilon(1e-10));
  const auto rows = jms::conjecture_census(channel(0), std::vector<InteractionMatrix>{InteractionMatrix({-0.6}, {})});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].violations == 1);
}

TEST_CASE("search argument validation") {
  CHECK_THROWS_AS(jms::find_bound_states(channel(0), kTable3, 1.0, 100), jms::DomainError);
  CHECK_THROWS_AS(jms::find_resonances(channel(0), kTable3, -1.0, 100), jms::DomainError);
}
