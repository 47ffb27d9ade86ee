#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jms/smatrix.hpp"

namespace jms {

struct BoundState {
  double x_star = 0.0;
  double energy_over_lambda2 = 0.0;
  double residual = 0.0;  ///< |pole_determinant| at the refined root
};

struct BoundStateSearch {
  std::vector<BoundState> states;  ///< ascending in energy
  /// Sign changes of the determinant that refine onto a divergence (a zero of
  /// p⁺_{N−1}) rather than onto a root.
  std::vector<double> singular_crossings;
  std::vector<std::string> warnings;
};

struct ResonancePeak {
  double x_star = 0.0;
  double energy_over_lambda2 = 0.0;
  double height = 0.0;      ///< |1 − S| at the peak
  double half_width = 0.0;  ///< full width at half height, E/λ² units
  double phase_slope = 0.0; ///< dδ/d(E/λ²) at the peak

  /// δ rising through the peak (positive time delay). Unsaturated maxima sit on
  /// a stationary phase, so the slope is measured against the peak width.
  bool resonant() const { return phase_slope * half_width > 1e-3; }
};

struct ResonanceSearch {
  std::vector<ResonancePeak> peaks;  ///< ascending in energy
  std::size_t skipped_points = 0;
  std::vector<std::string> warnings;
};

struct CensusRow {
  int rank = 0;
  int samples = 0;
  int max_count = 0;
  int violations = 0;  ///< samples with more than 2N−1 bound states
};

struct SearchDefaults {
  static constexpr double x_min = -40.0;
  static constexpr double x_max = 40.0;
  static constexpr int grid_points = 4000;
};

/// Real determinant of the source-free interacting system at x < 0, with the
/// tail column written through R_N = p⁺_N / p⁺_{N−1}. For N = 1 this is
/// J_00 + J_01 R_1 + Ω_00.
double pole_determinant(const Channel& ch, const InteractionMatrix& omega, double x);

/// Sign-change scan of pole_determinant on a uniform grid over [x_min, 0),
/// each bracket refined by bisection to the last representable double.
BoundStateSearch find_bound_states(const Channel& ch, const InteractionMatrix& omega,
                                   double x_min = SearchDefaults::x_min,
                                   int grid_points = SearchDefaults::grid_points);

/// Strict local maxima of |1 − S| on a uniform grid over (0, x_max], refined by
/// golden-section search. Uses the closed form for N ≤ 3 and the linear solve
/// above; grid points where the closed form is singular are skipped.
ResonanceSearch find_resonances(const Channel& ch, const InteractionMatrix& omega,
                                double x_max = SearchDefaults::x_max,
                                int grid_points = SearchDefaults::grid_points);

/// Bound-state counts per rank over the given samples; any count above 2N−1 is
/// tallied as a violation rather than raised.
std::vector<CensusRow> conjecture_census(const Channel& ch, std::span<const InteractionMatrix> samples,
                                         double x_min = SearchDefaults::x_min,
                                         int grid_points = SearchDefaults::grid_points);

/// `count` interaction matrices of the given rank with entries uniform in
/// [−bound, bound], reproducible from `seed` on every platform.
std::vector<InteractionMatrix> random_interactions(int rank, int count, std::uint64_t seed, double bound = 10.0);

enum class SingularityKind { p_plus_zero, r1_lambda_zero };

struct ClosedFormSingularity {
  double x = 0.0;
  double energy_over_lambda2 = 0.0;
  SingularityKind kind = SingularityKind::p_plus_zero;
};

/// Negative-energy points where the closed-form expression (N ≤ 3) is singular
/// without S having a pole: zeros of p⁺_0 (R_1 diverges) and zeros of R_1Λ.
/// A sign-change scan of the closed-form denominator picks these up.
std::vector<ClosedFormSingularity> closed_form_singularities(const Channel& ch, const InteractionMatrix& omega,
                                                             double x_min = SearchDefaults::x_min,
                                                             int grid_points = SearchDefaults::grid_points);

}  // namespace jms
