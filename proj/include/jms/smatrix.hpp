#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jms/kinematics.hpp"

namespace jms {

/// Real symmetric tridiagonal N×N interaction in the Laguerre basis, stored as
/// its 2N−1 independent entries.
class InteractionMatrix {
 public:
  InteractionMatrix(std::vector<double> diag, std::vector<double> offdiag);

  static InteractionMatrix zero(int rank);

  int rank() const { return static_cast<int>(diag_.size()); }
  double diag(int n) const { return diag_[static_cast<std::size_t>(n)]; }
  /// Ω_{n,n+1}.
  double off(int n) const { return off_[static_cast<std::size_t>(n)]; }
  /// Ω_{n,m}; zero outside the N×N block and off the three bands.
  double at(int n, int m) const;

  std::span<const double> diagonal() const { return diag_; }
  std::span<const double> offdiagonal() const { return off_; }

  bool is_zero() const;
  /// Zero-extended to a larger rank (restriction read backwards).
  InteractionMatrix padded(int rank) const;

 private:
  std::vector<double> diag_;
  std::vector<double> off_;
};

enum class SMethod { closed_form, linear_solve };
enum class Branch { plus, minus };

struct ScatteringResult {
  cplx s_value;                      ///< e^{2iδ}
  double delta = 0.0;                ///< principal value in (−π/2, π/2]
  std::vector<double> interior_rho;  ///< ρ_n, n = 0…N−2 (linear solve only)
  std::vector<double> interior_sigma;
  SMethod method = SMethod::linear_solve;
  /// Tail amplitude solved for by the linear route (p̂_n = β p±_n, n ≥ N−1).
  std::optional<cplx> beta;
};

/// Closed-form S-matrix for N ≤ 3: the rank-3 expression with Ω_12 = Ω_22 = 0
/// for N = 2 and additionally Ω_01 = Ω_11 = 0 for N = 1. Needs n_max ≥ 2.
ScatteringResult s_closed_form(const KinematicTable& table, const InteractionMatrix& omega);

/// S-matrix of any rank from rows 0…N−1 of the interacting recursion with the
/// tail ansatz p̂_n = β p±_n for n ≥ N−1. Needs n_max ≥ N.
ScatteringResult s_linear_solve(const KinematicTable& table, const InteractionMatrix& omega,
                                Branch branch = Branch::plus);

struct PhasePoint {
  double x = 0.0;
  double delta = 0.0;  ///< unwrapped
  cplx s_value;
};

struct PhaseCurve {
  std::vector<PhasePoint> points;
  std::vector<std::string> warnings;
};

/// δ(x) over an ascending grid, unwrapped by multiples of π so consecutive
/// values differ by at most π/2. Steps above π/4 after unwrapping are reported
/// as under-resolved.
PhaseCurve phase_shift_curve(const Channel& ch, const InteractionMatrix& omega, std::span<const double> x_grid);

/// S at one positive spectral point using the production route (linear solve).
ScatteringResult s_matrix_at(const Channel& ch, const InteractionMatrix& omega, double x);

}  // namespace jms
