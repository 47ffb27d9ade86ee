#pragma once

#include <span>
#include <utility>
#include <vector>

#include "jms/specfun.hpp"

namespace jms {

/// Default energy convention E = η λ² x. η = 1/2 corresponds to ħ = m = 1.
inline constexpr double kDefaultEta = 0.5;

/// Kinematic context of a partial wave.
struct Channel {
  int ell = 0;
  double lambda = 1.0;
  double eta = kDefaultEta;

  void validate() const;

  /// E/λ² at spectral point x.
  double energy_over_lambda2(double x) const { return eta * x; }
  /// Spectral point x for a given E/λ².
  double spectral_x(double energy_over_lambda2) const { return energy_over_lambda2 / eta; }
};

/// x = μ² with μ = k/λ. For x < 0 the continuation μ = i√(−x) is used.
struct SpectralPoint {
  double x = 0.0;
  cplx mu;

  static SpectralPoint at(double x);
  bool scattering() const { return x > 0.0; }
};

/// Diagonal and lower band of the free J-matrix at one spectral point.
struct JBands {
  std::vector<double> diag;  ///< J_{n,n} = 2n + ℓ + 3/2 − x
  std::vector<double> sub;   ///< J_{n,n−1} = √(n(n + ℓ + 1/2)); sub[0] is unused (0)

  /// J_{n,n+1} = J_{n+1,n}.
  double upper(int n) const { return sub[static_cast<std::size_t>(n) + 1]; }
};

/// Basis normalization a_n^ℓ = √(2Γ(n+1)/Γ(n+ℓ+3/2)), evaluated in the log domain.
double normalization(int ell, int n);
inline double normalization(const Channel& ch, int n) { return normalization(ch.ell, n); }

/// Sine-like coefficients s_0 … s_{n_max} from the closed form (Laguerre values at μ²).
std::vector<cplx> sine_coeffs(const Channel& ch, const SpectralPoint& pt, int n_max);

/// Same sequence seeded with s_0 and propagated with the initial relation and
/// the three-term recursion. Cross-check path only.
std::vector<cplx> sine_coeffs_recursive(const Channel& ch, const SpectralPoint& pt, int n_max);

/// Cosine-like coefficients: c_0, c_1 from the ₁F₁ closed form, then forward
/// recursion.
///
/// For x > 0 the first ~x/4 terms of c_n decrease relative to s_n, so the
/// forward sweep carries an s-admixture of relative size ~ε·|c_0/s_0|. This is
/// invisible below x ≈ 10 and harmless for S (the admixture only reaches O(1)
/// where |S − 1| is already below double resolution), but individual c_n at
/// large x and n ≲ x/4 should not be trusted beyond that bound.
std::vector<cplx> cosine_coeffs(const Channel& ch, const SpectralPoint& pt, int n_max);

/// Every c_n from the ₁F₁ closed form. Cross-check path only; loses accuracy to
/// cancellation for n ≳ 5 once x is large.
std::vector<cplx> cosine_coeffs_direct(const Channel& ch, const SpectralPoint& pt, int n_max);

JBands jmatrix_bands(const Channel& ch, const SpectralPoint& pt, int n_max);

/// Free-particle coefficient tables at one spectral point. Depends on (ℓ, x)
/// only; λ and η are carried for I/O convenience.
class KinematicTable {
 public:
  static constexpr int kDefaultNMax = 200;

  KinematicTable(const Channel& ch, const SpectralPoint& pt, int n_max = kDefaultNMax);

  const Channel& channel() const { return channel_; }
  const SpectralPoint& point() const { return point_; }
  int n_max() const { return n_max_; }

  std::span<const cplx> s() const { return s_; }
  std::span<const cplx> c() const { return c_; }
  std::span<const cplx> p_plus() const { return p_plus_; }
  std::span<const cplx> p_minus() const { return p_minus_; }
  const JBands& bands() const { return bands_; }

  double j_diag(int n) const { return bands_.diag[static_cast<std::size_t>(n)]; }
  /// J_{n,n+1}.
  double j_up(int n) const { return bands_.upper(n); }

  /// (T_n, R_{n+1}) = (p⁻_n / p⁺_n, p⁺_{n+1} / p⁺_n). Requires n < n_max.
  std::pair<cplx, cplx> tn_rn(int n) const;

 private:
  Channel channel_;
  SpectralPoint point_;
  int n_max_;
  std::vector<cplx> s_, c_, p_plus_, p_minus_;
  JBands bands_;
};

enum class FreeWave { sine, cosine };

/// Partial sum Σ_{n<n_terms} g_n φ_n^ℓ(r), g = s or c. r is in the same length
/// unit as 1/λ.
double free_wave_reconstruct(const Channel& ch, const SpectralPoint& pt, double r, int n_terms, FreeWave which);

/// Central-difference residual of the second-order energy equation satisfied by
/// s_n (or c_n) at x:
///   [x d²/dx² + ½ d/dx − ℓ(ℓ+1)/(4x) − x/4 + ½(2n+ℓ+3/2)] g_n.
double energy_ode_residual(const Channel& ch, int n, double x, double h, FreeWave which = FreeWave::sine);

}  // namespace jms
