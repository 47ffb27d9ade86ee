#pragma once

#include <complex>
#include <vector>

namespace jms {

using cplx = std::complex<double>;

/// Stopping rules for power-series evaluation.
struct SeriesControl {
  double rel_tol = 1e-15;
  int max_terms = 10000;

  void validate() const;
};

/// ln Γ(z) for z > 0.
double log_gamma(double z);

/// L_0^α(z) … L_{n_max}^α(z) by the three-term recurrence
/// (n+1) L_{n+1} = (2n+α+1−z) L_n − (n+α) L_{n−1}.
std::vector<cplx> laguerre_sequence(double alpha, cplx z, int n_max);

/// Kummer's confluent hypergeometric function ₁F₁(a; c; z).
///
/// The power series is summed with error-free (TwoSum) compensation and stops
/// once three consecutive terms fall below ctl.rel_tol × |partial sum|. For
/// Re z < 0 and a non-terminating series the Kummer transformation
/// ₁F₁(a; c; z) = e^z ₁F₁(c−a; c; −z) is applied first, so the summed terms
/// never alternate in sign on the negative real axis. Throws SingularityError
/// when c ∈ {0, −1, −2, …} and ConvergenceError when max_terms is exhausted.
cplx kummer_1f1(double a, double c, cplx z, const SeriesControl& ctl = {});

/// Spherical Bessel function j_ℓ(x), x > 0. Miller's downward recurrence
/// normalized to j_0 for x < ℓ, upward recurrence otherwise.
double spherical_bessel_j(int ell, double x);

}  // namespace jms
