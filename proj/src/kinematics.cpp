#include "jms/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "jms/error.hpp"

namespace jms {

namespace {

constexpr double kExpGuard = 700.0;

// i^k for any integer k.
cplx i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// unit * r with unit ∈ {±1, ±i}, computed without rounding.
cplx rotate(cplx unit, double r) { return {unit.real() * r, unit.imag() * r}; }

void check_n_max(int n_max) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
}

void check_nonzero_x(const SpectralPoint& pt, const char* who) {
  if (pt.x == 0.0) {
    throw SingularityError("x", std::string(who) + ": coefficients are singular at x = 0");
  }
}

void check_exp_guard(double x, const char* who) {
  if (std::abs(0.5 * x) > kExpGuard) {
    throw OverflowError(std::string(who) + ": |x|/2 exceeds the exponential range at x = " + std::to_string(x));
  }
}

double log_normalization(int ell, int n) {
  return 0.5 * (std::numbers::ln2 + log_gamma(n + 1.0) - log_gamma(n + ell + 1.5));
}

// Recursion (3a) solved forward for g_{n+1}, n >= 1.
void recur_forward(const JBands& b, std::vector<cplx>& g, int from, int n_max) {
  for (int n = from; n < n_max; ++n) {
    const auto k = static_cast<std::size_t>(n);
    g[k + 1] = -(b.diag[k] * g[k] + b.sub[k] * g[k - 1]) / b.upper(n);
  }
}

// Real factor of c_n after removing i^{-ℓ}; x may be of either sign.
double cosine_real(int ell, double x, int n) {
  const double log_pref = log_gamma(ell + 0.5) + log_normalization(ell, n) - 0.5 * std::log(std::numbers::pi) -
                          0.5 * x - 0.5 * ell * std::log(std::abs(x));
  const cplx f = kummer_1f1(-n - ell - 0.5, 0.5 - ell, cplx(x, 0.0));
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double v = sign * std::exp(log_pref) * f.real();
  if (!std::isfinite(v)) {
    throw OverflowError("cosine_coeffs: c_" + std::to_string(n) + " overflows at x = " + std::to_string(x));
  }
  return v;
}

}  // namespace

void Channel::validate() const {
  if (ell < 0) throw DomainError("Channel: ell must be non-negative");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("Channel: lambda must be positive");
  if (eta != 0.5 && eta != 1.0) throw DomainError("Channel: eta must be 1/2 or 1");
}

SpectralPoint SpectralPoint::at(double x) {
  if (!std::isfinite(x)) throw DomainError("SpectralPoint: x must be finite");
  SpectralPoint pt;
  pt.x = x;
  pt.mu = x >= 0.0 ? cplx(std::sqrt(x), 0.0) : cplx(0.0, std::sqrt(-x));
  return pt;
}

double normalization(int ell, int n) {
  if (ell < 0 || n < 0) throw DomainError("normalization: ell and n must be non-negative");
  return std::exp(log_normalization(ell, n));
}

std::vector<cplx> sine_coeffs(const Channel& ch, const SpectralPoint& pt, int n_max) {
  ch.validate();
  check_n_max(n_max);
  check_nonzero_x(pt, "sine_coeffs");
  check_exp_guard(pt.x, "sine_coeffs");

  const int ell = ch.ell;
  const double ax = std::abs(pt.x);
  const auto lag = laguerre_sequence(ell + 0.5, cplx(pt.x, 0.0), n_max);
  const double log_common = 0.5 * std::log(0.5 * std::numbers::pi) + 0.5 * (ell + 1) * std::log(ax) - 0.5 * pt.x;
  const cplx unit = pt.x > 0.0 ? cplx(1.0, 0.0) : i_pow(ell + 1);

  std::vector<cplx> s(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double v = sign * std::exp(log_common + log_normalization(ell, n)) * lag[n].real();
    s[n] = rotate(unit, v);
  }
  return s;
}

std::vector<cplx> sine_coeffs_recursive(const Channel& ch, const SpectralPoint& pt, int n_max) {
  auto s = sine_coeffs(ch, pt, 0);
  if (s[0] == 0.0) throw SingularityError("s_0", "sine_coeffs_recursive: seed vanishes");
  s.resize(static_cast<std::size_t>(n_max) + 1);
  if (n_max == 0) return s;
  const auto b = jmatrix_bands(ch, pt, n_max);
  s[1] = -b.diag[0] * s[0] / b.upper(0);
  recur_forward(b, s, 1, n_max);
  return s;
}

std::vector<cplx> cosine_coeffs(const Channel& ch, const SpectralPoint& pt, int n_max) {
  ch.validate();
  check_n_max(n_max);
  check_nonzero_x(pt, "cosine_coeffs");
  check_exp_guard(pt.x, "cosine_coeffs");

  const cplx unit = pt.x > 0.0 ? cplx(1.0, 0.0) : i_pow(-ch.ell);
  std::vector<cplx> c(static_cast<std::size_t>(n_max) + 1);
  c[0] = rotate(unit, cosine_real(ch.ell, pt.x, 0));
  if (n_max == 0) return c;
  c[1] = rotate(unit, cosine_real(ch.ell, pt.x, 1));
  recur_forward(jmatrix_bands(ch, pt, n_max), c, 1, n_max);
  return c;
}

std::vector<cplx> cosine_coeffs_direct(const Channel& ch, const SpectralPoint& pt, int n_max) {
  ch.validate();
  check_n_max(n_max);
  check_nonzero_x(pt, "cosine_coeffs_direct");
  check_exp_guard(pt.x, "cosine_coeffs_direct");
  const cplx unit = pt.x > 0.0 ? cplx(1.0, 0.0) : i_pow(-ch.ell);
  std::vector<cplx> c(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) c[n] = rotate(unit, cosine_real(ch.ell, pt.x, n));
  return c;
}

JBands jmatrix_bands(const Channel& ch, const SpectralPoint& pt, int n_max) {
  check_n_max(n_max);
  // One extra entry so that upper(n_max) = J_{n_max, n_max+1} exists.
  const auto size = static_cast<std::size_t>(n_max) + 2;
  JBands b;
  b.diag.resize(size);
  b.sub.resize(size);
  for (std::size_t n = 0; n < size; ++n) {
    const double dn = static_cast<double>(n);
    b.diag[n] = (2.0 * dn + ch.ell + 1.5) - pt.x;
    b.sub[n] = std::sqrt(dn * (dn + ch.ell + 0.5));
  }
  return b;
}

KinematicTable::KinematicTable(const Channel& ch, const SpectralPoint& pt, int n_max)
    : channel_(ch), point_(pt), n_max_(n_max) {
  ch.validate();
  if (n_max < 1) throw DomainError("KinematicTable: n_max must be >= 1");
  s_ = sine_coeffs(ch, pt, n_max);
  c_ = cosine_coeffs(ch, pt, n_max);
  bands_ = jmatrix_bands(ch, pt, n_max);
  p_plus_.resize(s_.size());
  p_minus_.resize(s_.size());
  for (std::size_t n = 0; n < s_.size(); ++n) {
    // c ± i s, written out so that real s and c give exact conjugates.
    const cplx cn = c_[n], sn = s_[n];
    p_plus_[n] = {cn.real() - sn.imag(), cn.imag() + sn.real()};
    p_minus_[n] = {cn.real() + sn.imag(), cn.imag() - sn.real()};
  }
}

std::pair<cplx, cplx> KinematicTable::tn_rn(int n) const {
  if (n < 0 || n >= n_max_) throw DomainError("tn_rn: n out of range");
  const cplx pp = p_plus_[n];
  if (std::abs(pp) < 1e-300) {
    throw SingularityError("p_plus[" + std::to_string(n) + "]", "tn_rn: p+ vanishes at x = " + std::to_string(point_.x));
  }
  return {p_minus_[n] / pp, p_plus_[n + 1] / pp};
}

double free_wave_reconstruct(const Channel& ch, const SpectralPoint& pt, double r, int n_terms, FreeWave which) {
  if (!(pt.x > 0.0)) throw DomainError("free_wave_reconstruct: requires x > 0");
  if (!(r > 0.0)) throw DomainError("free_wave_reconstruct: requires r > 0");
  if (n_terms < 1) throw DomainError("free_wave_reconstruct: n_terms must be >= 1");

  const int n_max = n_terms - 1;
  const auto g = which == FreeWave::sine ? sine_coeffs(ch, pt, n_max) : cosine_coeffs(ch, pt, n_max);
  const double lr = ch.lambda * r;
  const double y = lr * lr;
  const double log_pref = (ch.ell + 1) * std::log(lr) - 0.5 * y;
  if (log_pref < -745.0) return 0.0;  // every basis function underflows here
  const double pref = std::exp(log_pref);
  const auto lag = laguerre_sequence(ch.ell + 0.5, cplx(y, 0.0), n_max);

  double sum = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    sum += g[n].real() * normalization(ch.ell, n) * lag[n].real();
  }
  return pref * sum;
}

double energy_ode_residual(const Channel& ch, int n, double x, double h, FreeWave which) {
  if (!(h > 0.0 && x > h)) throw DomainError("energy_ode_residual: requires x > h > 0");
  if (n < 0) throw DomainError("energy_ode_residual: n must be non-negative");
  auto value = [&](double at) {
    const auto pt = SpectralPoint::at(at);
    const auto g = which == FreeWave::sine ? sine_coeffs(ch, pt, n) : cosine_coeffs_direct(ch, pt, n);
    return g[static_cast<std::size_t>(n)].real();
  };
  const double gm = value(x - h), g0 = value(x), gp = value(x + h);
  const double d2 = (gp - 2.0 * g0 + gm) / (h * h);
  const double d1 = (gp - gm) / (2.0 * h);
  const double ell = ch.ell;
  return x * d2 + 0.5 * d1 + (-ell * (ell + 1.0) / (4.0 * x) - 0.25 * x + 0.5 * (2.0 * n + ell + 1.5)) * g0;
}

}  // namespace jms
