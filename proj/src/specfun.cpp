#include "jms/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "jms/error.hpp"

namespace jms {

void SeriesControl::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw DomainError("SeriesControl: rel_tol must lie in (0, 1)");
  }
  if (max_terms < 1) throw DomainError("SeriesControl: max_terms must be >= 1");
}

double log_gamma(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError("log_gamma: argument must be a finite positive real, got " + std::to_string(z));
  }
  return std::lgamma(z);
}

std::vector<cplx> laguerre_sequence(double alpha, cplx z, int n_max) {
  if (!(alpha > -1.0)) throw DomainError("laguerre_sequence: alpha must exceed -1");
  if (n_max < 0) throw DomainError("laguerre_sequence: n_max must be non-negative");
  std::vector<cplx> out(static_cast<std::size_t>(n_max) + 1);
  out[0] = 1.0;
  if (n_max == 0) return out;
  out[1] = 1.0 + alpha - z;
  for (int n = 1; n < n_max; ++n) {
    const double dn = n;
    out[n + 1] = ((2.0 * dn + alpha + 1.0 - z) * out[n] - (dn + alpha) * out[n - 1]) / (dn + 1.0);
  }
  return out;
}

namespace {

// Knuth's TwoSum: s + err == a + b exactly.
inline void two_sum(double a, double b, double& s, double& err) {
  s = a + b;
  const double bv = s - a;
  err = (a - (s - bv)) + (b - bv);
}

struct CompensatedSum {
  double re = 0.0, im = 0.0;
  double re_err = 0.0, im_err = 0.0;

  void add(cplx t) {
    double e;
    two_sum(re, t.real(), re, e);
    re_err += e;
    two_sum(im, t.imag(), im, e);
    im_err += e;
  }
  cplx value() const { return {re + re_err, im + im_err}; }
};

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

cplx kummer_series(double a, double c, cplx z, const SeriesControl& ctl) {
  CompensatedSum sum;
  cplx term = 1.0;
  sum.add(term);
  int small_run = 0;
  for (int k = 0; k < ctl.max_terms; ++k) {
    term *= (a + k) / (c + k) * z / static_cast<double>(k + 1);
    sum.add(term);
    if (term == 0.0) return sum.value();  // terminating series
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum.value())) {
      if (++small_run == 3) return sum.value();
    } else {
      small_run = 0;
    }
  }
  throw ConvergenceError("kummer_1f1: series did not converge within " + std::to_string(ctl.max_terms) +
                         " terms");
}

}  // namespace

cplx kummer_1f1(double a, double c, cplx z, const SeriesControl& ctl) {
  ctl.validate();
  if (is_nonpositive_integer(c)) {
    throw SingularityError("c", "kummer_1f1: c is zero or a negative integer");
  }
  if (z == 0.0) return 1.0;
  if (z.real() < 0.0 && !is_nonpositive_integer(a)) {
    return std::exp(z) * kummer_series(c - a, c, -z, ctl);
  }
  return kummer_series(a, c, z, ctl);
}

double spherical_bessel_j(int ell, double x) {
  if (ell < 0) throw DomainError("spherical_bessel_j: ell must be non-negative");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("spherical_bessel_j: x must be positive");

  const double j0 = std::sin(x) / x;
  if (ell == 0) return j0;

  if (x >= ell) {
    double prev = j0;
    double cur = std::sin(x) / (x * x) - std::cos(x) / x;
    for (int l = 1; l < ell; ++l) {
      const double next = (2.0 * l + 1.0) / x * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }

  // Miller: start well above ell, recur downward, normalize against j_0.
  const int start = ell + 30 + static_cast<int>(std::sqrt(40.0 * (ell + 1)));
  double above = 0.0;
  double cur = 1e-300;
  double at_ell = 0.0;
  for (int l = start; l > 0; --l) {
    const double below = (2.0 * l + 1.0) / x * cur - above;
    above = cur;
    cur = below;
    if (l - 1 == ell) at_ell = cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      above *= 1e-250;
      at_ell *= 1e-250;
    }
  }
  // cur and above now hold the unnormalized j_0 and j_1; normalize on the larger.
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  return std::abs(j0) >= std::abs(j1) ? at_ell * (j0 / cur) : at_ell * (j1 / above);
}

}  // namespace jms
