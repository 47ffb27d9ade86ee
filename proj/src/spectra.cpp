#include "jms/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>

#include "jms/error.hpp"
#include "jms/linalg.hpp"
#include "jms/parallel.hpp"

namespace jms {

namespace {

constexpr double kRootResidual = 1e-9;
// |1 - S| below this is rounding noise around S = 1.
constexpr double kPeakFloor = 1e-8;

cplx pole_determinant_complex(const Channel& ch, const InteractionMatrix& omega, double x) {
  if (!(x < 0.0)) throw DomainError("pole_determinant: requires x < 0");
  const int N = omega.rank();
  const KinematicTable table(ch, SpectralPoint::at(x), N + 1);
  const auto p = table.p_plus();
  const cplx tail_ref = p[N - 1];
  if (std::abs(tail_ref) < 1e-300) {
    throw SingularityError("p_plus[N-1]", "pole_determinant: tail reference vanishes");
  }
  DenseMatrix a(N);
  for (int n = 0; n + 1 < N; ++n) {
    for (int m = std::max(0, n - 1); m <= n + 1; ++m) {
      double coef = omega.at(n, m);
      if (m == n) coef += table.j_diag(n);
      else if (m == n + 1) coef += table.j_up(n);
      else coef += table.j_up(m);
      a(n, m) += coef;
    }
  }
  // Last row: J_{N-1,N-1} + J_{N-1,N} R_N cancels to e^{-|x|} relative accuracy, so
  // it is rewritten through the free recursion (or, for N = 1, the Casoratian).
  const int last = N - 1;
  cplx free_tail;
  if (N == 1) {
    free_tail = std::numbers::sqrt2 * table.point().mu / (table.s()[0] * tail_ref);
  } else {
    free_tail = -table.j_up(last - 1) * (p[last - 1] / tail_ref);
    a(last, last - 1) = table.j_up(last - 1) + omega.at(last, last - 1);
  }
  a(last, last) = omega.at(last, last) + free_tail;
  return determinant(a);
}

std::optional<double> try_eval(const std::function<double(double)>& f, double x) {
  try {
    const double v = f(x);
    if (std::isfinite(v)) return v;
  } catch (const Error&) {
  }
  return std::nullopt;
}

struct Refined {
  double x;
  double residual;
  bool finite;
};

// Bisection on a sign change until the bracket cannot shrink further.
Refined bisect(const std::function<double(double)>& f, double a, double fa, double b, double fb) {
  for (int it = 0; it < 400; ++it) {
    const double m = a + 0.5 * (b - a);
    if (m <= a || m >= b) break;
    const auto fm = try_eval(f, m);
    if (!fm) return {m, std::numeric_limits<double>::infinity(), false};
    if (*fm == 0.0) return {m, 0.0, true};
    if ((*fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = *fm;
    } else {
      b = m;
      fb = *fm;
    }
  }
  return std::abs(fa) <= std::abs(fb) ? Refined{a, std::abs(fa), true} : Refined{b, std::abs(fb), true};
}

std::vector<double> uniform_negative_grid(double x_min, int grid_points) {
  if (!(x_min < 0.0)) throw DomainError("scan: x_min must be negative");
  if (grid_points < 2) throw DomainError("scan: grid_points must be >= 2");
  std::vector<double> xs(static_cast<std::size_t>(grid_points));
  const double step = -x_min / grid_points;
  for (int j = 0; j < grid_points; ++j) xs[j] = x_min + j * step;
  return xs;
}

std::vector<std::optional<double>> sample(const std::function<double(double)>& f, const std::vector<double>& xs) {
  std::vector<std::optional<double>> v(xs.size());
  parallel_for(xs.size(), [&](std::size_t j) { v[j] = try_eval(f, xs[j]); });
  return v;
}

struct SignChangeRoots {
  std::vector<Refined> roots;
  std::vector<double> divergences;
};

SignChangeRoots refine_sign_changes(const std::function<double(double)>& f, const std::vector<double>& xs,
                                    const std::vector<std::optional<double>>& v, double residual_tol) {
  SignChangeRoots out;
  for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
    if (!v[j] || !v[j + 1]) continue;
    if (*v[j] == 0.0) {
      out.roots.push_back({xs[j], 0.0, true});
      continue;
    }
    if ((*v[j] > 0.0) == (*v[j + 1] > 0.0) || *v[j + 1] == 0.0) continue;
    const auto r = bisect(f, xs[j], *v[j], xs[j + 1], *v[j + 1]);
    if (r.finite && r.residual <= residual_tol) {
      out.roots.push_back(r);
    } else {
      out.divergences.push_back(r.x);
    }
  }
  return out;
}

// |1 − S| and S on the positive axis, by the closed form where it exists.
ScatteringResult s_for_scan(const Channel& ch, const InteractionMatrix& omega, double x) {
  const KinematicTable table(ch, SpectralPoint::at(x), std::max(omega.rank(), 2) + 1);
  return omega.rank() <= 3 ? s_closed_form(table, omega) : s_linear_solve(table, omega);
}

double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double pole_determinant(const Channel& ch, const InteractionMatrix& omega, double x) {
  return pole_determinant_complex(ch, omega, x).real();
}

BoundStateSearch find_bound_states(const Channel& ch, const InteractionMatrix& omega, double x_min, int grid_points) {
  ch.validate();
  const auto xs = uniform_negative_grid(x_min, grid_points);
  BoundStateSearch out;
  std::size_t non_real = 0;
  const std::function<double(double)> f = [&](double x) { return pole_determinant(ch, omega, x); };
  const auto v = sample(f, xs);
  if (const auto bad = std::count(v.begin(), v.end(), std::nullopt); bad > 0) {
    out.warnings.push_back(std::to_string(bad) + " grid points could not be evaluated");
  }
  for (std::size_t j = 0; j < xs.size(); j += 97) {
    // spot-check that the imaginary part really is rounding noise
    try {
      const cplx d = pole_determinant_complex(ch, omega, xs[j]);
      if (std::abs(d.imag()) > 1e-6 * std::abs(d.real())) ++non_real;
    } catch (const Error&) {
    }
  }
  if (non_real > 0) out.warnings.push_back("pole determinant has a non-negligible imaginary part");

  const auto found = refine_sign_changes(f, xs, v, kRootResidual);
  for (const auto& r : found.roots) out.states.push_back({r.x, ch.energy_over_lambda2(r.x), r.residual});
  out.singular_crossings = found.divergences;

  const double step = -x_min / grid_points;
  for (std::size_t k = 1; k < out.states.size(); ++k) {
    if (out.states[k].x_star - out.states[k - 1].x_star < 2.0 * step) {
      out.warnings.push_back("bound states closer than two grid steps near x = " +
                             std::to_string(out.states[k].x_star) + "; refine the grid");
    }
  }
  return out;
}

ResonanceSearch find_resonances(const Channel& ch, const InteractionMatrix& omega, double x_max, int grid_points) {
  ch.validate();
  if (!(x_max > 0.0)) throw DomainError("find_resonances: x_max must be positive");
  if (grid_points < 3) throw DomainError("find_resonances: grid_points must be >= 3");

  ResonanceSearch out;
  const std::function<double(double)> height = [&](double x) {
    return std::abs(1.0 - s_for_scan(ch, omega, x).s_value);
  };
  const std::function<double(double)> im_s = [&](double x) { return s_for_scan(ch, omega, x).s_value.imag(); };

  const double step = x_max / grid_points;
  std::vector<double> xs(static_cast<std::size_t>(grid_points));
  for (int j = 0; j < grid_points; ++j) xs[j] = (j + 1) * step;
  const auto v = sample(height, xs);
  out.skipped_points = static_cast<std::size_t>(std::count(v.begin(), v.end(), std::nullopt));
  if (out.skipped_points > 0) {
    out.warnings.push_back(std::to_string(out.skipped_points) + " grid points skipped (closed form singular)");
  }

  const auto safe = [&](double x) {
    const auto h = try_eval(height, x);
    return h ? *h : -1.0;
  };

  for (std::size_t j = 1; j + 1 < xs.size(); ++j) {
    if (!v[j - 1] || !v[j] || !v[j + 1]) continue;
    if (!(*v[j] > *v[j - 1] && *v[j] > *v[j + 1])) continue;
    if (*v[j] < kPeakFloor) continue;

    double xs_peak = golden_max(safe, xs[j - 1], xs[j + 1], 1e-10);
    double h_peak = safe(xs_peak);
    if (h_peak <= 2.0 - 1e-7) {
      // |1 - S|^2 = 4 sin^2(delta): an unsaturated maximum is a stationary point of delta,
      // located far more sharply than the flat top golden section sees.
      const std::function<double(double)> dphase = [&](double x) {
        const double hd = 1e-5 * std::max(1.0, x);
        return std::arg(s_for_scan(ch, omega, x + hd).s_value / s_for_scan(ch, omega, x - hd).s_value);
      };
      for (double w = 1e-7; w <= step; w *= 4.0) {
        const auto fa = try_eval(dphase, xs_peak - w), fb = try_eval(dphase, xs_peak + w);
        if (fa && fb && (*fa > 0.0) != (*fb > 0.0)) {
          const auto r = bisect(dphase, xs_peak - w, *fa, xs_peak + w, *fb);
          if (r.finite && safe(r.x) >= h_peak - 1e-12) {
            xs_peak = r.x;
            h_peak = safe(xs_peak);
          }
          break;
        }
      }
    } else {
      // Saturated peak: |1 − S| = 2 exactly where Im S changes sign with S ≈ −1.
      for (double w = 1e-7; w <= step; w *= 4.0) {
        const auto fa = try_eval(im_s, xs_peak - w), fb = try_eval(im_s, xs_peak + w);
        if (fa && fb && (*fa > 0.0) != (*fb > 0.0)) {
          const auto r = bisect(im_s, xs_peak - w, *fa, xs_peak + w, *fb);
          if (r.finite) {
            xs_peak = r.x;
            h_peak = safe(xs_peak);
          }
          break;
        }
      }
    }

    const double half = 0.5 * h_peak;
    const std::function<double(double)> excess = [&](double x) { return height(x) - half; };
    auto edge = [&](int dir) {
      double last_x = xs_peak, last_h = h_peak;
      for (long k = static_cast<long>(j) + (dir < 0 ? -1 : 1); k >= 0 && k < static_cast<long>(xs.size());
           k += dir) {
        if (!v[k]) return last_x;
        if (*v[k] <= half) {
          const auto r = bisect(excess, std::min(last_x, xs[k]), dir < 0 ? *v[k] - half : last_h - half,
                                std::max(last_x, xs[k]), dir < 0 ? last_h - half : *v[k] - half);
          return r.x;
        }
        if (*v[k] > last_h && k != static_cast<long>(j) + dir) return last_x;  // climbed out of the basin
        last_x = xs[k];
        last_h = *v[k];
      }
      return dir < 0 ? 0.0 : x_max;
    };
    const double left = edge(-1), right = edge(+1);

    const double hd = 1e-6 * std::max(1.0, xs_peak);
    double slope = 0.0;
    try {
      const cplx sp = s_for_scan(ch, omega, xs_peak + hd).s_value;
      const cplx sm = s_for_scan(ch, omega, xs_peak - hd).s_value;
      slope = std::arg(sp / sm) / (4.0 * hd) / ch.eta;
    } catch (const Error&) {
    }

    ResonancePeak peak;
    peak.x_star = xs_peak;
    peak.energy_over_lambda2 = ch.energy_over_lambda2(xs_peak);
    peak.height = std::clamp(h_peak, 0.0, 2.0);
    peak.half_width = ch.eta * (right - left);
    peak.phase_slope = slope;
    out.peaks.push_back(peak);
  }
  return out;
}

std::vector<CensusRow> conjecture_census(const Channel& ch, std::span<const InteractionMatrix> samples, double x_min,
                                         int grid_points) {
  std::vector<int> counts(samples.size(), 0);
  parallel_for(samples.size(), [&](std::size_t i) {
    counts[i] = static_cast<int>(find_bound_states(ch, samples[i], x_min, grid_points).states.size());
  });
  std::map<int, CensusRow> rows;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const int N = samples[i].rank();
    auto& row = rows[N];
    row.rank = N;
    ++row.samples;
    row.max_count = std::max(row.max_count, counts[i]);
    if (counts[i] > 2 * N - 1) ++row.violations;
  }
  std::vector<CensusRow> out;
  for (const auto& [rank, row] : rows) out.push_back(row);
  return out;
}

std::vector<InteractionMatrix> random_interactions(int rank, int count, std::uint64_t seed, double bound) {
  if (rank < 1 || count < 0) throw DomainError("random_interactions: rank >= 1 and count >= 0 required");
  std::mt19937_64 gen(seed);
  auto draw = [&] {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return bound * (2.0 * u - 1.0);
  };
  std::vector<InteractionMatrix> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    std::vector<double> d(rank), o(rank - 1);
    for (auto& e : d) e = draw();
    for (auto& e : o) e = draw();
    out.emplace_back(std::move(d), std::move(o));
  }
  return out;
}

std::vector<ClosedFormSingularity> closed_form_singularities(const Channel& ch, const InteractionMatrix& omega,
                                                             double x_min, int grid_points) {
  ch.validate();
  if (omega.rank() > 3) throw DomainError("closed_form_singularities: closed form exists only for N <= 3");
  const auto om = omega.padded(3);
  const cplx unphase = std::pow(cplx(0.0, 1.0), ch.ell);

  const std::function<double(double)> p0 = [&](double x) {
    const KinematicTable t(ch, SpectralPoint::at(x), 1);
    return (unphase * t.p_plus()[0]).real();
  };
  const std::function<double(double)> r1_lambda = [&](double x) {
    const KinematicTable t(ch, SpectralPoint::at(x), 3);
    const cplx r1 = t.tn_rn(0).second, r2 = t.tn_rn(1).second;
    const double j01 = t.j_up(0), j11 = t.j_diag(1), j12 = t.j_up(1);
    const cplx lam = (j01 / r1 + j11 - om.off(1) * r2 +
                      (j11 + om.diag(1)) / (j12 + om.off(1)) * (om.diag(2) * r2 - j12)) /
                     (j01 + om.off(0));
    return (r1 * lam).real();
  };

  const auto xs = uniform_negative_grid(x_min, grid_points);
  std::vector<ClosedFormSingularity> out;
  const auto zeros_p0 = refine_sign_changes(p0, xs, sample(p0, xs), std::numeric_limits<double>::infinity());
  for (const auto& r : zeros_p0.roots) {
    out.push_back({r.x, ch.energy_over_lambda2(r.x), SingularityKind::p_plus_zero});
  }
  const auto zeros_rl = refine_sign_changes(r1_lambda, xs, sample(r1_lambda, xs), kRootResidual);
  for (const auto& r : zeros_rl.roots) {
    out.push_back({r.x, ch.energy_over_lambda2(r.x), SingularityKind::r1_lambda_zero});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  return out;
}

}  // namespace jms
