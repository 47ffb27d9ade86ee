#include "jms/smatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "jms/error.hpp"
#include "jms/linalg.hpp"
#include "jms/parallel.hpp"

namespace jms {

namespace {

constexpr double kPi = std::numbers::pi;

// Maps arg(S)/2 into (−π/2, π/2].
double principal_delta(cplx s) {
  double d = 0.5 * std::arg(s);
  if (d <= -0.5 * kPi) d += kPi;
  return d;
}

void require_scattering(const KinematicTable& t, const char* who) {
  if (!t.point().scattering()) throw DomainError(std::string(who) + ": requires x > 0");
}

cplx checked_div(cplx num, cplx den, const char* where) {
  if (std::abs(den) < 1e-300) {
    throw SingularityError(where, "closed-form S-matrix: denominator vanishes");
  }
  return num / den;
}

std::string show(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// J_{n,m} restricted to the three bands.
double j_element(const KinematicTable& t, int n, int m) {
  if (n == m) return t.j_diag(n);
  if (m == n + 1) return t.j_up(n);
  if (m == n - 1) return t.j_up(m);
  return 0.0;
}

}  // namespace

InteractionMatrix::InteractionMatrix(std::vector<double> diag, std::vector<double> offdiag)
    : diag_(std::move(diag)), off_(std::move(offdiag)) {
  if (diag_.empty()) throw DomainError("InteractionMatrix: rank must be at least 1");
  if (off_.size() + 1 != diag_.size()) {
    throw DomainError("InteractionMatrix: expected " + std::to_string(diag_.size() - 1) +
                      " off-diagonal entries, got " + std::to_string(off_.size()));
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(diag_.begin(), diag_.end(), finite) || !std::all_of(off_.begin(), off_.end(), finite)) {
    throw DomainError("InteractionMatrix: entries must be finite");
  }
}

InteractionMatrix InteractionMatrix::zero(int rank) {
  if (rank < 1) throw DomainError("InteractionMatrix: rank must be at least 1");
  return {std::vector<double>(rank, 0.0), std::vector<double>(rank - 1, 0.0)};
}

double InteractionMatrix::at(int n, int m) const {
  const int N = rank();
  if (n < 0 || m < 0 || n >= N || m >= N) return 0.0;
  if (n == m) return diag(n);
  if (m == n + 1) return off(n);
  if (m == n - 1) return off(m);
  return 0.0;
}

bool InteractionMatrix::is_zero() const {
  auto z = [](double v) { return v == 0.0; };
  return std::all_of(diag_.begin(), diag_.end(), z) && std::all_of(off_.begin(), off_.end(), z);
}

InteractionMatrix InteractionMatrix::padded(int new_rank) const {
  if (new_rank < rank()) throw DomainError("InteractionMatrix::padded: cannot shrink");
  auto d = diag_;
  auto o = off_;
  d.resize(new_rank, 0.0);
  o.resize(new_rank - 1, 0.0);
  return {std::move(d), std::move(o)};
}

ScatteringResult s_closed_form(const KinematicTable& table, const InteractionMatrix& omega) {
  require_scattering(table, "s_closed_form");
  if (omega.rank() > 3) throw DomainError("s_closed_form: closed form exists only for N <= 3");
  if (table.n_max() < 2) throw DomainError("s_closed_form: kinematic table needs n_max >= 2");

  const auto om = omega.padded(3);
  const double o00 = om.diag(0), o11 = om.diag(1), o22 = om.diag(2);
  const double o01 = om.off(0), o12 = om.off(1);

  const auto [t0, r1] = table.tn_rn(0);
  const cplx r2 = table.tn_rn(1).second;
  const double j00 = table.j_diag(0), j11 = table.j_diag(1);
  const double j01 = table.j_up(0), j12 = table.j_up(1);

  const cplx j01_over_r1 = checked_div(j01, r1, "R1");
  const cplx ratio_11 = checked_div(j11 + o11, cplx(j12 + o12), "J12+Omega12");
  const cplx lambda_big =
      checked_div(j01_over_r1 + j11 - o12 * r2 + ratio_11 * (o22 * r2 - j12), cplx(j01 + o01), "J01+Omega01");
  const cplx r1_lambda = r1 * lambda_big;
  const double xi = std::arg(r1_lambda);

  const cplx bracket = lambda_big * (j00 + o00) + (j12 - o22 * r2) * ((j01 + o01) / (j12 + o12));
  const cplx tail = checked_div((1.0 - t0) * (j01 + j00 / r1), r1_lambda, "R1*Lambda");

  ScatteringResult out;
  out.s_value = t0 * std::polar(1.0, -2.0 * xi) + checked_div(tail, bracket, "bracket");
  if (!std::isfinite(out.s_value.real()) || !std::isfinite(out.s_value.imag())) {
    throw SingularityError("result", "closed-form S-matrix is not finite at x = " + std::to_string(table.point().x));
  }
  out.delta = principal_delta(out.s_value);
  out.method = SMethod::closed_form;
  return out;
}

ScatteringResult s_linear_solve(const KinematicTable& table, const InteractionMatrix& omega, Branch branch) {
  require_scattering(table, "s_linear_solve");
  const int N = omega.rank();
  if (table.n_max() < N) throw DomainError("s_linear_solve: kinematic table needs n_max >= N");

  const auto p = branch == Branch::plus ? table.p_plus() : table.p_minus();
  const auto q = branch == Branch::plus ? table.p_minus() : table.p_plus();
  const cplx sign = branch == Branch::plus ? cplx(0.0, 1.0) : cplx(0.0, -1.0);

  DenseMatrix a(N);
  std::vector<cplx> b(N, 0.0);
  b[0] = sign * 2.0 * std::numbers::sqrt2 * table.point().mu / (p[0] - q[0]);
  for (int n = 0; n < N; ++n) {
    for (int m = std::max(0, n - 1); m <= n + 1; ++m) {
      const double coef = j_element(table, n, m) + omega.at(n, m);
      if (m <= N - 2) {
        a(n, m) += coef;
      } else {
        a(n, N - 1) += coef * p[m];
      }
    }
  }
  const auto sol = solve_dense(a, std::move(b));
  const cplx beta = sol[N - 1];

  ScatteringResult out;
  out.method = SMethod::linear_solve;
  out.beta = beta;
  out.s_value = branch == Branch::plus ? beta / std::conj(beta) : std::conj(beta) / beta;
  out.delta = principal_delta(out.s_value);

  // Rescale so that the tail reads exactly e^{±iδ} p±_n.
  const double tail_phase = branch == Branch::plus ? out.delta : -out.delta;
  const cplx scale = std::polar(1.0, tail_phase) / beta;
  for (int n = 0; n + 1 < N; ++n) {
    const cplx ratio = scale * sol[n] / p[n];
    out.interior_rho.push_back(std::abs(ratio));
    out.interior_sigma.push_back(branch == Branch::plus ? std::arg(ratio) : -std::arg(ratio));
  }
  return out;
}

ScatteringResult s_matrix_at(const Channel& ch, const InteractionMatrix& omega, double x) {
  const KinematicTable table(ch, SpectralPoint::at(x), std::max(omega.rank(), 2) + 1);
  return s_linear_solve(table, omega);
}

PhaseCurve phase_shift_curve(const Channel& ch, const InteractionMatrix& omega, std::span<const double> x_grid) {
  for (std::size_t j = 0; j < x_grid.size(); ++j) {
    if (!(x_grid[j] > 0.0)) throw DomainError("phase_shift_curve: grid must be positive");
    if (j > 0 && !(x_grid[j] > x_grid[j - 1])) throw DomainError("phase_shift_curve: grid must be strictly ascending");
  }
  std::vector<ScatteringResult> values(x_grid.size());
  parallel_for(x_grid.size(), [&](std::size_t j) {
    try {
      values[j] = s_matrix_at(ch, omega, x_grid[j]);
    } catch (const Error& e) {
      throw Error("phase_shift_curve: at x = " + show(x_grid[j]) + ": " + e.what());
    }
  });
  PhaseCurve curve;
  curve.points.reserve(x_grid.size());
  double prev = 0.0;
  for (std::size_t j = 0; j < x_grid.size(); ++j) {
    const auto& r = values[j];
    double d = r.delta;
    if (j > 0) {
      d += kPi * std::round((prev - d) / kPi);
      if (std::abs(d - prev) > 0.25 * kPi) {
        curve.warnings.push_back("phase step of " + std::to_string((d - prev) / kPi) + " pi between x = " +
                                 std::to_string(x_grid[j - 1]) + " and x = " + std::to_string(x_grid[j]) +
                                 "; grid may be too coarse");
      }
    }
    curve.points.push_back({x_grid[j], d, r.s_value});
    prev = d;
  }
  return curve;
}

}  // namespace jms
