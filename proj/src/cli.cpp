#include "jms/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <system_error>

#include "jms/invariants.hpp"
#include "jms/parallel.hpp"
#include "jms/smatrix.hpp"
#include "jms/spectra.hpp"

namespace jms::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& flag, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw UsageError("--" + flag + ": expected a real number, got '" + text + "'");
  }
  return v;
}

template <class Int>
Int parse_integer(const std::string& flag, const std::string& text) {
  Int v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw UsageError("--" + flag + ": expected an integer, got '" + text + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& flag, const std::string& text) {
  std::vector<double> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_real(flag, trim(rest.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

void apply(RunConfig& cfg, std::string key, const std::string& value) {
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "ell") {
    cfg.ell = parse_integer<int>(key, value);
    if (cfg.ell < 0) throw UsageError("--ell: must be non-negative");
  } else if (key == "lambda") {
    cfg.lambda = parse_real(key, value);
    if (!(cfg.lambda > 0.0)) throw UsageError("--lambda: must be positive");
  } else if (key == "eta") {
    cfg.eta = parse_real(key, value);
    if (cfg.eta != 0.5 && cfg.eta != 1.0) throw UsageError("--eta: must be 0.5 or 1");
  } else if (key == "omega-diag") {
    cfg.omega_diag = parse_list(key, value);
  } else if (key == "omega-off") {
    cfg.omega_off = value.empty() ? std::vector<double>{} : parse_list(key, value);
  } else if (key == "emin") {
    cfg.e_min = parse_real(key, value);
  } else if (key == "emax") {
    cfg.e_max = parse_real(key, value);
  } else if (key == "points") {
    cfg.points = parse_integer<int>(key, value);
    if (*cfg.points < 1) throw UsageError("--points: must be positive");
  } else if (key == "out") {
    cfg.output_path = value;
  } else if (key == "seed") {
    cfg.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "samples") {
    cfg.samples = parse_integer<int>(key, value);
    if (cfg.samples < 1) throw UsageError("--samples: must be positive");
  } else if (key == "max-rank") {
    cfg.max_rank = parse_integer<int>(key, value);
    if (cfg.max_rank < 1) throw UsageError("--max-rank: must be positive");
  } else if (key == "method") {
    if (value != "linear" && value != "closed") throw UsageError("--method: expected 'linear' or 'closed'");
    cfg.method = value;
  } else {
    throw UsageError("unknown option --" + key);
  }
}

void read_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    apply(cfg, trim(std::string_view(body).substr(0, eq)), trim(std::string_view(body).substr(eq + 1)));
  }
}

InteractionMatrix interaction(const RunConfig& cfg) {
  if (cfg.omega_diag.empty()) {
    if (!cfg.omega_off.empty()) throw UsageError("--omega-off given without --omega-diag");
    return InteractionMatrix::zero(1);
  }
  if (cfg.omega_off.size() + 1 != cfg.omega_diag.size()) {
    throw UsageError("dimension mismatch: --omega-diag has " + std::to_string(cfg.omega_diag.size()) +
                     " entries so --omega-off needs " + std::to_string(cfg.omega_diag.size() - 1) + ", got " +
                     std::to_string(cfg.omega_off.size()));
  }
  return {cfg.omega_diag, cfg.omega_off};
}

// Raw energy E to spectral x.
double to_x(const RunConfig& cfg, double e) { return e / (cfg.eta * (cfg.lambda * cfg.lambda)); }

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

std::string describe_point(const Channel& ch, double x) {
  return "x = " + format_double(x) + ", E/lambda^2 = " + format_double(ch.energy_over_lambda2(x));
}

std::vector<double> energy_grid(const RunConfig& cfg, double lo_default, double hi_default, int n_default) {
  const double lo = cfg.e_min.value_or(lo_default), hi = cfg.e_max.value_or(hi_default);
  const int n = cfg.points.value_or(n_default);
  if (!(lo < hi)) throw UsageError("--emin must be less than --emax");
  if (!(lo > 0.0)) throw UsageError("--emin: sweep energies must be positive");
  std::vector<double> xs(static_cast<std::size_t>(n));
  const double step = n > 1 ? (hi - lo) / (n - 1) : 0.0;
  for (int j = 0; j < n; ++j) xs[j] = to_x(cfg, j + 1 == n && n > 1 ? hi : lo + j * step);
  return xs;
}

void row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << format_double(v);
    first = false;
  }
  out << '\n';
}

constexpr const char* kSweepHeader = "E_over_lambda2,x,re_S,im_S,delta_over_pi,abs_one_minus_S\n";

void run_phase_shift(const RunConfig& cfg, const Channel& ch, std::ostream& out, std::ostream& log) {
  const auto omega = interaction(cfg);
  const auto xs = energy_grid(cfg, 0.01, 10.0, 1000);
  PhaseCurve curve;
  try {
    curve = phase_shift_curve(ch, omega, xs);
  } catch (const Error& e) {
    throw NumericalFailure(e.what());
  }
  for (const auto& w : curve.warnings) log << "warning: " << w << '\n';
  out << kSweepHeader;
  for (const auto& p : curve.points) {
    row(out, {ch.energy_over_lambda2(p.x), p.x, p.s_value.real(), p.s_value.imag(), p.delta / std::numbers::pi,
              std::abs(1.0 - p.s_value)});
  }
}

void run_smatrix(const RunConfig& cfg, const Channel& ch, std::ostream& out, std::ostream& log) {
  const auto omega = interaction(cfg);
  const bool closed = cfg.method == "closed";
  if (closed && omega.rank() > 3) throw UsageError("--method closed: requires at most 3 diagonal entries");
  const auto xs = energy_grid(cfg, 0.01, 10.0, 1000);
  std::vector<std::optional<ScatteringResult>> values(xs.size());
  std::vector<std::string> errors(xs.size());
  parallel_for(xs.size(), [&](std::size_t j) {
    try {
      const KinematicTable t(ch, SpectralPoint::at(xs[j]), std::max(omega.rank(), 2) + 1);
      values[j] = closed ? s_closed_form(t, omega) : s_linear_solve(t, omega);
    } catch (const SingularityError& e) {
      errors[j] = e.what();
    } catch (const Error& e) {
      throw NumericalFailure(describe_point(ch, xs[j]) + ": " + e.what());
    }
  });
  out << kSweepHeader;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (!values[j]) {
      if (!closed) throw NumericalFailure(describe_point(ch, xs[j]) + ": " + errors[j]);
      log << "skipped " << describe_point(ch, xs[j]) << ": " << errors[j] << '\n';
      continue;
    }
    const cplx s = values[j]->s_value;
    row(out, {ch.energy_over_lambda2(xs[j]), xs[j], s.real(), s.imag(), values[j]->delta / std::numbers::pi,
              std::abs(1.0 - s)});
  }
}

void run_resonances(const RunConfig& cfg, const Channel& ch, std::ostream& out, std::ostream& log) {
  const auto omega = interaction(cfg);
  const double x_max = to_x(cfg, cfg.e_max.value_or(ch.energy_over_lambda2(SearchDefaults::x_max) *
                                                    cfg.lambda * cfg.lambda));
  if (!(x_max > 0.0)) throw UsageError("--emax: must be positive");
  ResonanceSearch found;
  try {
    found = find_resonances(ch, omega, x_max, cfg.points.value_or(SearchDefaults::grid_points));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  } catch (const Error& e) {
    throw NumericalFailure(e.what());
  }
  for (const auto& w : found.warnings) log << "warning: " << w << '\n';
  out << "E_over_lambda2,height,half_width\n";
  for (const auto& p : found.peaks) {
    if (!p.resonant()) {
      log << "note: peak at E/lambda^2 = " << format_double(p.energy_over_lambda2)
          << " has no rising phase (not a resonance); omitted\n";
      continue;
    }
    row(out, {p.energy_over_lambda2, p.height, p.half_width});
  }
}

double negative_x_min(const RunConfig& cfg, const Channel& ch) {
  const double x_min = to_x(cfg, cfg.e_min.value_or(ch.energy_over_lambda2(SearchDefaults::x_min) * cfg.lambda *
                                                    cfg.lambda));
  if (!(x_min < 0.0)) throw UsageError("--emin: must be negative for bound-state searches");
  return x_min;
}

void run_bound_states(const RunConfig& cfg, const Channel& ch, std::ostream& out, std::ostream& log) {
  const auto omega = interaction(cfg);
  const double x_min = negative_x_min(cfg, ch);
  BoundStateSearch found;
  try {
    found = find_bound_states(ch, omega, x_min, cfg.points.value_or(SearchDefaults::grid_points));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  } catch (const Error& e) {
    throw NumericalFailure(e.what());
  }
  for (const auto& w : found.warnings) log << "warning: " << w << '\n';
  for (double x : found.singular_crossings) {
    log << "note: sign change at " << describe_point(ch, x) << " is a divergence, not a root\n";
  }
  out << "E_over_lambda2,residual\n";
  for (const auto& b : found.states) row(out, {b.energy_over_lambda2, b.residual});
}

void run_census(const RunConfig& cfg, const Channel& ch, std::ostream& out, std::ostream& log) {
  const double x_min = negative_x_min(cfg, ch);
  std::vector<InteractionMatrix> samples;
  for (int N = 1; N <= cfg.max_rank; ++N) {
    auto batch = random_interactions(N, cfg.samples, cfg.seed + static_cast<std::uint64_t>(N));
    std::move(batch.begin(), batch.end(), std::back_inserter(samples));
  }
  std::vector<CensusRow> rows;
  try {
    rows = conjecture_census(ch, samples, x_min, cfg.points.value_or(SearchDefaults::grid_points));
  } catch (const Error& e) {
    throw NumericalFailure(e.what());
  }
  out << "N,samples,max_count,bound_2N_minus_1_violations\n";
  for (const auto& r : rows) {
    out << r.rank << ',' << r.samples << ',' << r.max_count << ',' << r.violations << '\n';
    if (r.violations > 0) log << "census: " << r.violations << " samples exceed 2N-1 at N = " << r.rank << '\n';
  }
}

bool run_validate(const RunConfig& cfg, std::ostream& out) {
  InvariantOptions opts;
  opts.seed = cfg.seed;
  bool ok = true;
  for (const auto& c : run_invariant_suite(opts)) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << "  worst=" << format_double(c.worst)
        << " tol=" << format_double(c.tolerance);
    if (!c.passed && !c.detail.empty()) out << "  (" << c.detail << ")";
    out << '\n';
    ok = ok && c.passed;
  }
  return ok;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"phase-shift", "smatrix", "resonances",
                                              "bound-states", "census", "validate"};
  return names;
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string usage() {
  return "usage: jms <command> [options]\n"
         "commands: phase-shift smatrix resonances bound-states census validate\n"
         "options:\n"
         "  --ell L              partial wave (default 0)\n"
         "  --lambda V           basis scale (default 1)\n"
         "  --eta V              E = eta*lambda^2*x, 0.5 or 1 (default 0.5)\n"
         "  --omega-diag a,b,..  interaction diagonal\n"
         "  --omega-off d,..     interaction off-diagonal (one fewer entry)\n"
         "  --emin E --emax E    energy window (absolute E)\n"
         "  --points N           grid points\n"
         "  --out PATH           CSV destination (default stdout)\n"
         "  --seed N             census / validate seed\n"
         "  --samples N          census samples per rank (default 500)\n"
         "  --max-rank N         census ranks 1..N (default 3)\n"
         "  --method M           smatrix: linear | closed\n"
         "  --config PATH        key = value file; flags override it\n";
}

RunConfig parse_config(const std::vector<std::string>& args) {
  if (args.empty()) throw UsageError("missing command");
  RunConfig cfg;
  cfg.command = args[0];
  const auto& names = commands();
  if (std::find(names.begin(), names.end(), cfg.command) == names.end()) {
    throw UsageError("unknown command '" + cfg.command + "'");
  }
  std::vector<std::pair<std::string, std::string>> flags;
  std::optional<std::string> config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0 || a.size() == 2) throw UsageError("unexpected argument '" + a + "'");
    std::string key = a.substr(2), value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key.erase(eq);
    } else {
      // The next token is always the value, so negative numbers need no quoting.
      if (i + 1 >= args.size()) throw UsageError("--" + key + ": missing value");
      value = args[++i];
    }
    if (key == "config") {
      config_path = value;
    } else {
      flags.emplace_back(key, value);
    }
  }
  if (config_path) read_config_file(cfg, *config_path);
  for (const auto& [k, v] : flags) apply(cfg, k, v);
  if (cfg.command != "census" && cfg.command != "validate") interaction(cfg);
  return cfg;
}

int run_and_emit(const RunConfig& cfg, std::ostream& log) {
  std::ostringstream out;
  try {
    const Channel ch{cfg.ell, cfg.lambda, cfg.eta};
    bool ok = true;
    if (cfg.command == "phase-shift") {
      run_phase_shift(cfg, ch, out, log);
    } else if (cfg.command == "smatrix") {
      run_smatrix(cfg, ch, out, log);
    } else if (cfg.command == "resonances") {
      run_resonances(cfg, ch, out, log);
    } else if (cfg.command == "bound-states") {
      run_bound_states(cfg, ch, out, log);
    } else if (cfg.command == "census") {
      run_census(cfg, ch, out, log);
    } else if (cfg.command == "validate") {
      ok = run_validate(cfg, out);
    } else {
      throw UsageError("unknown command '" + cfg.command + "'");
    }

    if (cfg.output_path.empty()) {
      std::cout << out.str() << std::flush;
    } else {
      std::ofstream file(cfg.output_path, std::ios::binary);
      file << out.str();
      file.close();
      if (!file) {
        log << "error: cannot write '" << cfg.output_path << "'\n";
        return 1;
      }
    }
    return ok ? 0 : 2;
  } catch (const UsageError& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalFailure& e) {
    log << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    log << "numerical failure: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace jms::cli
