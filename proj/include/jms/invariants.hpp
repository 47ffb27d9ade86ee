#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jms {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      ///< largest observed violation measure
  double tolerance = 0.0;
  std::string detail;
};

struct InvariantOptions {
  std::uint64_t seed = 20240601;
  int samples = 200;
};

/// Kinematics and S-matrix invariants on randomized inputs: recursion and
/// initial-relation residuals, the Casoratian identity, conjugate symmetry and
/// λ-independence of the tables, unitarity, zero interaction, branch symmetry,
/// restriction chain and closed form vs. linear solve.
std::vector<CheckResult> run_invariant_suite(const InvariantOptions& opts = {});

/// Observed convergence order of the energy equation finite-difference residual
/// at (ℓ, n, x) from steps h and h/2.
double energy_ode_order(int ell, int n, double x, double h);

}  // namespace jms
