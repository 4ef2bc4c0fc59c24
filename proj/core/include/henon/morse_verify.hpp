#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "henon/fourier.hpp"
#include "henon/profile.hpp"
#include "henon/radial_solver.hpp"
#include "henon/spectral.hpp"

namespace henon {

/// A discrete bound that the theorems guarantee in the continuum failed at
/// the current resolution.  Refinement, not the theorem, is in question.
class discretization_alarm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadratic form Q_u(w,w) = int |grad w|^2 - int r^alpha f'(u) w^2 over the
/// solution's domain, evaluated per Fourier mode.
double eval_Q(const RadialProfile& u, const Nonlinearity& nonlinearity,
              const AngularFourierFunction& w);

/// Bilinear version; terms with distinct (mode, parity) contribute exact zeros.
double eval_Q_bilinear(const RadialProfile& u, const Nonlinearity& nonlinearity,
                       const AngularFourierFunction& w1, const AngularFourierFunction& w2);

/// Weighted pairing int_Omega |x|^alpha w1 w2 dx.
double weight_inner(double alpha, const AngularFourierFunction& w1,
                    const AngularFourierFunction& w2);

struct QuadFormReport {
  double q_value_reduced = 0.0;   ///< Q_v(psi, psi) on Omega_kappa
  double q_value_weighted = 0.0;  ///< Q_u(phi, phi) on Omega
  double ratio_bound = 0.0;       ///< 2/(alpha+2)
  double slack = 0.0;             ///< q_reduced - ratio_bound * q_weighted
  bool radial = false;
  double equality_rel_error = 0.0;  ///< radial case only
  bool pass = false;
};

/// Comparison of the reduced and weighted quadratic forms: the inequality
/// Q_v(psi,psi) >= (2/(alpha+2)) Q_u(phi,phi) for every psi, an equality for
/// radial psi.  v must be the reduced (alpha = 0) profile on Omega_kappa;
/// u = v o T^{-1} and phi = psi o T^{-1} are built internally.
QuadFormReport check_prop31(const RadialProfile& v_reduced, const AngularFourierFunction& psi,
                            double alpha, const Nonlinearity& nonlinearity,
                            const Tolerances& tol = {});

/// Negative directions of Q_u for even alpha = 2(m-1): the reduced mode-1
/// eigenpair pushed forward to mode m, direct weighted eigenpairs for modes
/// 1..m-1, both parities each, plus the radial negative eigenfunctions.
struct NegativeDirectionSet {
  int m = 0;
  std::vector<AngularFourierFunction> directions;
  std::vector<std::vector<double>> gram_q;
  std::vector<std::vector<double>> gram_weight;
  double reduced_mode1_eigenvalue = 0.0;
  /// |lambda_w(mode m) - m^2 lambda_reduced| / |lambda_w|
  double eigenvalue_scaling_rel_error = 0.0;
  double max_offdiag_rel_q = 0.0;
  double max_offdiag_rel_weight = 0.0;
  std::size_t radial_count = 0;
};

NegativeDirectionSet build_sector_directions(const RadialProfile& u,
                                             const Nonlinearity& nonlinearity,
                                             const MorseOptions& options = {});

struct CheckResult {
  std::string name;
  bool pass = false;
  bool skipped = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string note;
};

struct SolverSummary {
  double parameter = 0.0;
  double residual_sup = 0.0;
  double boundary_value = 0.0;
  int nodal_sets = 0;
};

struct VerdictBundle {
  double alpha = 0.0;
  double p = 0.0;
  int nodal = 0;
  Domain domain = Domain::ball(1.0);
  std::vector<CheckResult> checks;
  MorseReport morse;
  SolverSummary solver;
  bool all_pass = false;
};

struct VerifyOptions {
  ShootingConfig shooting;
  MorseOptions morse;
  std::uint64_t seed = 0x48656e6f6eull;  ///< seed for random test functions
};

/// Full pipeline for one (alpha, p, n, domain): solve, correspondence,
/// Morse bound(s), sector construction for even alpha, non-degeneracy and
/// auxiliary-z checks, aggregated with numerical margins.
VerdictBundle verify_theorems(double alpha, double p, int n, const Domain& domain,
                              const VerifyOptions& options = {});

}  // namespace henon
