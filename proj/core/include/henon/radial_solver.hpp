#pragma once

#include <stdexcept>
#include <vector>

#include "henon/domain.hpp"
#include "henon/profile.hpp"

namespace henon {

/// Shooting search failed (no bracket, bisection budget exhausted, not
/// enough zeros in the integration window).  Divergent IVPs are *not*
/// failures; they are reported through IvpResult.
class solve_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ShootingConfig {
  double ode_tolerance = 1e-10;
  int max_bisections = 200;
  /// Radius below which the analytic origin series replaces integration;
  /// 0 selects min(1e-4 * R, half the first output node).
  double series_cutoff = 0.0;
  double blow_up_bound = 1e8;
  std::size_t output_points = 4000;
};

struct IvpResult {
  RadialProfile profile;
  std::vector<double> zeros;  ///< interior zero radii, ascending
  bool diverged = false;
  double divergence_radius = 0.0;
  double end_value = 0.0;
  double end_slope = 0.0;
};

/// Integrates u'' + u'/r + r^alpha f(u) = 0 from (r0, u0, du0) to end_radius
/// with an adaptive Dormand-Prince 5(4) scheme, dense output on the returned
/// grid and zero-crossing detection.  r0 = 0 requires du0 = 0 and starts on
/// the series u = a - f(a) r^{alpha+2}/(alpha+2)^2 + ... at the cutoff.
/// |u| beyond blow_up_bound stops integration and marks the result diverged.
IvpResult integrate_ivp(const Nonlinearity& nonlinearity, double alpha, double r0,
                        double u0, double du0, double end_radius,
                        const ShootingConfig& config = {});

struct ShootResult {
  RadialProfile profile;
  /// Shooting parameter: center amplitude u(0) for a ball, inner slope
  /// u'(R_in) for an annulus.
  double parameter = 0.0;
  int bisections = 0;
};

/// Radial solution with exactly n nodal sets, positive on the innermost one,
/// found by monotone bisection on the shooting parameter (amplitude for a
/// ball, boundary slope for an annulus).  Requires a bracketable zero-count
/// map; superlinear f on a ball always brackets, otherwise a geometric scan
/// is attempted and "no bracket found" is thrown on failure.
ShootResult shoot_nodal_solution(const Nonlinearity& nonlinearity, double alpha,
                                 const Domain& domain, int n,
                                 const ShootingConfig& config = {});

/// Henon solution on a ball through the Lane-Emden correspondence
/// u(r) = ((alpha+2)/2)^{2/(p-1)} U(r^{(alpha+2)/2}), with U the n-nodal
/// Lane-Emden solution on the same ball.
ShootResult henon_scaling_solve(double alpha, double p, const Domain& ball, int n,
                                const ShootingConfig& config = {});

/// Henon solution on a ball via amplitude rescaling of the single u(0) = 1
/// IVP solution: the n-th zero rho_n is moved onto the boundary with
/// a = (rho_n/R)^{(alpha+2)/(p-1)}, no bisection involved.
ShootResult henon_rescale_trick(double alpha, double p, const Domain& ball, int n,
                                const ShootingConfig& config = {});

struct AuxiliaryZ {
  std::vector<double> values;   ///< z = r u' + 2u/(p-1) on the profile grid
  double residual_sup = 0.0;    ///< sup |z'' + z'/r + p|u|^{p-1} z| (FD)
  double boundary_value = 0.0;  ///< z(R) = R u'(R)
  double max_profile_slope = 0.0;
};

/// Auxiliary function of the Lane-Emden non-degeneracy argument; the profile
/// must solve the alpha = 0 equation.
AuxiliaryZ auxiliary_z(const RadialProfile& lane_emden_profile, double p);

}  // namespace henon
