#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "henon/domain.hpp"

namespace henon {

/// Nonlinearity f with derivative f'.  The Henon case f(u) = |u|^{p-1} u is
/// the main instantiation; a custom pair may be supplied, in which case the
/// declared properties are validated by sampling (not proved).
class Nonlinearity {
 public:
  using Fn = std::function<double(double)>;

  static Nonlinearity henon(double p);
  static Nonlinearity custom(Fn f, Fn fprime, bool superlinear);
  /// factor * f, keeping f' consistent; superlinearity survives positive scaling.
  static Nonlinearity scaled(const Nonlinearity& base, double factor);

  double f(double u) const { return f_(u); }
  double fprime(double u) const { return fprime_(u); }
  const std::optional<double>& henon_power() const { return henon_power_; }
  bool superlinear() const { return superlinear_; }

 private:
  Nonlinearity(Fn f, Fn fprime, std::optional<double> power, bool superlinear);
  void validate() const;

  Fn f_;
  Fn fprime_;
  std::optional<double> henon_power_;
  bool superlinear_ = false;
};

/// Radial function u(r) with derivative samples, the weight exponent of the
/// equation it belongs to, its nodal-set count and the measured ODE residual.
struct RadialProfile {
  RadialGrid grid;
  std::vector<double> values;
  std::vector<double> derivatives;
  double alpha = 0.0;
  int nodal_sets = 0;
  double residual_sup = std::numeric_limits<double>::quiet_NaN();
  double residual_tol = std::numeric_limits<double>::quiet_NaN();

  double value_at(double r) const;
  double derivative_at(double r) const;
  double max_abs_value() const;
  double max_abs_slope() const;
};

/// Assembles a profile: recounts nodal sets and, when a nonlinearity is
/// given, measures sup_i |u'' + u'/r + r^alpha f(u)| with u'' from
/// fourth-order finite differences of the stored values.
RadialProfile make_radial_profile(RadialGrid grid, std::vector<double> values,
                                  std::vector<double> derivatives, double alpha,
                                  const Nonlinearity* nonlinearity = nullptr,
                                  const Tolerances& tol = {});

/// sup_i |u'' + u'/r + r^alpha f(u)| over nodes with a full FD stencil.
double ode_residual_sup(const RadialGrid& grid, std::span<const double> values,
                        std::span<const double> derivatives, double alpha,
                        const Nonlinearity& nonlinearity);

/// Checks Dirichlet boundary values (outer node always, inner node for an
/// annulus) against tol * max|u|; throws std::invalid_argument on violation.
void check_dirichlet(const RadialProfile& profile, const Domain& domain, double tol);

/// Resamples a profile onto another grid via cubic Hermite interpolation.
RadialProfile resample_profile(const RadialProfile& profile, RadialGrid grid,
                               double alpha, const Nonlinearity* nonlinearity = nullptr,
                               const Tolerances& tol = {});

/// CSV serialization: header "r,u,du", one row per node, 17 significant
/// digits.  A non-empty comment is embedded as a leading "# ..." line so
/// emitted artifacts carry their configuration.
void write_profile_csv(const std::string& path, const RadialProfile& profile,
                       std::string_view comment = {});

struct ProfileSamples {
  RadialGrid grid;
  std::vector<double> values;
  std::vector<double> derivatives;
};

ProfileSamples read_profile_csv(const std::string& path);

}  // namespace henon
