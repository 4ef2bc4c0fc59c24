#include "henon/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "henon/numerics.hpp"

namespace henon {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct State {
  double u = 0.0;
  double w = 0.0;  // u'
};

// Dense-output coefficients of one accepted step (per component).
struct DenseSegment {
  double r0 = 0.0, r1 = 0.0;
  std::array<double, 5> cu{}, cw{};

  double eval(const std::array<double, 5>& c, double r) const {
    const double theta = (r - r0) / (r1 - r0);
    const double theta1 = 1.0 - theta;
    return c[0] + theta * (c[1] + theta1 * (c[2] + theta * (c[3] + theta1 * c[4])));
  }
  double u(double r) const { return eval(cu, r); }
  double w(double r) const { return eval(cw, r); }
};

// Piecewise dense representation of an IVP solution, extended below the
// series cutoff by the origin expansion.
struct DenseSolution {
  std::vector<DenseSegment> segments;
  // origin series u = a - c1 r^(alpha+2) + c2 r^(2 alpha + 4)
  bool has_series = false;
  double a = 0.0, c1 = 0.0, c2 = 0.0, alpha = 0.0, cutoff = 0.0;

  double series_u(double r) const {
    return a - c1 * std::pow(r, alpha + 2.0) + c2 * std::pow(r, 2.0 * alpha + 4.0);
  }
  double series_w(double r) const {
    return -c1 * (alpha + 2.0) * std::pow(r, alpha + 1.0) +
           c2 * (2.0 * alpha + 4.0) * std::pow(r, 2.0 * alpha + 3.0);
  }

  const DenseSegment& segment_at(double r) const {
    auto it = std::lower_bound(segments.begin(), segments.end(), r,
                               [](const DenseSegment& seg, double x) { return seg.r1 < x; });
    if (it == segments.end()) --it;
    return *it;
  }
  double u(double r) const {
    if (has_series && r <= cutoff) return series_u(r);
    return segment_at(r).u(r);
  }
  double w(double r) const {
    if (has_series && r <= cutoff) return series_w(r);
    return segment_at(r).w(r);
  }
};

struct IntegrationOutcome {
  double end_radius = 0.0;
  State end_state;
  std::vector<double> zeros;
  bool diverged = false;
  double divergence_radius = 0.0;
};

double default_cutoff(double end_radius, const ShootingConfig& config) {
  if (config.series_cutoff > 0.0) return config.series_cutoff;
  const double first_node =
      end_radius / (2.0 * static_cast<double>(std::max<std::size_t>(config.output_points, 2)) - 1.0);
  return std::min(1e-4 * end_radius, 0.5 * first_node);
}

// Adaptive DP5(4) integration of u'' + u'/r + r^alpha f(u) = 0 on
// [r_start, r_end], r_start > 0.  Zero crossings of u are located on the
// dense output.  Segments are collected only when keep_dense is set.
IntegrationOutcome integrate_segments(const Nonlinearity& f, double alpha, double r_start,
                                      State y, double r_end, double tol, double blow_up,
                                      bool keep_dense, DenseSolution* dense) {
  IntegrationOutcome out;
  auto rhs = [&](double r, const State& s) -> State {
    return {s.w, -s.w / r - std::pow(r, alpha) * f.f(s.u)};
  };

  double r = r_start;
  State k1 = rhs(r, y);
  double h = std::min((r_end - r_start) * 1e-3, std::max(1e-6 * (r_end - r_start), r_start * 0.1));
  h = std::max(h, 1e-300);
  const double h_min = (r_end - r_start) * 1e-15;
  int consecutive_rejects = 0;

  while (r < r_end) {
    bool last = false;
    if (r + h >= r_end) {
      h = r_end - r;
      last = true;
    }

    State k2, k3, k4, k5, k6, k7;
    {
      State t;
      t.u = y.u + h * a21 * k1.u;
      t.w = y.w + h * a21 * k1.w;
      k2 = rhs(r + c2 * h, t);
      t.u = y.u + h * (a31 * k1.u + a32 * k2.u);
      t.w = y.w + h * (a31 * k1.w + a32 * k2.w);
      k3 = rhs(r + c3 * h, t);
      t.u = y.u + h * (a41 * k1.u + a42 * k2.u + a43 * k3.u);
      t.w = y.w + h * (a41 * k1.w + a42 * k2.w + a43 * k3.w);
      k4 = rhs(r + c4 * h, t);
      t.u = y.u + h * (a51 * k1.u + a52 * k2.u + a53 * k3.u + a54 * k4.u);
      t.w = y.w + h * (a51 * k1.w + a52 * k2.w + a53 * k3.w + a54 * k4.w);
      k5 = rhs(r + c5 * h, t);
      t.u = y.u + h * (a61 * k1.u + a62 * k2.u + a63 * k3.u + a64 * k4.u + a65 * k5.u);
      t.w = y.w + h * (a61 * k1.w + a62 * k2.w + a63 * k3.w + a64 * k4.w + a65 * k5.w);
      k6 = rhs(r + h, t);
    }
    State y1;
    y1.u = y.u + h * (b1 * k1.u + b3 * k3.u + b4 * k4.u + b5 * k5.u + b6 * k6.u);
    y1.w = y.w + h * (b1 * k1.w + b3 * k3.w + b4 * k4.w + b5 * k5.w + b6 * k6.w);
    k7 = rhs(r + h, y1);

    const double err_u = h * (e1 * k1.u + e3 * k3.u + e4 * k4.u + e5 * k5.u + e6 * k6.u + e7 * k7.u);
    const double err_w = h * (e1 * k1.w + e3 * k3.w + e4 * k4.w + e5 * k5.w + e6 * k6.w + e7 * k7.w);
    const double sc_u = tol * (1.0 + std::max(std::abs(y.u), std::abs(y1.u)));
    const double sc_w = tol * (1.0 + std::max(std::abs(y.w), std::abs(y1.w)));
    const double err = std::sqrt(0.5 * ((err_u / sc_u) * (err_u / sc_u) +
                                        (err_w / sc_w) * (err_w / sc_w)));

    if (!std::isfinite(err) || err > 1.0) {
      const double shrink = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
      h *= shrink;
      if (h < h_min && ++consecutive_rejects > 50) {
        out.diverged = true;
        out.divergence_radius = r;
        out.end_radius = r;
        out.end_state = y;
        return out;
      }
      continue;
    }
    consecutive_rejects = 0;

    DenseSegment seg;
    seg.r0 = r;
    seg.r1 = r + h;
    seg.cu = {y.u, y1.u - y.u, h * k1.u - (y1.u - y.u),
              (y1.u - y.u) - h * k7.u - (h * k1.u - (y1.u - y.u)),
              h * (d1 * k1.u + d3 * k3.u + d4 * k4.u + d5 * k5.u + d6 * k6.u + d7 * k7.u)};
    seg.cw = {y.w, y1.w - y.w, h * k1.w - (y1.w - y.w),
              (y1.w - y.w) - h * k7.w - (h * k1.w - (y1.w - y.w)),
              h * (d1 * k1.w + d3 * k3.w + d4 * k4.w + d5 * k5.w + d6 * k6.w + d7 * k7.w)};

    // zero crossing of u inside the step
    if (y.u * y1.u < 0.0 || (y1.u == 0.0 && y.u != 0.0)) {
      double lo = seg.r0, hi = seg.r1;
      double flo = y.u;
      for (int it = 0; it < 80 && hi - lo > 1e-16 * seg.r1; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = seg.u(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.zeros.push_back(0.5 * (lo + hi));
    }

    if (keep_dense && dense != nullptr) dense->segments.push_back(seg);

    r += h;
    y = y1;
    k1 = k7;

    if (!std::isfinite(y.u) || std::abs(y.u) > blow_up) {
      out.diverged = true;
      out.divergence_radius = r;
      break;
    }
    if (last && !out.diverged) break;
    h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
  }

  out.end_radius = r;
  out.end_state = y;
  return out;
}

struct IvpRun {
  DenseSolution dense;
  IntegrationOutcome outcome;
};

// Full IVP run from r0 (possibly 0, via the origin series) with dense output.
IvpRun run_ivp(const Nonlinearity& f, double alpha, double r0, double u0, double du0,
               double end_radius, const ShootingConfig& config, bool keep_dense) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("integrate_ivp: alpha must be >= 0");
  if (!(end_radius > r0)) throw std::invalid_argument("integrate_ivp: end radius must exceed r0");
  IvpRun run;
  double r_start = r0;
  State y{u0, du0};
  if (r0 == 0.0) {
    if (du0 != 0.0) throw std::invalid_argument("integrate_ivp: r0 = 0 requires u0' = 0");
    const double cutoff = default_cutoff(end_radius, config);
    run.dense.has_series = true;
    run.dense.alpha = alpha;
    run.dense.a = u0;
    run.dense.cutoff = cutoff;
    const double ap2 = alpha + 2.0;
    run.dense.c1 = f.f(u0) / (ap2 * ap2);
    run.dense.c2 = f.f(u0) * f.fprime(u0) / (ap2 * ap2 * (2.0 * ap2) * (2.0 * ap2));
    r_start = cutoff;
    y.u = run.dense.series_u(cutoff);
    y.w = run.dense.series_w(cutoff);
  } else if (r0 < 0.0) {
    throw std::invalid_argument("integrate_ivp: r0 must be >= 0");
  }
  run.outcome = integrate_segments(f, alpha, r_start, y, end_radius, config.ode_tolerance,
                                   config.blow_up_bound, keep_dense, &run.dense);
  return run;
}

RadialProfile profile_from_dense(const IvpRun& run, const RadialGrid& grid, double alpha,
                                 const Nonlinearity* f_for_residual, const Tolerances& tol) {
  std::vector<double> values(grid.size());
  std::vector<double> derivs(grid.size());
  const double reach = run.outcome.diverged ? run.outcome.divergence_radius : grid.back();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = std::min(grid[i], reach);
    values[i] = run.dense.u(r);
    derivs[i] = run.dense.w(r);
  }
  return make_radial_profile(grid, std::move(values), std::move(derivs), alpha,
                             run.outcome.diverged ? nullptr : f_for_residual, tol);
}

}  // namespace

IvpResult integrate_ivp(const Nonlinearity& nonlinearity, double alpha, double r0, double u0,
                        double du0, double end_radius, const ShootingConfig& config) {
  IvpRun run = run_ivp(nonlinearity, alpha, r0, u0, du0, end_radius, config, true);
  const Domain domain = r0 == 0.0 ? Domain::ball(end_radius) : Domain::annulus(r0, end_radius);
  const RadialGrid grid = make_grid(domain, config.output_points);

  IvpResult result;
  result.profile = profile_from_dense(run, grid, alpha, &nonlinearity, Tolerances{});
  result.zeros = run.outcome.zeros;
  result.diverged = run.outcome.diverged;
  result.divergence_radius = run.outcome.divergence_radius;
  result.end_value = run.outcome.end_state.u;
  result.end_slope = run.outcome.end_state.w;
  return result;
}

namespace {

struct TrialOutcome {
  int zeros = 0;
  double end_value = 0.0;
  bool diverged = false;
};

TrialOutcome trial_shot(const Nonlinearity& f, double alpha, const Domain& domain,
                        double parameter, const ShootingConfig& config) {
  TrialOutcome t;
  IvpRun run;
  if (domain.is_ball()) {
    run = run_ivp(f, alpha, 0.0, parameter, 0.0, domain.outer_radius(), config, false);
  } else {
    run = run_ivp(f, alpha, domain.inner_radius(), 0.0, parameter, domain.outer_radius(), config,
                  false);
  }
  t.zeros = static_cast<int>(run.outcome.zeros.size());
  t.end_value = run.outcome.end_state.u;
  t.diverged = run.outcome.diverged;
  return t;
}

}  // namespace

ShootResult shoot_nodal_solution(const Nonlinearity& nonlinearity, double alpha,
                                 const Domain& domain, int n, const ShootingConfig& config) {
  if (n < 1) throw std::invalid_argument("shoot_nodal_solution: n must be >= 1");

  // Larger parameters squeeze the zeros inward, so "n-th zero inside the
  // domain" is monotone in the parameter; bisection needs exactly that.
  auto too_high = [&](double parameter) {
    return trial_shot(nonlinearity, alpha, domain, parameter, config).zeros >= n;
  };

  double lo = 1.0, hi = 1.0;
  if (too_high(1.0)) {
    bool found = false;
    for (int i = 0; i < 60; ++i) {
      lo /= 4.0;
      if (!too_high(lo)) {
        hi = lo * 4.0;
        found = true;
        break;
      }
    }
    if (!found) throw solve_error("shoot_nodal_solution: no bracket found (lower end)");
  } else {
    bool found = false;
    for (int i = 0; i < 60; ++i) {
      hi *= 4.0;
      if (too_high(hi)) {
        lo = hi / 4.0;
        found = true;
        break;
      }
    }
    if (!found) throw solve_error("shoot_nodal_solution: no bracket found");
  }

  int bisections = 0;
  for (; bisections < config.max_bisections; ++bisections) {
    if (hi - lo <= 1e-15 * hi) break;
    const double mid = 0.5 * (lo + hi);
    if (too_high(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  if (hi - lo > 1e-12 * hi) {
    throw solve_error("shoot_nodal_solution: bisection budget exhausted before convergence");
  }

  const double parameter = 0.5 * (lo + hi);
  IvpRun run;
  if (domain.is_ball()) {
    run = run_ivp(nonlinearity, alpha, 0.0, parameter, 0.0, domain.outer_radius(), config, true);
  } else {
    run = run_ivp(nonlinearity, alpha, domain.inner_radius(), 0.0, parameter,
                  domain.outer_radius(), config, true);
  }
  if (run.outcome.diverged) {
    throw solve_error("shoot_nodal_solution: converged parameter still diverges");
  }

  ShootResult result;
  result.parameter = parameter;
  result.bisections = bisections;
  const RadialGrid grid = make_grid(domain, config.output_points);
  result.profile = profile_from_dense(run, grid, alpha, &nonlinearity, Tolerances{});
  if (result.profile.nodal_sets != n) {
    throw solve_error("shoot_nodal_solution: converged profile has " +
                      std::to_string(result.profile.nodal_sets) + " nodal sets, expected " +
                      std::to_string(n));
  }
  return result;
}

ShootResult henon_scaling_solve(double alpha, double p, const Domain& ball, int n,
                                const ShootingConfig& config) {
  if (!ball.is_ball()) {
    throw std::invalid_argument("henon_scaling_solve: domain must be a ball");
  }
  const Nonlinearity f = Nonlinearity::henon(p);
  const double half_exponent = 0.5 * alpha + 1.0;  // (alpha + 2) / 2
  const double radius_u = std::pow(ball.outer_radius(), half_exponent);
  const Domain ball_u = Domain::ball(radius_u);

  const ShootResult base = shoot_nodal_solution(f, 0.0, ball_u, n, config);
  // dense re-run at the converged amplitude for off-grid evaluation
  IvpRun run = run_ivp(f, 0.0, 0.0, base.parameter, 0.0, radius_u, config, true);

  const double amplitude_factor = std::pow(half_exponent, 2.0 / (p - 1.0));
  const RadialGrid grid = make_grid(ball, config.output_points);
  std::vector<double> values(grid.size());
  std::vector<double> derivs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    const double s = std::pow(r, half_exponent);
    values[i] = amplitude_factor * run.dense.u(s);
    derivs[i] = amplitude_factor * run.dense.w(s) * half_exponent * std::pow(r, half_exponent - 1.0);
  }

  ShootResult result;
  result.parameter = amplitude_factor * base.parameter;
  result.bisections = base.bisections;
  result.profile =
      make_radial_profile(grid, std::move(values), std::move(derivs), alpha, &f, Tolerances{});
  return result;
}

ShootResult henon_rescale_trick(double alpha, double p, const Domain& ball, int n,
                                const ShootingConfig& config) {
  if (!ball.is_ball()) {
    throw std::invalid_argument("henon_rescale_trick: domain must be a ball");
  }
  if (n < 1) throw std::invalid_argument("henon_rescale_trick: n must be >= 1");
  const Nonlinearity f = Nonlinearity::henon(p);

  double window = 8.0;
  IvpRun run;
  for (;;) {
    run = run_ivp(f, alpha, 0.0, 1.0, 0.0, window, config, true);
    if (static_cast<int>(run.outcome.zeros.size()) >= n) break;
    if (run.outcome.diverged || window > 1e4) {
      throw solve_error("henon_rescale_trick: fewer than n zeros in the integration window");
    }
    window *= 2.0;
  }
  const double rho_n = run.outcome.zeros[static_cast<std::size_t>(n) - 1];
  const double R = ball.outer_radius();
  const double scale = rho_n / R;  // radial compression factor
  const double amplitude = std::pow(scale, (alpha + 2.0) / (p - 1.0));

  const RadialGrid grid = make_grid(ball, config.output_points);
  std::vector<double> values(grid.size());
  std::vector<double> derivs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid[i] * scale;
    values[i] = amplitude * run.dense.u(s);
    derivs[i] = amplitude * run.dense.w(s) * scale;
  }

  ShootResult result;
  result.parameter = amplitude;
  result.bisections = 0;
  result.profile =
      make_radial_profile(grid, std::move(values), std::move(derivs), alpha, &f, Tolerances{});
  return result;
}

AuxiliaryZ auxiliary_z(const RadialProfile& profile, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("auxiliary_z: p must exceed 1");
  if (profile.alpha != 0.0) {
    throw std::invalid_argument("auxiliary_z: profile must solve the alpha = 0 equation");
  }
  AuxiliaryZ aux;
  const std::size_t nn = profile.grid.size();
  aux.values.resize(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    aux.values[i] = profile.grid[i] * profile.derivatives[i] + 2.0 * profile.values[i] / (p - 1.0);
  }
  aux.boundary_value = aux.values.back();
  aux.max_profile_slope = profile.max_abs_slope();

  if (nn >= 6) {
    const auto zp = fd_derivative(profile.grid, aux.values);
    const auto zpp = fd_second_derivative(profile.grid, aux.values);
    double sup = 0.0;
    for (std::size_t i = 2; i + 2 < nn; ++i) {
      const double r = profile.grid[i];
      const double potential = p * std::pow(std::abs(profile.values[i]), p - 1.0);
      sup = std::max(sup, std::abs(zpp[i] + zp[i] / r + potential * aux.values[i]));
    }
    aux.residual_sup = sup;
  }
  return aux;
}

}  // namespace henon
