#include "henon/morse_verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "henon/numerics.hpp"
#include "henon/transform.hpp"

namespace henon {

namespace {

bool grid_is_ball(const RadialGrid& grid) {
  const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  return grid.front() < h;
}

void require_same_grid(const RadialGrid& a, const RadialGrid& b, const char* who) {
  if (a.size() != b.size()) throw std::invalid_argument(std::string(who) + ": grid mismatch");
  const double scale = a.back() - a.front();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-11 * scale) {
      throw std::invalid_argument(std::string(who) + ": grid mismatch");
    }
  }
}

double angular_factor(int mode) { return std::numbers::pi * (mode == 0 ? 2.0 : 1.0); }

}  // namespace

double eval_Q_bilinear(const RadialProfile& u, const Nonlinearity& nonlinearity,
                       const AngularFourierFunction& w1, const AngularFourierFunction& w2) {
  require_same_grid(w1.grid(), w2.grid(), "eval_Q");
  const RadialGrid& grid = w1.grid();
  if (std::abs(grid.back() - u.grid.back()) > 1e-9 * u.grid.back()) {
    throw std::invalid_argument("eval_Q: test function leaves the profile's domain");
  }
  const bool ball = grid_is_ball(grid);

  // potential samples r^alpha f'(u(r)) on the test-function grid
  std::vector<double> fprime_u(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = std::clamp(grid[i], u.grid.front(), u.grid.back());
    fprime_u[i] = nonlinearity.fprime(u.value_at(r));
  }

  double total = 0.0;
  std::vector<double> work(grid.size());
  for (const auto& t1 : w1.terms()) {
    for (const auto& t2 : w2.terms()) {
      if (t1.mode != t2.mode || t1.parity != t2.parity) continue;  // exact angular zero
      const double k2 = static_cast<double>(t1.mode) * static_cast<double>(t1.mode);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        work[i] = t1.derivatives[i] * t2.derivatives[i];
      }
      double dirichlet = weighted_integral(grid, work, 0.0, ball);
      if (t1.mode > 0) {
        for (std::size_t i = 0; i < grid.size(); ++i) work[i] = t1.values[i] * t2.values[i];
        dirichlet += k2 * weighted_integral(grid, work, -2.0, ball);
      }
      for (std::size_t i = 0; i < grid.size(); ++i) {
        work[i] = fprime_u[i] * t1.values[i] * t2.values[i];
      }
      const double potential = weighted_integral(grid, work, u.alpha, ball);
      total += angular_factor(t1.mode) * (dirichlet - potential);
    }
  }
  return total;
}

double eval_Q(const RadialProfile& u, const Nonlinearity& nonlinearity,
              const AngularFourierFunction& w) {
  return eval_Q_bilinear(u, nonlinearity, w, w);
}

double weight_inner(double alpha, const AngularFourierFunction& w1,
                    const AngularFourierFunction& w2) {
  require_same_grid(w1.grid(), w2.grid(), "weight_inner");
  const RadialGrid& grid = w1.grid();
  const bool ball = grid_is_ball(grid);
  double total = 0.0;
  std::vector<double> work(grid.size());
  for (const auto& t1 : w1.terms()) {
    for (const auto& t2 : w2.terms()) {
      if (t1.mode != t2.mode || t1.parity != t2.parity) continue;
      for (std::size_t i = 0; i < grid.size(); ++i) work[i] = t1.values[i] * t2.values[i];
      total += angular_factor(t1.mode) * weighted_integral(grid, work, alpha, ball);
    }
  }
  return total;
}

QuadFormReport check_prop31(const RadialProfile& v_reduced, const AngularFourierFunction& psi,
                            double alpha, const Nonlinearity& nonlinearity,
                            const Tolerances& tol) {
  if (v_reduced.alpha != 0.0) {
    throw std::invalid_argument("check_prop31: v must carry the reduced (alpha = 0) equation");
  }
  const double kappa = 2.0 / (alpha + 2.0);
  const Nonlinearity reduced = Nonlinearity::scaled(nonlinearity, kappa * kappa);

  QuadFormReport report;
  report.ratio_bound = kappa;
  report.radial = psi.is_radial();
  report.q_value_reduced = eval_Q_bilinear(v_reduced, reduced, psi, psi);

  // u = v o T^{-1} on a uniform grid of Omega
  const bool ball = grid_is_ball(v_reduced.grid);
  const Domain omega = Domain(ball ? 0.0 : std::pow(v_reduced.grid.front(), kappa),
                              std::pow(v_reduced.grid.back(), kappa));
  const RadialGrid u_grid = make_grid(omega, v_reduced.grid.size());
  std::vector<double> u_values(u_grid.size());
  std::vector<double> u_derivs(u_grid.size());
  const double e = 1.0 / kappa;
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    const double r = u_grid[i];
    const double s = std::pow(r, e);
    if (s < v_reduced.grid.front()) {
      u_values[i] = v_reduced.values.front();
      u_derivs[i] = 0.0;
    } else {
      const double sc = std::min(s, v_reduced.grid.back());
      u_values[i] = v_reduced.value_at(sc);
      u_derivs[i] = v_reduced.derivative_at(sc) * e * std::pow(r, e - 1.0);
    }
  }
  const RadialProfile u = make_radial_profile(u_grid, std::move(u_values), std::move(u_derivs),
                                              alpha, nullptr, tol);

  const auto phi = push_forward_fourier(psi, SectorTransform(kappa, 1), u_grid);
  report.q_value_weighted = eval_Q_bilinear(u, nonlinearity, phi, phi);

  report.slack = report.q_value_reduced - kappa * report.q_value_weighted;
  const double scale = std::max({std::abs(report.q_value_reduced),
                                 std::abs(kappa * report.q_value_weighted), 1e-300});
  report.equality_rel_error = std::abs(report.slack) / scale;
  report.pass = report.slack >= -1e-10;
  if (report.radial) {
    report.pass = report.pass && report.equality_rel_error <= tol.identity;
  }
  return report;
}

namespace {

// Extends an interior-node eigenvector by its Dirichlet zeros (outer
// boundary; inner too for an annulus) and evaluates it at arbitrary radii.
// Below a ball's first node the vector is held flat, which only happens
// inside the origin cell.
struct EigenvectorSampler {
  RadialGrid ext;
  std::vector<double> values;

  EigenvectorSampler(const RadialGrid& nodes, std::vector<double> interior, const Domain& domain) {
    ext = nodes;
    values = std::move(interior);
    if (!domain.is_ball() && ext.front() > domain.inner_radius()) {
      ext.nodes.insert(ext.nodes.begin(), domain.inner_radius());
      values.insert(values.begin(), 0.0);
    }
    if (ext.back() < domain.outer_radius()) {
      ext.nodes.push_back(domain.outer_radius());
      values.push_back(0.0);
    }
  }

  double operator()(double r) const {
    if (r < ext.front()) return values.front();
    return lagrange_value(ext, values, std::min(r, ext.back()));
  }
};

std::vector<double> resample_eigenvector(const RadialGrid& nodes, std::vector<double> interior,
                                         const Domain& domain, const RadialGrid& target) {
  const EigenvectorSampler sampler(nodes, std::move(interior), domain);
  std::vector<double> out(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) out[i] = sampler(target[i]);
  double sup = 0.0;
  for (double v : out) sup = std::max(sup, std::abs(v));
  if (sup > 0.0) {
    for (auto& v : out) v /= sup;
  }
  return out;
}

AngularFourierFunction single_direction(const RadialGrid& grid, int mode, Parity parity,
                                        std::vector<double> values) {
  FourierTerm term;
  term.mode = mode;
  term.parity = parity;
  term.derivatives = fd_derivative(grid, values);
  term.values = std::move(values);
  return AngularFourierFunction(grid, {std::move(term)});
}

}  // namespace

NegativeDirectionSet build_sector_directions(const RadialProfile& u,
                                             const Nonlinearity& nonlinearity,
                                             const MorseOptions& options) {
  const double alpha = u.alpha;
  const double half = alpha / 2.0;
  if (!(alpha > 0.0) || std::abs(half - std::round(half)) > 1e-12) {
    throw std::invalid_argument("build_sector_directions: alpha must be a positive even integer");
  }
  const int m = static_cast<int>(std::lround(half)) + 1;  // alpha = 2(m-1)
  const double kappa = 1.0 / static_cast<double>(m);

  NegativeDirectionSet set;
  set.m = m;

  // reduced problem about v = u o T_kappa on Omega_kappa
  const Nonlinearity reduced_f = Nonlinearity::scaled(nonlinearity, kappa * kappa);
  const RadialProfile v_mapped = pull_back_radial(u, kappa, nullptr, options.tol);
  const Domain omega = grid_is_ball(u.grid)
                           ? Domain::ball(u.grid.back())
                           : Domain::annulus(u.grid.front(), u.grid.back());
  const Domain omega_kappa = map_domain(omega, kappa);
  const RadialProfile v = resample_profile(v_mapped, make_grid(omega_kappa, options.grid_points),
                                           0.0, &reduced_f, options.tol);

  const ModeProblem reduced_mode1 =
      make_mode_problem(v, reduced_f, 1, false, options.grid_points);
  const ModeOperator reduced_op = assemble_mode_operator(reduced_mode1);
  const auto reduced_eigs = lowest_eigenvalues(reduced_op.matrix, 1, options.tol.eigen);
  set.reduced_mode1_eigenvalue = reduced_eigs.front();
  if (!(set.reduced_mode1_eigenvalue < -options.tol.eigen)) {
    throw discretization_alarm(
        "build_sector_directions: reduced mode-1 eigenvalue is not negative at this resolution");
  }
  std::vector<double> reduced_vec = eigenvector(reduced_op.matrix, set.reduced_mode1_eigenvalue);
  for (std::size_t i = 0; i < reduced_vec.size(); ++i) reduced_vec[i] *= reduced_op.scale_back[i];

  // radial negative directions from the weighted mode-0 problem
  const ModeProblem weighted_mode0 =
      make_mode_problem(u, nonlinearity, 0, true, options.grid_points);
  const ModeOperator op0 = assemble_mode_operator(weighted_mode0);
  const int n0 = negative_count(op0.matrix, options.tol.eigen);
  if (n0 < 1) {
    throw discretization_alarm("build_sector_directions: no radial negative directions found");
  }
  const auto mode0_eigs = lowest_eigenvalues(op0.matrix, n0, options.tol.eigen);
  set.radial_count = static_cast<std::size_t>(n0);
  for (double lambda : mode0_eigs) {
    std::vector<double> vec = eigenvector(op0.matrix, lambda);
    for (std::size_t i = 0; i < vec.size(); ++i) vec[i] *= op0.scale_back[i];
    set.directions.push_back(single_direction(
        u.grid, 0, Parity::cosine,
        resample_eigenvector(op0.interior, std::move(vec), omega, u.grid)));
  }

  // modes 1..m-1: direct weighted eigenpairs (the discrete counterpart of the
  // sector-domain monotonicity argument)
  for (int mode = 1; mode < m; ++mode) {
    const ModeProblem problem =
        make_mode_problem(u, nonlinearity, mode, true, options.grid_points);
    const ModeOperator op = assemble_mode_operator(problem);
    const auto eigs = lowest_eigenvalues(op.matrix, 1, options.tol.eigen);
    if (!(eigs.front() < -options.tol.eigen)) {
      throw discretization_alarm("build_sector_directions: weighted mode " +
                                 std::to_string(mode) +
                                 " lowest eigenvalue is not negative (discretization alarm)");
    }
    std::vector<double> vec = eigenvector(op.matrix, eigs.front());
    for (std::size_t i = 0; i < vec.size(); ++i) vec[i] *= op.scale_back[i];
    const auto values = resample_eigenvector(op.interior, std::move(vec), omega, u.grid);
    set.directions.push_back(single_direction(u.grid, mode, Parity::cosine, values));
    set.directions.push_back(single_direction(u.grid, mode, Parity::sine, values));
  }

  // mode m via push-forward of the reduced mode-1 pair: phi = a(r^m) trig(m theta)
  {
    const EigenvectorSampler sampler(reduced_op.interior, reduced_vec, omega_kappa);
    std::vector<double> values(u.grid.size());
    for (std::size_t i = 0; i < u.grid.size(); ++i) {
      const double s = std::pow(u.grid[i], static_cast<double>(m));
      if (s < sampler.ext.front()) {
        // mode-1 coefficient vanishes linearly at the origin
        values[i] = sampler.values.front() * (s / sampler.ext.front());
      } else {
        values[i] = sampler(s);
      }
    }
    double sup = 0.0;
    for (double v : values) sup = std::max(sup, std::abs(v));
    if (sup > 0.0) {
      for (auto& v : values) v /= sup;
    }
    set.directions.push_back(single_direction(u.grid, m, Parity::cosine, values));
    set.directions.push_back(single_direction(u.grid, m, Parity::sine, values));
  }

  // eigenvalue transport check: weighted mode-m lowest = m^2 * reduced mode-1
  {
    const ModeProblem problem = make_mode_problem(u, nonlinearity, m, true, options.grid_points);
    const ModeOperator op = assemble_mode_operator(problem);
    const auto eigs = lowest_eigenvalues(op.matrix, 1, options.tol.eigen);
    if (!(eigs.front() < -options.tol.eigen)) {
      throw discretization_alarm(
          "build_sector_directions: weighted mode m lowest eigenvalue is not negative");
    }
    const double expected = set.reduced_mode1_eigenvalue * static_cast<double>(m) *
                            static_cast<double>(m);
    set.eigenvalue_scaling_rel_error =
        std::abs(eigs.front() - expected) / std::abs(eigs.front());
  }

  // Gram matrices
  const std::size_t n = set.directions.size();
  set.gram_q.assign(n, std::vector<double>(n, 0.0));
  set.gram_weight.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double q = eval_Q_bilinear(u, nonlinearity, set.directions[i], set.directions[j]);
      const double w = weight_inner(alpha, set.directions[i], set.directions[j]);
      set.gram_q[i][j] = set.gram_q[j][i] = q;
      set.gram_weight[i][j] = set.gram_weight[j][i] = w;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(set.gram_q[i][i] < 0.0)) {
      throw discretization_alarm("build_sector_directions: direction " + std::to_string(i) +
                                 " is not Q-negative (discretization alarm)");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double qscale = std::sqrt(std::abs(set.gram_q[i][i] * set.gram_q[j][j]));
      const double wscale = std::sqrt(set.gram_weight[i][i] * set.gram_weight[j][j]);
      set.max_offdiag_rel_q =
          std::max(set.max_offdiag_rel_q, std::abs(set.gram_q[i][j]) / qscale);
      set.max_offdiag_rel_weight =
          std::max(set.max_offdiag_rel_weight, std::abs(set.gram_weight[i][j]) / wscale);
    }
  }
  return set;
}

namespace {

CheckResult make_check(std::string name, bool pass, double value, double threshold,
                       std::string note = {}) {
  CheckResult check;
  check.name = std::move(name);
  check.pass = pass;
  check.value = value;
  check.threshold = threshold;
  check.note = std::move(note);
  return check;
}

CheckResult skipped_check(std::string name, std::string note) {
  CheckResult check;
  check.name = std::move(name);
  check.skipped = true;
  check.pass = true;
  check.note = std::move(note);
  return check;
}

}  // namespace

VerdictBundle verify_theorems(double alpha, double p, int n, const Domain& domain,
                              const VerifyOptions& options) {
  VerdictBundle bundle;
  bundle.alpha = alpha;
  bundle.p = p;
  bundle.nodal = n;
  bundle.domain = domain;

  const Nonlinearity f = Nonlinearity::henon(p);

  ShootResult direct;
  try {
    direct = shoot_nodal_solution(f, alpha, domain, n, options.shooting);
  } catch (const solve_error& err) {
    throw solve_error("verify_theorems(alpha=" + std::to_string(alpha) +
                      ", p=" + std::to_string(p) + ", n=" + std::to_string(n) +
                      "): " + err.what());
  }
  bundle.solver.parameter = direct.parameter;
  bundle.solver.residual_sup = direct.profile.residual_sup;
  bundle.solver.boundary_value = direct.profile.values.back();
  bundle.solver.nodal_sets = direct.profile.nodal_sets;

  bundle.checks.push_back(make_check("solution_residual",
                                     direct.profile.residual_sup <= direct.profile.residual_tol,
                                     direct.profile.residual_sup, direct.profile.residual_tol));

  if (domain.is_ball()) {
    const ShootResult scaled = henon_scaling_solve(alpha, p, domain, n, options.shooting);
    double sup = 0.0;
    for (std::size_t i = 0; i < direct.profile.grid.size(); ++i) {
      sup = std::max(sup, std::abs(direct.profile.values[i] - scaled.profile.values[i]));
    }
    bundle.checks.push_back(make_check("correspondence_lane_emden", sup < 1e-6, sup, 1e-6));
  } else {
    bundle.checks.push_back(
        skipped_check("correspondence_lane_emden", "scaling route is ball-only"));
  }

  bundle.morse = morse_index(direct.profile, f, options.morse);

  if (n >= 2) {
    const int bound_general = std::max(3, f.superlinear() ? n + 2 : 3);
    bundle.checks.push_back(make_check("morse_bound_general",
                                       bundle.morse.total_index >= bound_general,
                                       bundle.morse.total_index, bound_general));
    bundle.checks.push_back(make_check("radial_count_equals_nodal",
                                       bundle.morse.radial_negative_count == n,
                                       bundle.morse.radial_negative_count, n));
    bundle.checks.push_back(make_check(
        "symmetry_breaking_surrogate", bundle.morse.total_index >= 3, bundle.morse.total_index,
        3.0, "computed radial index exceeds the least-energy index 2"));
  } else {
    bundle.checks.push_back(make_check("positive_solution_index",
                                       bundle.morse.total_index >= 1,
                                       bundle.morse.total_index, 1));
  }

  const double half = alpha / 2.0;
  const bool even_alpha = alpha > 0.0 && std::abs(half - std::round(half)) < 1e-12;
  if (even_alpha && n >= 2) {
    const int a = static_cast<int>(std::lround(alpha));
    const int bound_even = f.superlinear() ? a + n + 2 : a + 3;
    bundle.checks.push_back(make_check("morse_bound_even_alpha",
                                       bundle.morse.total_index >= bound_even,
                                       bundle.morse.total_index, bound_even));
    try {
      const NegativeDirectionSet set = build_sector_directions(direct.profile, f, options.morse);
      bundle.checks.push_back(make_check("sector_eigenvalue_scaling",
                                         set.eigenvalue_scaling_rel_error < 1e-4,
                                         set.eigenvalue_scaling_rel_error, 1e-4));
      const double expected = static_cast<double>(2 * set.m) + set.radial_count;
      bundle.checks.push_back(make_check("sector_direction_count",
                                         set.directions.size() == expected,
                                         static_cast<double>(set.directions.size()), expected));
      bundle.checks.push_back(make_check("sector_gram_diagonal",
                                         set.max_offdiag_rel_q < 1e-5 &&
                                             set.max_offdiag_rel_weight < 1e-5,
                                         std::max(set.max_offdiag_rel_q,
                                                  set.max_offdiag_rel_weight),
                                         1e-5));
    } catch (const discretization_alarm& alarm) {
      bundle.checks.push_back(make_check("sector_construction", false, 0.0, 0.0, alarm.what()));
    }
  } else {
    bundle.checks.push_back(skipped_check(
        "morse_bound_even_alpha",
        even_alpha ? "needs a sign-changing solution" : "alpha is not a positive even integer"));
  }

  if (domain.is_ball() && n == 2) {
    const NondegeneracyReport nondegen = radial_nondegeneracy(direct.profile, f, options.morse);
    bundle.checks.push_back(make_check("radial_nondegeneracy", nondegen.pass, nondegen.margin,
                                       10.0 * nondegen.eigen_tolerance));
  } else {
    bundle.checks.push_back(
        skipped_check("radial_nondegeneracy", "stated for two-nodal ball solutions"));
  }

  if (domain.is_ball()) {
    const double half_exp = 0.5 * alpha + 1.0;
    const Domain base_ball = Domain::ball(std::pow(domain.outer_radius(), half_exp));
    const ShootResult base = alpha == 0.0
                                 ? direct
                                 : shoot_nodal_solution(f, 0.0, base_ball, n, options.shooting);
    const AuxiliaryZ aux = auxiliary_z(base.profile, p);
    bundle.checks.push_back(make_check("aux_z_residual", aux.residual_sup < 1e-6,
                                       aux.residual_sup, 1e-6));
    bundle.checks.push_back(make_check("aux_z_boundary_trace",
                                       std::abs(aux.boundary_value) >
                                           0.1 * aux.max_profile_slope,
                                       std::abs(aux.boundary_value),
                                       0.1 * aux.max_profile_slope,
                                       "Hopf behavior: z(R) = R u'(R) stays away from 0"));
  } else {
    bundle.checks.push_back(skipped_check("aux_z_residual", "Lane-Emden base is ball-only"));
  }

  bundle.checks.push_back(make_check("inertia_equality", bundle.morse.inertia_equal,
                                     bundle.morse.inertia_equal ? 1.0 : 0.0, 1.0));
  bundle.checks.push_back(make_check("mode_monotonicity", bundle.morse.mode_monotonic,
                                     bundle.morse.mode_monotonic ? 1.0 : 0.0, 1.0));

  bundle.all_pass = true;
  for (const auto& check : bundle.checks) {
    if (!check.skipped && !check.pass) bundle.all_pass = false;
  }
  return bundle;
}

}  // namespace henon
