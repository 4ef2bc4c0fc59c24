#include "henon/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "henon/numerics.hpp"

namespace henon {

int sturm_count(const SymTridiag& matrix, double shift) {
  const std::size_t n = matrix.n();
  if (n == 0) return 0;
  if (matrix.offdiag.size() + 1 != n) {
    throw std::invalid_argument("sturm_count: offdiag size must be n - 1");
  }
  // LDL^T pivots of (A - shift I); negative pivots count eigenvalues below shift.
  const double tiny = std::numeric_limits<double>::min();
  int count = 0;
  double q = matrix.diag[0] - shift;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    if (q == 0.0) q = -tiny;
    const double e = matrix.offdiag[i - 1];
    q = matrix.diag[i] - shift - e * e / q;
    if (q < 0.0) ++count;
  }
  return count;
}

int negative_count(const SymTridiag& matrix, double tolerance) {
  return sturm_count(matrix, -std::abs(tolerance));
}

namespace {

std::pair<double, double> gershgorin_bounds(const SymTridiag& matrix) {
  const std::size_t n = matrix.n();
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? std::abs(matrix.offdiag[i - 1]) : 0.0;
    const double right = i + 1 < n ? std::abs(matrix.offdiag[i]) : 0.0;
    lo = std::min(lo, matrix.diag[i] - left - right);
    hi = std::max(hi, matrix.diag[i] + left + right);
  }
  return {lo, hi};
}

}  // namespace

std::vector<double> lowest_eigenvalues(const SymTridiag& matrix, int q, double tolerance) {
  if (q < 1) throw std::invalid_argument("lowest_eigenvalues: q must be >= 1");
  q = std::min<int>(q, static_cast<int>(matrix.n()));
  const auto [glo, ghi] = gershgorin_bounds(matrix);
  std::vector<double> eigenvalues;
  eigenvalues.reserve(static_cast<std::size_t>(q));
  for (int index = 1; index <= q; ++index) {
    double lo = eigenvalues.empty() ? glo : eigenvalues.back() - tolerance;
    double hi = ghi;
    const double width_floor =
        std::max(tolerance, 8.0 * std::numeric_limits<double>::epsilon() *
                                std::max(std::abs(glo), std::abs(ghi)));
    for (int it = 0; it < 200 && hi - lo > width_floor; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (sturm_count(matrix, mid) >= index) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    eigenvalues.push_back(0.5 * (lo + hi));
  }
  return eigenvalues;
}

std::vector<double> eigenvector(const SymTridiag& matrix, double lambda) {
  const std::size_t n = matrix.n();
  if (n == 0) return {};
  if (n == 1) return {1.0};

  // inverse iteration with a pivoted tridiagonal LU of (A - lambda I)
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (i % 2 == 0) ? 1.0 : 0.5;

  const auto solve_shifted = [&](std::vector<double>& rhs) {
    std::vector<double> d(n), e(n, 0.0), f(n, 0.0), c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i] = matrix.diag[i] - lambda;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      e[i] = matrix.offdiag[i];
      c[i + 1] = matrix.offdiag[i];
    }
    // forward elimination with partial pivoting
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(c[i + 1]) > std::abs(d[i])) {
        std::swap(d[i], c[i + 1]);
        std::swap(e[i], d[i + 1]);
        if (i + 2 < n) std::swap(f[i], e[i + 1]);
        std::swap(rhs[i], rhs[i + 1]);
      }
      if (d[i] == 0.0) d[i] = std::numeric_limits<double>::min();
      const double m = c[i + 1] / d[i];
      d[i + 1] -= m * e[i];
      if (i + 2 < n) e[i + 1] -= m * f[i];
      rhs[i + 1] -= m * rhs[i];
    }
    if (d[n - 1] == 0.0) d[n - 1] = std::numeric_limits<double>::min();
    rhs[n - 1] /= d[n - 1];
    if (n >= 2) rhs[n - 2] = (rhs[n - 2] - e[n - 2] * rhs[n - 1]) / d[n - 2];
    for (std::size_t k = n - 2; k-- > 0;) {
      rhs[k] = (rhs[k] - e[k] * rhs[k + 1] - f[k] * rhs[k + 2]) / d[k];
    }
  };

  for (int iteration = 0; iteration < 3; ++iteration) {
    solve_shifted(x);
    double norm = 0.0;
    for (double v : x) norm = std::max(norm, std::abs(v));
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      for (std::size_t i = 0; i < n; ++i) x[i] = (i % 3 == 0) ? 1.0 : -0.25;
      continue;
    }
    for (auto& v : x) v /= norm;
  }
  // orientation: largest-magnitude component positive
  std::size_t imax = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
  }
  if (x[imax] < 0.0) {
    for (auto& v : x) v = -v;
  }
  return x;
}

ModeProblem make_mode_problem(const RadialProfile& profile, const Nonlinearity& nonlinearity,
                              int mode, bool weighted, std::size_t points) {
  if (mode < 0) throw std::invalid_argument("make_mode_problem: mode must be >= 0");
  if (points < 8) throw std::invalid_argument("make_mode_problem: grid too small");
  ModeProblem problem;
  problem.mode = mode;
  problem.weighted = weighted;
  problem.alpha = profile.alpha;
  // Ball grids keep their first node below one spacing (make_grid invariant);
  // an annulus starts at its macroscopic inner radius.
  const double h = (profile.grid.back() - profile.grid.front()) /
                   static_cast<double>(profile.grid.size() - 1);
  const bool ball = profile.grid.front() < h;
  problem.domain = ball ? Domain::ball(profile.grid.back())
                        : Domain::annulus(profile.grid.front(), profile.grid.back());
  problem.grid = make_grid(problem.domain, points);
  problem.potential.resize(problem.grid.size());
  for (std::size_t i = 0; i < problem.grid.size(); ++i) {
    const double r = problem.grid[i];
    const double u = profile.value_at(std::clamp(r, profile.grid.front(), profile.grid.back()));
    problem.potential[i] = std::pow(r, profile.alpha) * nonlinearity.fprime(u);
  }
  return problem;
}

ModeOperator assemble_mode_operator(const ModeProblem& problem) {
  if (!problem.grid.is_uniform(1e-8)) {
    throw std::invalid_argument("assemble_mode_operator: non-uniform grid rejected");
  }
  if (problem.potential.size() != problem.grid.size()) {
    throw std::invalid_argument("assemble_mode_operator: potential/grid size mismatch");
  }
  const bool ball = problem.domain.is_ball();
  const double h = problem.grid.spacing();
  const double h2 = h * h;
  const double k2 = static_cast<double>(problem.mode) * static_cast<double>(problem.mode);

  // unknowns: all nodes except Dirichlet boundary nodes (outer; inner too for
  // an annulus).  For a ball the first node sits at h/2 and the flux through
  // the face r = 0 vanishes, which encodes the origin regularity.
  const std::size_t first = ball ? 0 : 1;
  const std::size_t last = problem.grid.size() - 2;  // inclusive
  if (last + 1 <= first + 1) throw std::invalid_argument("assemble_mode_operator: no interior");
  const std::size_t n = last - first + 1;

  ModeOperator op;
  op.interior.nodes.assign(problem.grid.nodes.begin() + static_cast<std::ptrdiff_t>(first),
                           problem.grid.nodes.begin() + static_cast<std::ptrdiff_t>(last + 1));
  op.matrix.diag.resize(n);
  op.matrix.offdiag.resize(n - 1);
  op.scale_back.resize(n);

  for (std::size_t j = 0; j < n; ++j) {
    const double r = op.interior[j];
    double face_in = r - 0.5 * h;
    // on the half-offset ball grid the inner face of the first cell is r = 0
    if (ball && j == 0 && face_in < 1e-10 * h) face_in = 0.0;
    const double face_out = r + 0.5 * h;
    op.matrix.diag[j] = (face_in + face_out) / (r * h2) + k2 / (r * r) - problem.potential[first + j];
    if (j + 1 < n) {
      const double rn = op.interior[j + 1];
      op.matrix.offdiag[j] = -face_out / (h2 * std::sqrt(r * rn));
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    const double r = op.interior[j];
    const double w = problem.weighted ? std::pow(r, problem.alpha) : 1.0;
    op.scale_back[j] = 1.0 / std::sqrt(w * r);
  }
  if (problem.weighted && problem.alpha != 0.0) {
    // reduce the generalized problem by the diagonal square-root similarity
    std::vector<double> ws(n);
    for (std::size_t j = 0; j < n; ++j) ws[j] = std::pow(op.interior[j], 0.5 * problem.alpha);
    for (std::size_t j = 0; j < n; ++j) op.matrix.diag[j] /= ws[j] * ws[j];
    for (std::size_t j = 0; j + 1 < n; ++j) op.matrix.offdiag[j] /= ws[j] * ws[j + 1];
  }
  return op;
}

ModeSpectrum solve_mode(const ModeProblem& problem, int q, const Tolerances& tol) {
  const ModeOperator op = assemble_mode_operator(problem);
  ModeSpectrum spectrum;
  spectrum.mode = problem.mode;
  spectrum.size = op.matrix.n();
  spectrum.negative_count = negative_count(op.matrix, tol.eigen);
  const int below_plus = sturm_count(op.matrix, tol.eigen);
  spectrum.degenerate = below_plus > spectrum.negative_count;
  if (q > 0) {
    spectrum.eigenvalues = lowest_eigenvalues(op.matrix, q, tol.eigen);
  }
  return spectrum;
}

int theoretical_bound(double alpha, bool superlinear, int nodal_sets) {
  if (nodal_sets < 2) return superlinear ? 1 : 0;
  int bound = 3;
  if (superlinear) bound = std::max(bound, nodal_sets + 2);
  const double half = alpha / 2.0;
  const bool even = alpha > 0.0 && std::abs(half - std::round(half)) < 1e-12;
  if (even) {
    const int a = static_cast<int>(std::lround(alpha));
    bound = std::max(bound, a + 3);
    if (superlinear) bound = std::max(bound, a + nodal_sets + 2);
  }
  return bound;
}

MorseReport morse_index(const RadialProfile& profile, const Nonlinearity& nonlinearity,
                        const MorseOptions& options) {
  if (!std::isnan(profile.residual_sup) && !std::isnan(profile.residual_tol) &&
      profile.residual_sup > profile.residual_tol) {
    throw std::invalid_argument("morse_index: profile residual " +
                                std::to_string(profile.residual_sup) +
                                " exceeds tolerance " + std::to_string(profile.residual_tol));
  }
  const int q = options.eigenvalues_per_mode > 0 ? options.eigenvalues_per_mode
                                                 : std::max(profile.nodal_sets + 2, 8);
  MorseReport report;
  report.inertia_equal = true;
  report.mode_monotonic = true;
  double previous_mu1_unweighted = -std::numeric_limits<double>::infinity();
  double previous_mu1_weighted = -std::numeric_limits<double>::infinity();

  for (int k = 0; k <= options.max_mode; ++k) {
    const ModeProblem unweighted =
        make_mode_problem(profile, nonlinearity, k, false, options.grid_points);
    ModeSpectrum spectrum = solve_mode(unweighted, q, options.tol);

    const ModeProblem weighted =
        make_mode_problem(profile, nonlinearity, k, true, options.grid_points);
    ModeSpectrum weighted_spectrum = solve_mode(weighted, 1, options.tol);

    if (weighted_spectrum.negative_count != spectrum.negative_count) report.inertia_equal = false;
    if (!spectrum.eigenvalues.empty()) {
      if (spectrum.eigenvalues.front() <= previous_mu1_unweighted) report.mode_monotonic = false;
      previous_mu1_unweighted = spectrum.eigenvalues.front();
    }
    if (!weighted_spectrum.eigenvalues.empty()) {
      if (weighted_spectrum.eigenvalues.front() <= previous_mu1_weighted) {
        report.mode_monotonic = false;
      }
      previous_mu1_weighted = weighted_spectrum.eigenvalues.front();
    }
    if (spectrum.degenerate) report.degenerate_modes.push_back(k);

    report.per_mode.push_back(std::move(spectrum));
    report.weighted_negative_counts.push_back(weighted_spectrum.negative_count);

    if (report.per_mode.back().negative_count == 0) {
      report.k_max = k;
      break;
    }
    if (k == options.max_mode) {
      throw std::runtime_error("morse_index: no empty mode up to max_mode; raise the cap");
    }
  }

  report.radial_negative_count = report.per_mode.front().negative_count;
  report.total_index = report.radial_negative_count;
  for (std::size_t i = 1; i < report.per_mode.size(); ++i) {
    report.total_index += 2 * report.per_mode[i].negative_count;
  }
  report.theoretical_bound =
      theoretical_bound(profile.alpha, nonlinearity.superlinear(), profile.nodal_sets);
  report.verdict = report.total_index >= report.theoretical_bound;
  return report;
}

NondegeneracyReport nondegeneracy_from_eigenvalues(const std::vector<double>& eigenvalues,
                                                   double eigen_tolerance) {
  NondegeneracyReport report;
  report.eigen_tolerance = eigen_tolerance;
  double margin = std::numeric_limits<double>::max();
  for (double lambda : eigenvalues) margin = std::min(margin, std::abs(lambda));
  report.margin = margin;
  report.degenerate = margin <= eigen_tolerance;
  report.pass = margin > 10.0 * eigen_tolerance;
  return report;
}

NondegeneracyReport radial_nondegeneracy(const RadialProfile& profile,
                                         const Nonlinearity& nonlinearity,
                                         const MorseOptions& options) {
  int q = std::max(profile.nodal_sets + 4, 8);
  const ModeProblem problem =
      make_mode_problem(profile, nonlinearity, 0, true, options.grid_points);
  for (;;) {
    const ModeSpectrum spectrum = solve_mode(problem, q, options.tol);
    if (!spectrum.eigenvalues.empty() &&
        (spectrum.eigenvalues.back() > 0.0 ||
         q >= static_cast<int>(spectrum.size))) {
      return nondegeneracy_from_eigenvalues(spectrum.eigenvalues, options.tol.eigen);
    }
    q *= 2;
    if (q > 256) {
      return nondegeneracy_from_eigenvalues(solve_mode(problem, q, options.tol).eigenvalues,
                                            options.tol.eigen);
    }
  }
}

TransportedEigenpair transport_radial_eigenpair(const RadialEigenpair& reduced, double alpha,
                                                const RadialProfile& profile,
                                                const Nonlinearity& nonlinearity) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("transport_radial_eigenpair: alpha >= 0");
  const double kappa = 2.0 / (alpha + 2.0);
  const double factor = 1.0 / (kappa * kappa);  // ((alpha+2)/2)^2

  TransportedEigenpair out;
  out.lambda_weighted = reduced.lambda * factor;

  // extend the reduced eigenfunction with its Dirichlet zero at the outer
  // boundary of Omega_kappa for interpolation
  const double s_out = std::pow(profile.grid.back(), 1.0 / kappa);
  RadialGrid ext_grid = reduced.grid;
  std::vector<double> ext_values = reduced.values;
  if (ext_grid.back() < s_out) {
    ext_grid.nodes.push_back(s_out);
    ext_values.push_back(0.0);
  }

  const std::size_t n = profile.grid.size();
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::pow(profile.grid[i], 1.0 / kappa);
    if (s < ext_grid.front()) {
      out.values[i] = ext_values.front();  // mode-0 eigenfunctions are flat at the origin
    } else {
      out.values[i] = lagrange_value(ext_grid, ext_values, std::min(s, ext_grid.back()));
    }
  }

  double max_phi = 0.0;
  for (double v : out.values) max_phi = std::max(max_phi, std::abs(v));
  if (max_phi > 0.0) {
    for (auto& v : out.values) v /= max_phi;
  }

  const auto second = fd_second_derivative(profile.grid, out.values);
  const auto first = fd_derivative(profile.grid, out.values);
  const double scale = std::max(1.0, std::abs(out.lambda_weighted));
  double sup = 0.0;
  for (std::size_t i = 4; i + 4 < n; ++i) {
    const double r = profile.grid[i];
    const double weight = std::pow(r, alpha);
    const double res = second[i] + first[i] / r +
                       weight * nonlinearity.fprime(profile.values[i]) * out.values[i] +
                       out.lambda_weighted * weight * out.values[i];
    sup = std::max(sup, std::abs(res));
  }
  out.residual_sup = sup / scale;
  return out;
}

}  // namespace henon
