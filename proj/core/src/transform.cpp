#include "henon/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "henon/numerics.hpp"

namespace henon {

KappaTransform::KappaTransform(double kappa) : kappa_(kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("KappaTransform: kappa must be positive");
  }
}

PolarPoint KappaTransform::apply(const PolarPoint& p) const {
  if (!(p.radius >= 0.0)) throw std::invalid_argument("KappaTransform: negative radius");
  return {std::pow(p.radius, kappa_), p.angle};
}

PolarPoint KappaTransform::apply_inverse(const PolarPoint& p) const {
  return inverse().apply(p);
}

std::array<double, 2> KappaTransform::apply_cartesian(const std::array<double, 2>& y) const {
  const double s = std::hypot(y[0], y[1]);
  if (s == 0.0) return {0.0, 0.0};
  const double factor = std::pow(s, kappa_ - 1.0);
  return {y[0] * factor, y[1] * factor};
}

double KappaTransform::jacobian_det(const std::array<double, 2>& y) const {
  const double s = std::hypot(y[0], y[1]);
  if (s == 0.0) throw std::invalid_argument("jacobian_det: undefined at y = 0");
  return kappa_ * std::pow(s, 2.0 * kappa_ - 2.0);
}

SectorTransform::SectorTransform(double kappa, int m) : kappa_(kappa), m_(m) {
  if (!(kappa > 0.0)) throw std::invalid_argument("SectorTransform: kappa must be positive");
  if (m < 1) throw std::invalid_argument("SectorTransform: m must be a positive integer");
}

PolarPoint SectorTransform::apply(const PolarPoint& p) const {
  if (!(p.radius >= 0.0)) throw std::invalid_argument("SectorTransform: negative radius");
  return {std::pow(p.radius, kappa_), p.angle / static_cast<double>(m_)};
}

PolarPoint SectorTransform::apply_inverse(const PolarPoint& p) const {
  return {std::pow(p.radius, 1.0 / kappa_), p.angle * static_cast<double>(m_)};
}

Domain map_domain(const Domain& domain, double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("map_domain: kappa must be positive");
  const double e = 1.0 / kappa;
  const double inner = domain.is_ball() ? 0.0 : std::pow(domain.inner_radius(), e);
  return Domain(inner, std::pow(domain.outer_radius(), e));
}

RadialProfile pull_back_radial(const RadialProfile& u, double kappa,
                               const Nonlinearity* reduced_nonlinearity, const Tolerances& tol) {
  if (!(kappa > 0.0)) throw std::invalid_argument("pull_back_radial: kappa must be positive");
  RadialGrid grid;
  grid.nodes.resize(u.grid.size());
  std::vector<double> values(u.grid.size());
  std::vector<double> derivs(u.grid.size());
  const double e = 1.0 / kappa;
  for (std::size_t i = 0; i < u.grid.size(); ++i) {
    const double s = std::pow(u.grid[i], e);
    grid.nodes[i] = s;
    values[i] = u.values[i];
    // v(s) = u(s^kappa)  =>  v'(s) = u'(r) * kappa * s^(kappa-1)
    derivs[i] = u.derivatives[i] * kappa * std::pow(s, kappa - 1.0);
  }
  return make_radial_profile(std::move(grid), std::move(values), std::move(derivs), 0.0,
                             reduced_nonlinearity, tol);
}

namespace {

// Coefficient evaluation with a power-law extension below the first node
// (ball grids exclude the origin; b ~ s^min(k,3) there).
double eval_coeff(const RadialGrid& grid, const FourierTerm& term, double s) {
  if (s < grid.front()) {
    const double power = term.mode == 0 ? 0.0 : static_cast<double>(std::min(term.mode, 3));
    return term.values.front() * std::pow(s / grid.front(), power);
  }
  const double s_clamped = std::min(s, grid.back());
  return hermite_value(grid, term.values, term.derivatives, s_clamped);
}

double eval_coeff_deriv(const RadialGrid& grid, const FourierTerm& term, double s) {
  if (s < grid.front()) {
    const double s0 = grid.front();
    if (term.mode == 0) return 0.0;
    const double power = static_cast<double>(std::min(term.mode, 3));
    return term.values.front() * power * std::pow(s / s0, power - 1.0) / s0;
  }
  const double s_clamped = std::min(s, grid.back());
  return hermite_derivative(grid, term.values, term.derivatives, s_clamped);
}

constexpr std::size_t kAngularSamples = 256;

// 2D polar integral int int h(F(psi(s,sigma))) s^(w+1) ds dsigma via periodic
// trapezoid in sigma and Simpson + origin closure in s.
double polar_integral(const AngularFourierFunction& psi, const RadialGrid& grid, bool is_ball,
                      const std::function<double(double)>& pointwise, double weight_exponent) {
  const std::size_t n_theta = kAngularSamples;
  const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(n_theta);
  std::vector<double> g(grid.size(), 0.0);
  std::vector<double> sample(grid.size());
  for (std::size_t j = 0; j < n_theta; ++j) {
    const double theta = dtheta * static_cast<double>(j);
    for (std::size_t i = 0; i < grid.size(); ++i) sample[i] = 0.0;
    for (const auto& term : psi.terms()) {
      const double trig = term.parity == Parity::cosine ? std::cos(term.mode * theta)
                                                        : std::sin(term.mode * theta);
      for (std::size_t i = 0; i < grid.size(); ++i) sample[i] += term.values[i] * trig;
    }
    for (std::size_t i = 0; i < grid.size(); ++i) g[i] += pointwise(sample[i]);
  }
  for (auto& v : g) v *= dtheta;
  return weighted_integral(grid, g, weight_exponent, is_ball);
}

AngularFourierFunction map_terms(const AngularFourierFunction& psi, const SectorTransform& t) {
  const double kappa = t.kappa();
  RadialGrid grid;
  grid.nodes.resize(psi.grid().size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.nodes[i] = std::pow(psi.grid()[i], kappa);
  }
  std::vector<FourierTerm> terms;
  terms.reserve(psi.terms().size());
  const double e = 1.0 / kappa;
  for (const auto& src : psi.terms()) {
    FourierTerm term;
    term.mode = src.mode * t.m();
    term.parity = src.parity;
    term.values = src.values;
    term.derivatives.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double r = grid.nodes[i];
      // a(r) = b(r^{1/kappa})  =>  a'(r) = b'(s) * (1/kappa) * r^{1/kappa - 1}
      term.derivatives[i] = src.derivatives[i] * e * std::pow(r, e - 1.0);
    }
    terms.push_back(std::move(term));
  }
  return AngularFourierFunction(std::move(grid), std::move(terms));
}

}  // namespace

AngularFourierFunction push_forward_fourier(const AngularFourierFunction& psi,
                                            const SectorTransform& transform) {
  return map_terms(psi, transform);
}

AngularFourierFunction push_forward_fourier(const AngularFourierFunction& psi,
                                            const SectorTransform& transform,
                                            const RadialGrid& target_grid) {
  const double e = 1.0 / transform.kappa();
  const double s_max = psi.grid().back();
  if (std::pow(target_grid.back(), e) > s_max * (1.0 + 1e-9)) {
    throw std::invalid_argument(
        "push_forward_fourier: coefficient grid does not cover the mapped domain");
  }
  std::vector<FourierTerm> terms;
  terms.reserve(psi.terms().size());
  for (const auto& src : psi.terms()) {
    FourierTerm term;
    term.mode = src.mode * transform.m();
    term.parity = src.parity;
    term.values.resize(target_grid.size());
    term.derivatives.resize(target_grid.size());
    for (std::size_t i = 0; i < target_grid.size(); ++i) {
      const double r = target_grid[i];
      const double s = std::pow(r, e);
      term.values[i] = eval_coeff(psi.grid(), src, s);
      term.derivatives[i] = eval_coeff_deriv(psi.grid(), src, s) * e * std::pow(r, e - 1.0);
    }
    terms.push_back(std::move(term));
  }
  return AngularFourierFunction(target_grid, std::move(terms));
}

namespace {

IdentityReport make_report(double lhs, double rhs, double tolerance) {
  IdentityReport report;
  report.lhs = lhs;
  report.rhs = rhs;
  report.tolerance = tolerance;
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  report.rel_error = std::abs(lhs - rhs) / scale;
  report.pass = report.rel_error <= tolerance;
  return report;
}

IdentityReport check_composition(const AngularFourierFunction& psi, const Domain& domain_kappa,
                                 double kappa, const std::function<double(double)>& pointwise,
                                 double tolerance) {
  const Domain omega = Domain(domain_kappa.is_ball() ? 0.0
                                                     : std::pow(domain_kappa.inner_radius(), kappa),
                              std::pow(domain_kappa.outer_radius(), kappa));
  const double lhs = polar_integral(psi, psi.grid(), domain_kappa.is_ball(), pointwise, 0.0);

  // phi = psi o T^{-1} sampled on a uniform grid of Omega.
  const auto phi = push_forward_fourier(psi, SectorTransform(kappa, 1),
                                        make_grid(omega, psi.grid().size()));
  const double weight = (2.0 - 2.0 * kappa) / kappa;
  const double rhs =
      polar_integral(phi, phi.grid(), omega.is_ball(), pointwise, weight) / kappa;
  return make_report(lhs, rhs, tolerance);
}

}  // namespace

IdentityReport verify_lr_identity(const AngularFourierFunction& psi, const Domain& domain_kappa,
                                  double kappa, double exponent, double tolerance) {
  if (!(exponent >= 1.0)) throw std::invalid_argument("verify_lr_identity: exponent must be >= 1");
  return check_composition(
      psi, domain_kappa, kappa,
      [exponent](double v) { return std::pow(std::abs(v), exponent); }, tolerance);
}

IdentityReport verify_composition_identity(const AngularFourierFunction& psi,
                                           const Domain& domain_kappa, double kappa,
                                           const std::function<double(double)>& F,
                                           double tolerance) {
  return check_composition(psi, domain_kappa, kappa, F, tolerance);
}

H1Report verify_h1_identities(const AngularFourierFunction& psi, const Domain& domain_kappa,
                              double kappa, double tolerance) {
  H1Report report;
  report.lower_factor = std::min(kappa, 1.0 / kappa);
  report.upper_factor = std::max(kappa, 1.0 / kappa);
  report.tolerance = tolerance;
  report.radial = psi.is_radial();

  const bool ball = domain_kappa.is_ball();
  const auto& s_grid = psi.grid();

  // Dirichlet energy per mode: pi c_k int (b'^2 + k^2 b^2/s^2) s ds.
  double energy_psi = 0.0;
  for (const auto& term : psi.terms()) {
    const double c_k = term.mode == 0 ? 2.0 : 1.0;
    std::vector<double> dsq(s_grid.size());
    for (std::size_t i = 0; i < s_grid.size(); ++i) dsq[i] = term.derivatives[i] * term.derivatives[i];
    double e = weighted_integral(s_grid, dsq, 0.0, ball);
    if (term.mode > 0) {
      std::vector<double> vsq(s_grid.size());
      for (std::size_t i = 0; i < s_grid.size(); ++i) vsq[i] = term.values[i] * term.values[i];
      e += static_cast<double>(term.mode) * static_cast<double>(term.mode) *
           weighted_integral(s_grid, vsq, -2.0, ball);
    }
    energy_psi += std::numbers::pi * c_k * e;
  }

  const Domain omega = Domain(ball ? 0.0 : std::pow(domain_kappa.inner_radius(), kappa),
                              std::pow(domain_kappa.outer_radius(), kappa));
  const auto phi =
      push_forward_fourier(psi, SectorTransform(kappa, 1), make_grid(omega, s_grid.size()));
  double energy_phi = 0.0;
  for (const auto& term : phi.terms()) {
    const double c_k = term.mode == 0 ? 2.0 : 1.0;
    std::vector<double> dsq(phi.grid().size());
    for (std::size_t i = 0; i < phi.grid().size(); ++i) {
      dsq[i] = term.derivatives[i] * term.derivatives[i];
    }
    double e = weighted_integral(phi.grid(), dsq, 0.0, omega.is_ball());
    if (term.mode > 0) {
      std::vector<double> vsq(phi.grid().size());
      for (std::size_t i = 0; i < phi.grid().size(); ++i) {
        vsq[i] = term.values[i] * term.values[i];
      }
      e += static_cast<double>(term.mode) * static_cast<double>(term.mode) *
           weighted_integral(phi.grid(), vsq, -2.0, omega.is_ball());
    }
    energy_phi += std::numbers::pi * c_k * e;
  }

  report.energy_psi = energy_psi;
  report.energy_phi = energy_phi;
  const double slack = 1e-9 * std::max(energy_psi, energy_phi);
  report.sandwich_pass = energy_psi >= report.lower_factor * energy_phi - slack &&
                         energy_psi <= report.upper_factor * energy_phi + slack;
  report.pass = report.sandwich_pass;
  if (report.radial) {
    report.radial_equality_rel_error =
        std::abs(energy_psi - kappa * energy_phi) / std::max(energy_psi, 1e-300);
    report.pass = report.pass && report.radial_equality_rel_error <= tolerance;
  }
  return report;
}

}  // namespace henon
