#include "henon/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "henon/numerics.hpp"

namespace henon {

namespace {

std::vector<double> sample_lattice() {
  std::vector<double> lattice;
  for (double e = -3.0; e <= 3.0 + 1e-9; e += 0.25) {
    const double u = std::pow(10.0, e);
    lattice.push_back(u);
    lattice.push_back(-u);
  }
  return lattice;
}

}  // namespace

Nonlinearity::Nonlinearity(Fn f, Fn fprime, std::optional<double> power, bool superlinear)
    : f_(std::move(f)), fprime_(std::move(fprime)), henon_power_(power), superlinear_(superlinear) {
  if (!f_ || !fprime_) throw std::invalid_argument("Nonlinearity: missing evaluator");
  validate();
}

void Nonlinearity::validate() const {
  const auto lattice = sample_lattice();
  if (henon_power_) {
    const double p = *henon_power_;
    if (!(p > 1.0)) throw std::invalid_argument("Nonlinearity: Henon power must exceed 1");
    for (double u : lattice) {
      const double expected_f = std::pow(std::abs(u), p - 1.0) * u;
      const double expected_fp = p * std::pow(std::abs(u), p - 1.0);
      const double scale = 1.0 + std::pow(std::abs(u), p);
      if (std::abs(f_(u) - expected_f) > 1e-9 * scale ||
          std::abs(fprime_(u) - expected_fp) > 1e-9 * scale) {
        throw std::invalid_argument("Nonlinearity: evaluators disagree with the Henon form");
      }
    }
  }
  if (superlinear_) {
    for (double u : lattice) {
      const double gap = fprime_(u) - f_(u) / u;
      if (!(gap > 0.0)) {
        throw std::invalid_argument(
            "Nonlinearity: superlinear flag set but f'(u) > f(u)/u fails at u = " +
            std::to_string(u));
      }
    }
  }
}

Nonlinearity Nonlinearity::henon(double p) {
  return Nonlinearity(
      [p](double u) { return std::pow(std::abs(u), p - 1.0) * u; },
      [p](double u) { return p * std::pow(std::abs(u), p - 1.0); }, p, true);
}

Nonlinearity Nonlinearity::custom(Fn f, Fn fprime, bool superlinear) {
  return Nonlinearity(std::move(f), std::move(fprime), std::nullopt, superlinear);
}

Nonlinearity Nonlinearity::scaled(const Nonlinearity& base, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("Nonlinearity::scaled: factor must be > 0");
  auto f = base.f_;
  auto fp = base.fprime_;
  return Nonlinearity([f, factor](double u) { return factor * f(u); },
                      [fp, factor](double u) { return factor * fp(u); }, std::nullopt,
                      base.superlinear_);
}

double RadialProfile::value_at(double r) const {
  return hermite_value(grid, values, derivatives, r);
}

double RadialProfile::derivative_at(double r) const {
  return hermite_derivative(grid, values, derivatives, r);
}

double RadialProfile::max_abs_value() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double RadialProfile::max_abs_slope() const {
  double m = 0.0;
  for (double v : derivatives) m = std::max(m, std::abs(v));
  return m;
}

double ode_residual_sup(const RadialGrid& grid, std::span<const double> values,
                        std::span<const double> derivatives, double alpha,
                        const Nonlinearity& nonlinearity) {
  if (grid.size() < 6) throw std::invalid_argument("ode_residual_sup: grid too small");
  const auto second = fd_second_derivative(grid, values);
  double sup = 0.0;
  for (std::size_t i = 2; i + 2 < grid.size(); ++i) {
    const double r = grid[i];
    const double res =
        second[i] + derivatives[i] / r + std::pow(r, alpha) * nonlinearity.f(values[i]);
    sup = std::max(sup, std::abs(res));
  }
  return sup;
}

RadialProfile make_radial_profile(RadialGrid grid, std::vector<double> values,
                                  std::vector<double> derivatives, double alpha,
                                  const Nonlinearity* nonlinearity, const Tolerances& tol) {
  if (values.size() != grid.size() || derivatives.size() != grid.size()) {
    throw std::invalid_argument("make_radial_profile: grid/value length mismatch");
  }
  if (!(alpha >= 0.0)) throw std::invalid_argument("make_radial_profile: alpha must be >= 0");
  RadialProfile profile;
  profile.grid = std::move(grid);
  profile.values = std::move(values);
  profile.derivatives = std::move(derivatives);
  profile.alpha = alpha;
  const double scale = profile.max_abs_value();
  profile.nodal_sets = count_sign_changes(profile.values, 1e-8 * scale) + 1;
  if (nonlinearity != nullptr) {
    profile.residual_sup =
        ode_residual_sup(profile.grid, profile.values, profile.derivatives, alpha, *nonlinearity);
    double potential_scale = 1.0;
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
      potential_scale = std::max(
          potential_scale, std::abs(std::pow(profile.grid[i], alpha) * nonlinearity->f(profile.values[i])));
    }
    profile.residual_tol = std::max(1e4 * tol.ode, 1e-6 * potential_scale);
  }
  return profile;
}

void check_dirichlet(const RadialProfile& profile, const Domain& domain, double tol) {
  const double scale = std::max(profile.max_abs_value(), 1e-300);
  if (std::abs(profile.values.back()) > tol * scale) {
    throw std::invalid_argument("profile does not vanish at the outer boundary");
  }
  if (!domain.is_ball() && std::abs(profile.values.front()) > tol * scale) {
    throw std::invalid_argument("profile does not vanish at the inner boundary");
  }
}

RadialProfile resample_profile(const RadialProfile& profile, RadialGrid grid, double alpha,
                               const Nonlinearity* nonlinearity, const Tolerances& tol) {
  std::vector<double> values(grid.size());
  std::vector<double> derivs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = profile.value_at(grid[i]);
    derivs[i] = profile.derivative_at(grid[i]);
  }
  return make_radial_profile(std::move(grid), std::move(values), std::move(derivs), alpha,
                             nonlinearity, tol);
}

namespace {

std::string format_row(double a, double b, double c) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", a, b, c);
  return buf;
}

}  // namespace

void write_profile_csv(const std::string& path, const RadialProfile& profile,
                       std::string_view comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "r,u,du\n";
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    out << format_row(profile.grid[i], profile.values[i], profile.derivatives[i]);
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

ProfileSamples read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  ProfileSamples samples;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "r,u,du") {
        throw std::runtime_error(path + ": expected header r,u,du at line " +
                                 std::to_string(line_no));
      }
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    double r = 0.0, u = 0.0, du = 0.0;
    char c1 = 0, c2 = 0;
    if (!(row >> r >> c1 >> u >> c2 >> du) || c1 != ',' || c2 != ',') {
      throw std::runtime_error(path + ": malformed row at line " + std::to_string(line_no));
    }
    samples.grid.nodes.push_back(r);
    samples.values.push_back(u);
    samples.derivatives.push_back(du);
  }
  if (!header_seen || samples.grid.size() < 2) {
    throw std::runtime_error(path + ": no profile data");
  }
  return samples;
}

}  // namespace henon
