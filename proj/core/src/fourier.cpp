#include "henon/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "henon/numerics.hpp"

namespace henon {

AngularFourierFunction::AngularFourierFunction(RadialGrid grid, std::vector<FourierTerm> terms)
    : grid_(std::move(grid)), terms_(std::move(terms)) {
  if (grid_.size() < 2) throw std::invalid_argument("AngularFourierFunction: grid too small");
  for (const auto& term : terms_) {
    if (term.mode < 0) throw std::invalid_argument("AngularFourierFunction: negative mode");
    if (term.mode == 0 && term.parity == Parity::sine) {
      throw std::invalid_argument("AngularFourierFunction: mode 0 carries only the cosine parity");
    }
    if (term.values.size() != grid_.size() || term.derivatives.size() != grid_.size()) {
      throw std::invalid_argument("AngularFourierFunction: coefficient does not share the grid");
    }
  }
}

int AngularFourierFunction::max_mode() const {
  int m = 0;
  for (const auto& term : terms_) m = std::max(m, term.mode);
  return m;
}

bool AngularFourierFunction::is_radial() const {
  for (const auto& term : terms_) {
    if (term.mode != 0) return false;
  }
  return true;
}

double AngularFourierFunction::value_at(double radius, double angle) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    const double b = hermite_value(grid_, term.values, term.derivatives, radius);
    const double trig = term.parity == Parity::cosine ? std::cos(term.mode * angle)
                                                      : std::sin(term.mode * angle);
    sum += b * trig;
  }
  return sum;
}

FourierTerm make_term(const RadialGrid& grid, int mode, Parity parity,
                      const std::function<double(double)>& value,
                      const std::function<double(double)>& derivative) {
  FourierTerm term;
  term.mode = mode;
  term.parity = parity;
  term.values.resize(grid.size());
  term.derivatives.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    term.values[i] = value(grid[i]);
    term.derivatives[i] = derivative(grid[i]);
  }
  return term;
}

void check_dirichlet(const AngularFourierFunction& fn, const Domain& domain, double tol) {
  double scale = 1e-300;
  for (const auto& term : fn.terms()) {
    for (double v : term.values) scale = std::max(scale, std::abs(v));
  }
  for (const auto& term : fn.terms()) {
    if (std::abs(term.values.back()) > tol * scale) {
      throw std::invalid_argument("Fourier coefficient does not vanish at the outer boundary");
    }
    if (!domain.is_ball() && std::abs(term.values.front()) > tol * scale) {
      throw std::invalid_argument("Fourier coefficient does not vanish at the inner boundary");
    }
  }
}

}  // namespace henon
