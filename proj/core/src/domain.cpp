#include "henon/domain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace henon {

Domain::Domain(double inner_radius, double outer_radius)
    : inner_(inner_radius), outer_(outer_radius) {
  if (!(inner_ >= 0.0) || !std::isfinite(inner_) || !std::isfinite(outer_)) {
    throw std::invalid_argument("Domain: inner radius must be finite and >= 0");
  }
  if (!(inner_ < outer_)) {
    throw std::invalid_argument("Domain: inner < outer required");
  }
}

bool RadialGrid::is_uniform(double rel_tol) const {
  if (nodes.size() < 3) return true;
  const double h = nodes[1] - nodes[0];
  const double scale = nodes.back() - nodes.front();
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    if (std::abs(nodes[i + 1] - nodes[i] - h) > rel_tol * scale) return false;
  }
  return true;
}

double RadialGrid::spacing() const {
  if (nodes.size() < 2) throw std::invalid_argument("RadialGrid: spacing needs >= 2 nodes");
  if (!is_uniform()) throw std::invalid_argument("RadialGrid: non-uniform grid");
  return (nodes.back() - nodes.front()) / static_cast<double>(nodes.size() - 1);
}

RadialGrid make_grid(const Domain& domain, std::size_t points, double origin_offset) {
  if (points < 2) {
    throw std::invalid_argument("make_grid: at least 2 points required, got " +
                                std::to_string(points));
  }
  double start = domain.inner_radius();
  if (domain.is_ball()) {
    if (!(origin_offset > 0.0)) {
      throw std::invalid_argument("make_grid: ball grids need a positive origin offset");
    }
    if (!(origin_offset < domain.outer_radius() / static_cast<double>(points))) {
      throw std::invalid_argument("make_grid: origin offset reaches past the first cell width");
    }
    start = origin_offset;
  } else {
    start = std::max(domain.inner_radius(), origin_offset);
  }

  RadialGrid grid;
  grid.nodes.resize(points);
  const double h = (domain.outer_radius() - start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid.nodes[i] = start + h * static_cast<double>(i);
  }
  grid.nodes.back() = domain.outer_radius();
  return grid;
}

RadialGrid make_grid(const Domain& domain, std::size_t points) {
  const double offset =
      domain.is_ball() ? domain.outer_radius() / (2.0 * static_cast<double>(points) - 1.0) : 0.0;
  return make_grid(domain, points, offset);
}

}  // namespace henon
