#pragma once

#include <cstddef>
#include <vector>

namespace henon {

/// Tolerance bundle shared across the pipeline.  One record so that runs are
/// reproducible from a single configuration.
struct Tolerances {
  double ode = 1e-10;      ///< ODE integration / shooting target accuracy
  double eigen = 1e-8;     ///< eigenvalue bisection width
  double identity = 1e-6;  ///< relative tolerance for integral identity checks
};

/// Planar ball or annulus centered at the origin.
class Domain {
 public:
  Domain(double inner_radius, double outer_radius);

  static Domain ball(double radius) { return Domain(0.0, radius); }
  static Domain annulus(double inner_radius, double outer_radius) {
    return Domain(inner_radius, outer_radius);
  }

  double inner_radius() const { return inner_; }
  double outer_radius() const { return outer_; }
  bool is_ball() const { return inner_ == 0.0; }

 private:
  double inner_;
  double outer_;
};

/// Strictly increasing radial nodes.  The last node is the outer boundary;
/// for a ball the first node is a small positive offset (the coordinate
/// singularity at r = 0 is never a node).
struct RadialGrid {
  std::vector<double> nodes;

  std::size_t size() const { return nodes.size(); }
  double front() const { return nodes.front(); }
  double back() const { return nodes.back(); }
  double operator[](std::size_t i) const { return nodes[i]; }

  bool is_uniform(double rel_tol = 1e-10) const;
  /// Uniform spacing; throws std::invalid_argument for non-uniform grids.
  double spacing() const;
};

/// Uniform grid on [max(inner_radius, origin_offset), outer_radius].
/// For a ball requires 0 < origin_offset < outer_radius / points, i.e. the
/// offset stays below the first cell width.
RadialGrid make_grid(const Domain& domain, std::size_t points, double origin_offset);

/// Same with the default ball offset R/(2*points - 1), which places the nodes
/// at half-spacing multiples (the layout the spectral discretization expects).
RadialGrid make_grid(const Domain& domain, std::size_t points);

}  // namespace henon
