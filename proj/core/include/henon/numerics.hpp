#pragma once

#include <functional>
#include <span>
#include <vector>

#include "henon/domain.hpp"

namespace henon {

/// Composite trapezoid over the grid (handles non-uniform spacing).
double trapezoid(const RadialGrid& grid, std::span<const double> integrand);

/// Composite Simpson on a uniform grid; odd interval counts get a 3/8 tail.
/// Used where identity checks need better than second order.
double simpson(const RadialGrid& grid, std::span<const double> integrand);

/// 2*pi * quadrature of values(r) * r^(weight_exponent + 1) over the grid,
/// i.e. the polar-coordinates integral of a radial function against the
/// measure |x|^weight dx.  Composite trapezoid; for a ball grid the missing
/// sliver [0, first node] is closed with the limit value 0 of the integrand
/// (requires weight_exponent > -1).
double integrate_radial(std::span<const double> values, const RadialGrid& grid,
                        double weight_exponent);

/// Simpson-based variant of the same integral, for the transform/Morse
/// identity checks whose tolerances sit below trapezoid accuracy.
double integrate_radial_simpson(std::span<const double> values, const RadialGrid& grid,
                                double weight_exponent);

/// int g(r) r^(weight_exponent + 1) dr over the grid (no angular factor):
/// Simpson body plus, when include_origin_sliver is set, a power-law closure
/// of the missing [0, first node] cell.  Requires weight_exponent > -2.
double weighted_integral(const RadialGrid& grid, std::span<const double> values,
                         double weight_exponent, bool include_origin_sliver);

/// Cubic Hermite interpolation on a grid carrying values and derivatives.
/// r must lie inside [grid.front(), grid.back()] up to a small slack.
double hermite_value(const RadialGrid& grid, std::span<const double> values,
                     std::span<const double> derivatives, double r);
double hermite_derivative(const RadialGrid& grid, std::span<const double> values,
                          std::span<const double> derivatives, double r);

/// 4-point Lagrange interpolation for derivative-free samples (eigenvectors).
double lagrange_value(const RadialGrid& grid, std::span<const double> values, double r);

/// Fourth-order finite-difference first derivative on a uniform grid
/// (one-sided stencils at the ends).
std::vector<double> fd_derivative(const RadialGrid& grid, std::span<const double> values);

/// Fourth-order finite-difference second derivative on a uniform grid.
/// Entries without a full centered stencil (two at each end) are one-sided.
std::vector<double> fd_second_derivative(const RadialGrid& grid,
                                         std::span<const double> values);

/// Number of sign changes along the samples, ignoring entries with
/// |v| <= zero_tol (boundary nodes of a Dirichlet profile are near-zero and
/// must not produce spurious changes).
int count_sign_changes(std::span<const double> values, double zero_tol);

/// Worker cap: HENON_MORSE_THREADS when set, hardware concurrency otherwise.
unsigned worker_limit();

/// Runs task(0..count-1) on up to worker_limit() threads.  Deterministic
/// output placement is the caller's job (preallocate result slots).
void run_parallel(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace henon
