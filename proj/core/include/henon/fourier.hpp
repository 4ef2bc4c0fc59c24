#pragma once

#include <functional>
#include <vector>

#include "henon/domain.hpp"

namespace henon {

enum class Parity { cosine, sine };

/// One angular term b(r) * cos(k theta) or b(r) * sin(k theta).
struct FourierTerm {
  int mode = 0;
  Parity parity = Parity::cosine;
  std::vector<double> values;
  std::vector<double> derivatives;
};

/// Finite angular Fourier expansion over a shared radial grid.  Mode 0 only
/// carries the cosine parity.
class AngularFourierFunction {
 public:
  AngularFourierFunction(RadialGrid grid, std::vector<FourierTerm> terms);

  const RadialGrid& grid() const { return grid_; }
  const std::vector<FourierTerm>& terms() const { return terms_; }
  int max_mode() const;
  bool is_radial() const;

  double value_at(double radius, double angle) const;

 private:
  RadialGrid grid_;
  std::vector<FourierTerm> terms_;
};

/// Samples value/derivative closures on the grid into a term.
FourierTerm make_term(const RadialGrid& grid, int mode, Parity parity,
                      const std::function<double(double)>& value,
                      const std::function<double(double)>& derivative);

/// Dirichlet compatibility: coefficients vanish at the outer node (and the
/// inner node for an annulus) within tol * max coefficient scale.
void check_dirichlet(const AngularFourierFunction& fn, const Domain& domain, double tol);

}  // namespace henon
