#pragma once

#include <array>
#include <functional>
#include <optional>

#include "henon/domain.hpp"
#include "henon/fourier.hpp"
#include "henon/profile.hpp"

namespace henon {

struct PolarPoint {
  double radius = 0.0;
  double angle = 0.0;
};

/// The planar map y -> y |y|^{kappa-1}, i.e. (s, sigma) -> (s^kappa, sigma)
/// in polar coordinates.  Its inverse is the same map with 1/kappa.
class KappaTransform {
 public:
  explicit KappaTransform(double kappa);

  double kappa() const { return kappa_; }
  KappaTransform inverse() const { return KappaTransform(1.0 / kappa_); }

  PolarPoint apply(const PolarPoint& p) const;
  PolarPoint apply_inverse(const PolarPoint& p) const;
  std::array<double, 2> apply_cartesian(const std::array<double, 2>& y) const;

  /// |det J| = kappa |y|^{2 kappa - 2}; rejects y = 0.
  double jacobian_det(const std::array<double, 2>& y) const;

 private:
  double kappa_;
};

/// The polar map (s, sigma) -> (s^kappa, sigma/m).  m = 1 reduces to
/// KappaTransform; with kappa = 1/m it intertwines the |x|^{2(m-1)}-weighted
/// Laplacian with the plain one.
class SectorTransform {
 public:
  SectorTransform(double kappa, int m);

  double kappa() const { return kappa_; }
  int m() const { return m_; }

  PolarPoint apply(const PolarPoint& p) const;
  PolarPoint apply_inverse(const PolarPoint& p) const;

 private:
  double kappa_;
  int m_;
};

/// Image domain of the inverse map: radii R -> R^{1/kappa}.
Domain map_domain(const Domain& domain, double kappa);

/// v(s) = u(s^kappa) on the image grid s_i = r_i^{1/kappa}.  Values are
/// carried over node-by-node, derivatives by the chain rule; nodal sets are
/// preserved.  The result belongs to the unweighted (alpha = 0) reduced
/// equation, so the residual is recomputed only when a reduced nonlinearity
/// is supplied.
RadialProfile pull_back_radial(const RadialProfile& u, double kappa,
                               const Nonlinearity* reduced_nonlinearity = nullptr,
                               const Tolerances& tol = {});

/// phi(r, theta) = psi(T^{-1}(r, theta)) for T = SectorTransform(kappa, m):
/// mode k becomes mode m*k with coefficient b_k(r^{1/kappa}) on the image
/// grid r_i = s_i^kappa.
AngularFourierFunction push_forward_fourier(const AngularFourierFunction& psi,
                                            const SectorTransform& transform);

/// Same, resampled onto an explicit target grid (cubic Hermite).  Rejects
/// target grids that reach outside the mapped coefficient support.
AngularFourierFunction push_forward_fourier(const AngularFourierFunction& psi,
                                            const SectorTransform& transform,
                                            const RadialGrid& target_grid);

/// Both sides of an identity plus the discrepancy; never a bare boolean.
struct IdentityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Lr identity: int_{Omega_k} |psi|^q dy = kappa^{-1} int_Omega |phi|^q
/// |x|^{(2-2kappa)/kappa} dx, checked by independent 2D polar quadratures on
/// both sides.  domain_kappa is the domain psi lives on (Omega_k).
IdentityReport verify_lr_identity(const AngularFourierFunction& psi,
                                  const Domain& domain_kappa, double kappa,
                                  double exponent, double tolerance);

/// Composition identity for a continuous F: int F(psi) dy =
/// kappa^{-1} int F(phi) |x|^{(2-2kappa)/kappa} dx.
IdentityReport verify_composition_identity(const AngularFourierFunction& psi,
                                           const Domain& domain_kappa, double kappa,
                                           const std::function<double(double)>& F,
                                           double tolerance);

struct H1Report {
  double energy_psi = 0.0;      ///< int |grad psi|^2 over Omega_k
  double energy_phi = 0.0;      ///< int |grad phi|^2 over Omega
  double lower_factor = 0.0;    ///< min(kappa, 1/kappa)
  double upper_factor = 0.0;    ///< max(kappa, 1/kappa)
  bool sandwich_pass = false;
  bool radial = false;
  /// |energy_psi - kappa * energy_phi| / energy_psi for radial psi.
  double radial_equality_rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Dirichlet-energy two-sided bound, with the exact factor-kappa equality
/// asserted when psi is radial.  Energies are evaluated per Fourier mode via
/// 1D quadrature of b'^2 + k^2 b^2 / s^2 against s ds.
H1Report verify_h1_identities(const AngularFourierFunction& psi,
                              const Domain& domain_kappa, double kappa,
                              double tolerance);

}  // namespace henon
