#pragma once

#include <stdexcept>
#include <vector>

#include "henon/domain.hpp"
#include "henon/profile.hpp"

namespace henon {

/// Symmetric tridiagonal matrix (diag size n, offdiag size n-1).
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> offdiag;
  std::size_t n() const { return diag.size(); }
};

/// Number of eigenvalues strictly below shift (Sturm-sequence inertia count).
int sturm_count(const SymTridiag& matrix, double shift);

/// Exact negative-eigenvalue count of the discrete operator; eigenvalues in
/// (-tolerance, tolerance] are counted as non-negative.
int negative_count(const SymTridiag& matrix, double tolerance = 0.0);

/// q smallest eigenvalues by Sturm bisection, ascending, each bracketed to
/// the given absolute tolerance.
std::vector<double> lowest_eigenvalues(const SymTridiag& matrix, int q, double tolerance);

/// Eigenvector by inverse iteration at an eigenvalue estimate.
std::vector<double> eigenvector(const SymTridiag& matrix, double lambda);

/// One angular mode of the linearized operator about a radial solution:
/// -a'' - a'/r + (k^2/r^2) a - V(r) a = lambda w(r) a on the interior nodes,
/// with V = r^alpha f'(u) and w = r^alpha (weighted) or 1.  For a ball, k = 0
/// keeps the natural regularity at the origin (vanishing flux through r = 0)
/// and k >= 1 is pinned there by the centrifugal term; the outer boundary is
/// Dirichlet, both for an annulus.
struct ModeProblem {
  int mode = 0;
  bool weighted = false;
  double alpha = 0.0;
  Domain domain = Domain::ball(1.0);
  RadialGrid grid;                 ///< full node grid (boundary included)
  std::vector<double> potential;   ///< V on grid
};

/// Samples V = r^alpha f'(u(r)) on a fresh uniform grid of the profile's
/// domain (half-offset layout for a ball).
ModeProblem make_mode_problem(const RadialProfile& profile, const Nonlinearity& nonlinearity,
                              int mode, bool weighted, std::size_t points);

/// Discretized mode operator.  matrix is the symmetric tridiagonal obtained
/// from conservative central differences under the discrete Liouville
/// substitution b = sqrt(r) a, with the weighted case reduced to standard
/// form by the diagonal square-root similarity.  scale_back maps an
/// eigenvector of matrix to nodal values of a.
struct ModeOperator {
  SymTridiag matrix;
  RadialGrid interior;            ///< unknown nodes
  std::vector<double> scale_back;
};

/// Rejects non-uniform grids.
ModeOperator assemble_mode_operator(const ModeProblem& problem);

struct ModeSpectrum {
  int mode = 0;
  std::vector<double> eigenvalues;  ///< ascending, first q
  int negative_count = 0;
  std::size_t size = 0;             ///< discretization size
  bool degenerate = false;          ///< some |eigenvalue| <= tolerance
};

/// Assembles, counts negatives at the tolerance convention and extracts the
/// q lowest eigenvalues.
ModeSpectrum solve_mode(const ModeProblem& problem, int q, const Tolerances& tol = {});

struct MorseOptions {
  std::size_t grid_points = 4000;
  int eigenvalues_per_mode = 0;  ///< 0 = max(nodal_sets + 2, 8)
  int max_mode = 64;
  Tolerances tol;
};

struct MorseReport {
  std::vector<ModeSpectrum> per_mode;        ///< unweighted problems, k = 0..k_max
  std::vector<int> weighted_negative_counts; ///< per mode, same k range
  int radial_negative_count = 0;
  int total_index = 0;                       ///< mode 0 + 2 * sum over k >= 1
  int k_max = 0;                             ///< smallest k with zero negatives
  int theoretical_bound = 0;
  bool verdict = false;                      ///< total_index >= theoretical_bound
  bool inertia_equal = false;                ///< weighted counts match unweighted
  bool mode_monotonic = false;               ///< mu_1(k+1) > mu_1(k) throughout
  std::vector<int> degenerate_modes;
};

/// Paper lower bound applicable to the case: 3 for sign-changing solutions,
/// n+2 under superlinearity, alpha+3 for even alpha > 0, alpha+n+2 for both;
/// 1 for a positive solution of a superlinear problem.
int theoretical_bound(double alpha, bool superlinear, int nodal_sets);

/// Negative counts per angular mode until the first empty mode, assembled
/// Morse index, bound and verdict.  Requires a verified solution profile.
MorseReport morse_index(const RadialProfile& profile, const Nonlinearity& nonlinearity,
                        const MorseOptions& options = {});

struct NondegeneracyReport {
  double margin = 0.0;  ///< min |eigenvalue| over the mode-0 weighted spectrum
  double eigen_tolerance = 0.0;
  bool degenerate = false;
  bool pass = false;  ///< margin > 10 * eigen tolerance
};

/// Radial (mode-0) non-degeneracy margin of the weighted eigenproblem.
NondegeneracyReport radial_nondegeneracy(const RadialProfile& profile,
                                         const Nonlinearity& nonlinearity,
                                         const MorseOptions& options = {});

/// Degenerate-flag logic shared with the artificial-degeneracy tests.
NondegeneracyReport nondegeneracy_from_eigenvalues(const std::vector<double>& eigenvalues,
                                                   double eigen_tolerance);

struct RadialEigenpair {
  RadialGrid grid;             ///< interior nodes of the reduced problem
  std::vector<double> values;  ///< eigenfunction samples a(s)
  double lambda = 0.0;
};

struct TransportedEigenpair {
  double lambda_weighted = 0.0;     ///< lambda * ((alpha+2)/2)^2
  std::vector<double> values;       ///< phi on the target profile grid
  double residual_sup = 0.0;        ///< plug-in FD residual, normalized
};

/// Transports a mode-0 eigenpair of the reduced problem on Omega_kappa,
/// kappa = 2/(alpha+2), to the weighted problem on Omega:
/// phi(r) = psi(r^{1/kappa}), Lambda = lambda ((alpha+2)/2)^2.
TransportedEigenpair transport_radial_eigenpair(const RadialEigenpair& reduced,
                                                double alpha,
                                                const RadialProfile& profile,
                                                const Nonlinearity& nonlinearity);

}  // namespace henon
