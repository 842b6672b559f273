#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "dtn/ode.hpp"
#include "dtn/potentials.hpp"
#include "dtn/spectral_operator.hpp"

namespace dtn::radial {

using potentials::RadialPotential;
using spectral::SpectralOperator;

/// Zero is an interior Dirichlet eigenvalue of the Schrodinger operator:
/// the DtN map is undefined at this degree.
struct DirichletEigenvalueError : std::runtime_error {
  int degree;
  explicit DirichletEigenvalueError(int k)
      : std::runtime_error("interior Dirichlet eigenvalue hit at degree k=" +
                           std::to_string(k)),
        degree(k) {}
};

/// Regular radial mode of (Delta + q) u = 0 for u = f(r) Y_k:
///   f'' + (n-1)/r f' - k(k+n-2)/r^2 f = q f,
/// normalized by the r^k leading coefficient. mu = f'(1)/f(1).
struct RadialSolution {
  int n = 3;
  int k = 0;
  std::vector<double> r;       // accepted grid, delta0..1
  std::vector<double> f;       // f(r)
  std::vector<double> fprime;  // f'(r)
  double mu = 0.0;
};

struct SolveOptions {
  double rtol = 1e-12;
  double atol = 1e-12;
  double launch_radius = 1e-3;  // series launch point delta0
  int series_order = 12;
};

RadialSolution solve_radial_mode(const RadialPotential& q, int n, int k,
                                 const SolveOptions& opt = {});

/// Diagonal DtN operator with entry mu_k repeated across each degree block.
SpectralOperator dtn_radial(const RadialPotential& q, int n, int K,
                            const SolveOptions& opt = {});

/// Tabulation of Lambda_q as a function of the boundary Laplacian:
/// pairs (k(k+n-2), mu_k) for k = 0..K.
std::vector<std::pair<double, double>> symbol_table(const RadialPotential& q, int n, int K,
                                                    const SolveOptions& opt = {});

/// Schrodinger potential of a radial conformal factor phi (vanishing near
/// the boundary): gamma = e^{(n-2) phi}, q = (sqrt(gamma))''-type Liouville
/// potential, computed by finite differences on a radial grid. The sign is
/// fixed so that extensions solve the same radial ODE as above; see the
/// conductivity cross-check in the tests. Accuracy is O(h^2) in the grid
/// step for smooth phi.
RadialPotential q_from_conformal_factor(const RadialPotential& phi, int n,
                                        int grid_points = 2048);

}  // namespace dtn::radial
