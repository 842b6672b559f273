#pragma once

#include <random>

#include "dtn/harmonics.hpp"
#include "dtn/potentials.hpp"
#include "dtn/spectral_operator.hpp"

namespace dtn::perturbation {

using harmonics::HarmonicIndex;
using harmonics::QuadratureRule;
using potentials::BallPotential;
using potentials::RadialPotential;
using spectral::SpectralOperator;

/// Linearized-DtN section M together with its commutator against the
/// boundary Laplacian. C(b,a) = (lambda_a - lambda_b) M(b,a) vanishes on
/// diagonal degree blocks by construction. h1_l2_norm is the largest
/// singular value of C diag(1+lambda)^{-1/2}, i.e. the H^1 -> L^2 norm.
struct CommutatorReport {
  SpectralOperator M;
  Eigen::MatrixXd C;
  double h1_l2_norm = 0.0;
  double max_entry = 0.0;
};

/// Green's-formula matrix of the linearized DtN map:
///   M(b,a) = int_{B^n} q'(x) r^{k_a+k_b} Y_a(theta) Y_b(theta) dV.
/// The rule must be a ball rule for the same n.
SpectralOperator perturbative_dtn_matrix(const BallPotential& q, int n, int K,
                                         const QuadratureRule& rule);

struct AssemblyResult {
  SpectralOperator M;
  bool converged = true;         // false when refinement shifts values > 1e-8
  double refinement_shift = 0.0;
};

/// Same, plus a convergence check against a rule two levels finer.
AssemblyResult perturbative_dtn_matrix_checked(const BallPotential& q, int n, int K,
                                               const QuadratureRule& rule);

CommutatorReport commutator_report(const SpectralOperator& M);

/// Radial projection P q as the spherical average of q at each radius,
/// sampled on a uniform radial grid and splined.
RadialPotential radial_projection(const BallPotential& q, int n, const QuadratureRule& rule,
                                  int radial_samples = 257);

/// | (1/S) sum_{samples} ||q - q o R||^2  -  2 ||q - Pq||^2 |  with R drawn
/// Haar-uniformly from SO(n) using the given seed.
double rotation_identity_residual(const BallPotential& q, int n, int rotations,
                                  const QuadratureRule& rule, unsigned long seed = 0);

/// Mean of ||q - q o R||^2 over `rotations` Haar samples (exposed for
/// statistical tests).
double rotation_average(const BallPotential& q, int n, int rotations,
                        const QuadratureRule& rule, unsigned long seed);

/// int_{B^n} q * (r^k Y_u)(r^l Y_v) dV for solid harmonics u, v.
double harmonic_moment(const BallPotential& q, const HarmonicIndex& u,
                       const HarmonicIndex& v, const QuadratureRule& rule);

double l2_norm_sq(const BallPotential& q, const QuadratureRule& rule);
/// ||q - Pq||^2_{L^2(B^n)}, computed shell-exactly on the product rule.
double radial_deficit_sq(const BallPotential& q, const QuadratureRule& rule);

/// Haar-uniform rotation; acts in the xy-plane for n=2.
Eigen::Matrix3d haar_rotation(int n, std::mt19937_64& rng);

}  // namespace dtn::perturbation
