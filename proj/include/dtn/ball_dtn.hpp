#pragma once

#include "dtn/spectral_operator.hpp"

namespace dtn::ball_dtn {

using spectral::SpectralOperator;

/// Dirichlet-to-Neumann map of the unit ball on the truncated harmonic
/// basis: diagonal with entry k on every degree-k basis vector.
SpectralOperator dtn_ball(int n, int K);

/// Boundary Laplacian: diagonal with entries k(k+n-2), positive sign
/// convention.
SpectralOperator boundary_laplacian(int n, int K);

/// Max-norm of Lambda^2 + (n-2) Lambda - Delta over the truncated basis;
/// exact zero in real arithmetic, <= 1e-12 in floating point.
double ball_identity_residual(int n, int K);

/// Residual functional on arbitrary operators (used by the above and by
/// perturbation sanity checks).
double identity_residual(const SpectralOperator& lambda, const SpectralOperator& delta);

}  // namespace dtn::ball_dtn
