#include "dtn/ball_dtn.hpp"

#include <stdexcept>

namespace dtn::ball_dtn {

SpectralOperator dtn_ball(int n, int K) {
  // The harmonic extension of a degree-k boundary harmonic is r^k Y_k,
  // whose radial derivative at r=1 is k Y_k.
  std::vector<double> diag(K + 1);
  for (int k = 0; k <= K; ++k) diag[k] = static_cast<double>(k);
  return SpectralOperator::diagonal(n, K, diag);
}

SpectralOperator boundary_laplacian(int n, int K) {
  std::vector<double> diag(K + 1);
  for (int k = 0; k <= K; ++k) diag[k] = static_cast<double>(k) * (k + n - 2);
  return SpectralOperator::diagonal(n, K, diag);
}

double identity_residual(const SpectralOperator& lambda, const SpectralOperator& delta) {
  if (lambda.n != delta.n || lambda.K != delta.K)
    throw std::invalid_argument("identity_residual: operators live on different bases");
  const Eigen::MatrixXd r = lambda.matrix * lambda.matrix +
                            (lambda.n - 2) * lambda.matrix - delta.matrix;
  return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
}

double ball_identity_residual(int n, int K) {
  return identity_residual(dtn_ball(n, K), boundary_laplacian(n, K));
}

}  // namespace dtn::ball_dtn
