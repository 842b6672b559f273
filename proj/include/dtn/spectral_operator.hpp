#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "dtn/harmonics.hpp"

namespace dtn::spectral {

/// A linear operator on the truncated harmonic basis of S^{n-1}.
/// matrix(beta, alpha) = <Op Y_alpha, Y_beta>. The basis ordering is the
/// canonical degree-major ordering of harmonics::basis_up_to, recorded
/// explicitly so exported matrices are reproducible bit-for-bit.
struct SpectralOperator {
  int n = 3;
  int K = 0;
  std::vector<harmonics::HarmonicIndex> basis;
  Eigen::MatrixXd matrix;

  static SpectralOperator zero(int n, int K);
  static SpectralOperator diagonal(int n, int K, const std::vector<double>& per_degree);

  /// First basis offset of degree k.
  int degree_offset(int k) const;
  /// Laplace eigenvalue per basis element, in order.
  Eigen::VectorXd eigenvalues() const;

  double max_abs() const;
  double asymmetry() const;  // max |M - M^T|

  /// max-norm of the commutator [A,B].
  static double commutator_max(const SpectralOperator& a, const SpectralOperator& b);

  void write_csv(const std::string& path) const;
  void write_json(const std::string& path) const;
};

}  // namespace dtn::spectral
