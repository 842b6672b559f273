#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

namespace dtn::gohberg {

/// Degree-0-homogeneous symbol a(x, xi) on the circle, stored as its two
/// branches a(x, +1) and a(x, -1). For order-k symbols the branches are
/// the |xi|^{-k}-normalized principal parts.
struct CircleSymbol {
  std::function<std::complex<double>(double)> plus;
  std::function<std::complex<double>(double)> minus;
  int order = 0;

  static CircleSymbol constant(std::complex<double> c, int order = 0);
  /// Branch values from cosine-series coefficients: sum c_j cos(j x).
  static CircleSymbol from_cosine_series(const std::vector<double>& plus_coeffs,
                                         const std::vector<double>& minus_coeffs,
                                         int order = 0);

  /// sup over x of max(|a(x,+1)|, |a(x,-1)|), dense-grid evaluation.
  double sup_norm(int grid = 8192) const;
};

/// Dense matrix of Op(a) on the N-point circle grid: per-branch Fourier
/// multiplication followed by pointwise multiplication in x. The xi = 0
/// mode (and the Nyquist mode) belong to the plus branch.
struct QuantizedOperator {
  int N = 0;
  Eigen::MatrixXcd matrix;
};

/// N must be a power of two, >= 16.
QuantizedOperator quantize(const CircleSymbol& a, int N);

/// Operator 2-norm (largest singular value); dense solve for N <= 1024,
/// power iteration above.
double operator_norm(const Eigen::MatrixXcd& m);

struct GohbergGap {
  double sup_a = 0;    // ||a||_inf
  double op_norm = 0;  // ||Op(a)||_2
  double gap = 0;      // op_norm - sup_a; >= -tol(N)
};
GohbergGap gohberg_gap(const CircleSymbol& a, int N);
/// Discretization allowance for the lower bound at grid size N.
double gap_tolerance(int N);

/// ||A - K_m||_2 for the finite-rank compressions K_m = A P_m + P_m A
/// - P_m A P_m, P_m the projection onto frequencies |xi| <= m. Each value
/// upper-bounds the essential norm; all must stay above ||a||_inf.
std::vector<double> essential_upper_bounds(const CircleSymbol& a, int N,
                                           const std::vector<int>& m_list);

/// Relative L^2 residual ||A u - a(., xi0) u|| / ||u|| for the
/// oscillatory family u(x) = e^{i lambda xi0 x} f(x).
/// f: smooth bump by default (see make_bump / make_trig_bump).
double oscillatory_residual(const CircleSymbol& a,
                            const std::function<std::complex<double>(double)>& f,
                            int xi0, int lambda, int N);

/// Standard C-infinity bump supported on half the circle.
std::function<std::complex<double>(double)> make_bump();
/// Trig-polynomial bump (0.5 (1 + cos(x - pi)))^degree, bandwidth = degree.
std::function<std::complex<double>(double)> make_trig_bump(int degree = 4);

/// Order-k bound via the corollary reduction: builds Op(a |xi|^k),
/// composes with the multiplier (1 + xi^2)^{-k/2} and returns
/// ||a||_inf - ||composed||_2 (the signed gap, <= order_gap_tolerance).
/// Also exposes the reduced order-0 grid symbol sup for the exact
/// realized-frequency comparison.
struct OrderKGap {
  double sup_a = 0;          // sup of the normalized principal symbol
  double reduced_sup = 0;    // sup over grid xi of |a| |xi|^k (1+xi^2)^{-k/2}
  double op_norm = 0;        // H^k -> L^2 norm of the reduction
  double gap = 0;            // sup_a - op_norm
  double reduced_gap = 0;    // reduced_sup - op_norm
};
OrderKGap order_k_gap(const CircleSymbol& a, int N);
double order_gap_tolerance(int N, int k);

/// Matrix of Op with per-branch conjugated symbol (adjoint check helper).
QuantizedOperator quantize_conjugate(const CircleSymbol& a, int N);
/// ||Q_m M Q_m||_2 with Q_m the projection onto |xi| > m.
double high_frequency_compression_norm(const Eigen::MatrixXcd& m, int N, int mcut);
/// ||Q M Q||_2 with Q keeping locut < |xi| < N/2 - hicut: removes both
/// spectral cuts of the discrete circle model (origin and Nyquist wrap).
double annulus_compression_norm(const Eigen::MatrixXcd& m, int N, int locut, int hicut);

}  // namespace dtn::gohberg
