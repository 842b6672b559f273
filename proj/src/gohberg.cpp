#include "dtn/gohberg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

#include "dtn/harmonics.hpp"

namespace dtn::gohberg {

namespace {

using Complex = std::complex<double>;

bool power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

void check_grid(int N) {
  if (!power_of_two(N) || N < 16)
    throw std::invalid_argument("gohberg: N must be a power of two, >= 16");
}

// frequency of storage index: 0..N/2 then -N/2+1..-1
int frequency(int idx, int N) { return idx <= N / 2 ? idx : idx - N; }

// Circulant kernel (1/N) sum_{xi} w(xi) e^{i xi 2 pi d / N} for the plus
// branch (xi >= 0, including Nyquist) and the minus branch (xi < 0).
struct BranchKernels {
  std::vector<Complex> plus, minus;
};

BranchKernels branch_kernels(int N, const std::function<double(int)>& weight) {
  BranchKernels k;
  k.plus.assign(N, Complex(0.0));
  k.minus.assign(N, Complex(0.0));
  const double step = 2.0 * harmonics::kPi / N;
  for (int idx = 0; idx < N; ++idx) {
    const int xi = frequency(idx, N);
    const double w = weight(xi);
    for (int d = 0; d < N; ++d) {
      const Complex phase = std::polar(w / N, xi * step * d);
      (xi >= 0 ? k.plus : k.minus)[d] += phase;
    }
  }
  return k;
}

Eigen::MatrixXcd assemble(const CircleSymbol& a, int N,
                          const std::function<double(int)>& weight, bool conjugate) {
  const BranchKernels k = branch_kernels(N, weight);
  Eigen::MatrixXcd m(N, N);
  const double step = 2.0 * harmonics::kPi / N;
  for (int j = 0; j < N; ++j) {
    const double x = j * step;
    Complex ap = a.plus(x), am = a.minus(x);
    if (conjugate) {
      ap = std::conj(ap);
      am = std::conj(am);
    }
    for (int l = 0; l < N; ++l) {
      const int d = (j - l + N) % N;
      m(j, l) = ap * k.plus[d] + am * k.minus[d];
    }
  }
  return m;
}

// columns of the low-frequency Fourier frame: |xi| <= mcut
Eigen::MatrixXcd low_frequency_frame(int N, int mcut) {
  const int r = 2 * mcut + 1;
  Eigen::MatrixXcd V(N, r);
  const double step = 2.0 * harmonics::kPi / N;
  int c = 0;
  for (int xi = -mcut; xi <= mcut; ++xi, ++c)
    for (int j = 0; j < N; ++j)
      V(j, c) = std::polar(1.0 / std::sqrt(static_cast<double>(N)), xi * step * j);
  return V;
}

}  // namespace

CircleSymbol CircleSymbol::constant(Complex c, int order) {
  CircleSymbol s;
  s.plus = [c](double) { return c; };
  s.minus = [c](double) { return c; };
  s.order = order;
  return s;
}

CircleSymbol CircleSymbol::from_cosine_series(const std::vector<double>& plus_coeffs,
                                              const std::vector<double>& minus_coeffs,
                                              int order) {
  CircleSymbol s;
  s.plus = [plus_coeffs](double x) {
    double v = 0.0;
    for (std::size_t j = 0; j < plus_coeffs.size(); ++j) v += plus_coeffs[j] * std::cos(j * x);
    return Complex(v);
  };
  s.minus = [minus_coeffs](double x) {
    double v = 0.0;
    for (std::size_t j = 0; j < minus_coeffs.size(); ++j)
      v += minus_coeffs[j] * std::cos(j * x);
    return Complex(v);
  };
  s.order = order;
  return s;
}

double CircleSymbol::sup_norm(int grid) const {
  double sup = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double x = 2.0 * harmonics::kPi * j / grid;
    sup = std::max({sup, std::abs(plus(x)), std::abs(minus(x))});
  }
  return sup;
}

QuantizedOperator quantize(const CircleSymbol& a, int N) {
  check_grid(N);
  return {N, assemble(a, N, [](int) { return 1.0; }, false)};
}

QuantizedOperator quantize_conjugate(const CircleSymbol& a, int N) {
  check_grid(N);
  return {N, assemble(a, N, [](int) { return 1.0; }, true)};
}

double operator_norm(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  const Eigen::MatrixXcd gram = m.adjoint() * m;
  if (n <= 1024) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  }
  // power iteration on the Gram matrix
  Eigen::VectorXcd v = Eigen::VectorXcd::Random(n);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXcd w = gram * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    const double shift = (w - v).norm();
    v = w;
    lambda = nw;
    if (shift < 1e-13) break;
  }
  return std::sqrt(lambda);
}

double gap_tolerance(int N) {
  // Band-limited concentration cannot sit exactly on a curvature-type
  // symbol maximum; the finite-section deficit scales like 1/N^2.
  return 300.0 / (static_cast<double>(N) * N);
}

GohbergGap gohberg_gap(const CircleSymbol& a, int N) {
  check_grid(N);
  if (a.order != 0) throw std::invalid_argument("gohberg_gap: order-0 symbols only");
  GohbergGap g;
  g.sup_a = a.sup_norm();
  g.op_norm = operator_norm(quantize(a, N).matrix);
  g.gap = g.op_norm - g.sup_a;
  return g;
}

std::vector<double> essential_upper_bounds(const CircleSymbol& a, int N,
                                           const std::vector<int>& m_list) {
  check_grid(N);
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    if (m_list[i] < 0 || m_list[i] >= N / 2)
      throw std::invalid_argument("essential_upper_bounds: need 0 <= m < N/2");
    if (i > 0 && m_list[i] <= m_list[i - 1])
      throw std::invalid_argument("essential_upper_bounds: m_list must increase");
  }
  const Eigen::MatrixXcd A = quantize(a, N).matrix;
  std::vector<double> out;
  out.reserve(m_list.size());
  for (int m : m_list) out.push_back(high_frequency_compression_norm(A, N, m));
  return out;
}

namespace {

double compression_norm(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& V) {
  // ||(I-P) M (I-P)|| via the low-rank structure of P = V V*.
  const Eigen::MatrixXcd VtM = V.adjoint() * m;        // r x N
  const Eigen::MatrixXcd MV = m * V;                   // N x r
  const Eigen::MatrixXcd VtMV = VtM * V;               // r x r
  Eigen::MatrixXcd q = m - V * VtM - MV * V.adjoint() + V * VtMV * V.adjoint();
  return operator_norm(q);
}

}  // namespace

double high_frequency_compression_norm(const Eigen::MatrixXcd& m, int N, int mcut) {
  return compression_norm(m, low_frequency_frame(N, mcut));
}

double annulus_compression_norm(const Eigen::MatrixXcd& m, int N, int locut, int hicut) {
  std::vector<int> kill;
  for (int idx = 0; idx < N; ++idx) {
    const int xi = frequency(idx, N);
    if (std::abs(xi) <= locut || std::abs(xi) >= N / 2 - hicut) kill.push_back(xi);
  }
  Eigen::MatrixXcd V(N, kill.size());
  const double step = 2.0 * harmonics::kPi / N;
  for (std::size_t c = 0; c < kill.size(); ++c)
    for (int j = 0; j < N; ++j)
      V(j, c) = std::polar(1.0 / std::sqrt(static_cast<double>(N)), kill[c] * step * j);
  return compression_norm(m, V);
}

std::function<Complex(double)> make_bump() {
  return [](double x) {
    const double u = (x - 0.5 * harmonics::kPi) / harmonics::kPi;
    if (u <= 0.0 || u >= 1.0) return Complex(0.0);
    return Complex(std::exp(-1.0 / (u * (1.0 - u))));
  };
}

std::function<Complex(double)> make_trig_bump(int degree) {
  return [degree](double x) {
    return Complex(std::pow(0.5 * (1.0 + std::cos(x - harmonics::kPi)), degree));
  };
}

double oscillatory_residual(const CircleSymbol& a,
                            const std::function<Complex(double)>& f, int xi0,
                            int lambda, int N) {
  check_grid(N);
  if (xi0 != 1 && xi0 != -1)
    throw std::invalid_argument("oscillatory_residual: xi0 must be +1 or -1");
  if (lambda < 1 || lambda > N / 4)
    throw std::invalid_argument(
        "oscillatory_residual: lambda must lie in 1..N/4 (grid Nyquist)");

  const double step = 2.0 * harmonics::kPi / N;
  Eigen::VectorXcd u(N);
  for (int j = 0; j < N; ++j) {
    const double x = j * step;
    u(j) = std::polar(1.0, lambda * xi0 * x) * f(x);
  }
  const Eigen::MatrixXcd A = quantize(a, N).matrix;
  Eigen::VectorXcd target(N);
  for (int j = 0; j < N; ++j) {
    const double x = j * step;
    target(j) = (xi0 > 0 ? a.plus(x) : a.minus(x)) * u(j);
  }
  const double un = u.norm();
  if (un == 0.0) throw std::invalid_argument("oscillatory_residual: zero test function");
  return (A * u - target).norm() / un;
}

double order_gap_tolerance(int N, int k) {
  return 1e-8 + 30.0 * std::max(1, k) / (static_cast<double>(N) * N);
}

OrderKGap order_k_gap(const CircleSymbol& a, int N) {
  check_grid(N);
  const int k = a.order;
  if (k < 0) throw std::invalid_argument("order_k_gap: order must be >= 0");

  // Op(a |xi|^k) composed with (1 + xi^2)^{-k/2}: a single multiplier
  // weight since both factors are Fourier multipliers.
  auto weight = [k](int xi) {
    return std::pow(std::abs(xi), k) * std::pow(1.0 + double(xi) * xi, -0.5 * k);
  };
  const Eigen::MatrixXcd T = assemble(a, N, weight, false);

  OrderKGap g;
  g.sup_a = a.sup_norm();
  double sup_plus = 0.0, sup_minus = 0.0;
  for (int j = 0; j < 4096; ++j) {
    const double x = 2.0 * harmonics::kPi * j / 4096;
    sup_plus = std::max(sup_plus, std::abs(a.plus(x)));
    sup_minus = std::max(sup_minus, std::abs(a.minus(x)));
  }
  g.reduced_sup = std::max(sup_plus * weight(N / 2), sup_minus * weight(-(N / 2 - 1)));
  g.op_norm = operator_norm(T);
  g.gap = g.sup_a - g.op_norm;
  g.reduced_gap = g.reduced_sup - g.op_norm;
  return g;
}

}  // namespace dtn::gohberg
