#include "dtn/radial_schrodinger.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace dtn::radial {

namespace {

// Taylor coefficients q_i of q(r) = sum q_i r^i at r = 0, i = 0..3, by
// one-sided finite differences. Order 3 is enough: higher terms enter the
// series launch only at O(delta0^6).
std::array<double, 4> q_taylor(const RadialPotential& q) {
  const double h = 0.02;
  double s[5];
  for (int i = 0; i < 5; ++i) s[i] = q(i * h);
  std::array<double, 4> c{};
  c[0] = s[0];
  c[1] = (-25.0 * s[0] + 48.0 * s[1] - 36.0 * s[2] + 16.0 * s[3] - 3.0 * s[4]) / (12.0 * h);
  const double d2 =
      (35.0 * s[0] - 104.0 * s[1] + 114.0 * s[2] - 56.0 * s[3] + 11.0 * s[4]) / (12.0 * h * h);
  const double d3 =
      (-5.0 * s[0] + 18.0 * s[1] - 24.0 * s[2] + 14.0 * s[3] - 3.0 * s[4]) / (2.0 * h * h * h);
  c[2] = d2 / 2.0;
  c[3] = d3 / 6.0;
  return c;
}

// Series launch for w with f = r^k w:
//   w'' + (2k+n-1)/r w' = q w,  w = sum c_j r^j, c_0 = 1, c_1 = 0,
//   j (j + 2k+n-2) c_j = sum_i q_i c_{j-2-i}.
void series_launch(const std::array<double, 4>& qc, int n, int k, int order, double r,
                   double& w, double& wp) {
  std::vector<double> c(order + 1, 0.0);
  c[0] = 1.0;
  for (int j = 2; j <= order; ++j) {
    double rhs = 0.0;
    for (int i = 0; i <= std::min(3, j - 2); ++i) rhs += qc[i] * c[j - 2 - i];
    c[j] = rhs / (static_cast<double>(j) * (j + 2.0 * k + n - 2.0));
  }
  w = 0.0;
  wp = 0.0;
  for (int j = order; j >= 1; --j) {
    w = (w + c[j]) * r;
    wp = (wp + j * c[j]) * (j > 1 ? r : 1.0);
  }
  // Horner above accumulates sum_{j>=1} c_j r^j and sum j c_j r^{j-1}.
  w += c[0];
}

}  // namespace

RadialSolution solve_radial_mode(const RadialPotential& q, int n, int k,
                                 const SolveOptions& opt) {
  if (n != 2 && n != 3) throw std::invalid_argument("solve_radial_mode: n must be 2 or 3");
  if (k < 0) throw std::invalid_argument("solve_radial_mode: negative degree");

  const double delta0 = opt.launch_radius;
  const auto qc = q_taylor(q);
  double w0, p0;
  series_launch(qc, n, k, opt.series_order, delta0, w0, p0);

  const double damping = 2.0 * k + n - 1.0;
  auto rhs = [&q, damping](double r, const double* y, double* dy) {
    dy[0] = y[1];
    dy[1] = q(r) * y[0] - damping / r * y[1];
  };
  const auto traj = ode::integrate_dopri5(rhs, delta0, 1.0, w0, p0, opt.rtol, opt.atol);

  RadialSolution sol;
  sol.n = n;
  sol.k = k;
  sol.r.reserve(traj.size());
  sol.f.reserve(traj.size());
  sol.fprime.reserve(traj.size());
  double fmax = 0.0;
  for (const auto& s : traj) {
    const double rk = std::pow(s.t, k);
    const double f = rk * s.y0;
    const double fp = (k > 0 ? k * std::pow(s.t, k - 1) * s.y0 : 0.0) + rk * s.y1;
    sol.r.push_back(s.t);
    sol.f.push_back(f);
    sol.fprime.push_back(fp);
    fmax = std::max(fmax, std::abs(f));
  }
  const double f1 = sol.f.back();
  if (std::abs(f1) < 1e-10 * fmax) throw DirichletEigenvalueError(k);
  sol.mu = sol.fprime.back() / f1;
  return sol;
}

SpectralOperator dtn_radial(const RadialPotential& q, int n, int K,
                            const SolveOptions& opt) {
  std::vector<double> mu(K + 1);
  for (int k = 0; k <= K; ++k) mu[k] = solve_radial_mode(q, n, k, opt).mu;
  return SpectralOperator::diagonal(n, K, mu);
}

std::vector<std::pair<double, double>> symbol_table(const RadialPotential& q, int n, int K,
                                                    const SolveOptions& opt) {
  std::vector<std::pair<double, double>> table;
  table.reserve(K + 1);
  for (int k = 0; k <= K; ++k) {
    const double lambda = static_cast<double>(k) * (k + n - 2);
    table.emplace_back(lambda, solve_radial_mode(q, n, k, opt).mu);
  }
  return table;
}

RadialPotential q_from_conformal_factor(const RadialPotential& phi, int n,
                                        int grid_points) {
  if (grid_points < 16) throw std::invalid_argument("q_from_conformal_factor: grid too coarse");
  const double h = 1.0 / grid_points;
  const double exponent = 0.5 * (n - 2);

  std::vector<double> psi(grid_points + 2);
  for (int i = 0; i <= grid_points + 1; ++i)
    psi[i] = std::exp(exponent * phi(std::min(1.0, i * h)));

  std::vector<double> r(grid_points + 1), qv(grid_points + 1);
  // r = 0 limit: psi'(0) = 0 and (n-1)/r psi' -> (n-1) psi'', so
  // q(0) = n psi''(0)/psi(0) with psi''(0) from the even extension.
  r[0] = 0.0;
  qv[0] = n * 2.0 * (psi[1] - psi[0]) / (h * h) / psi[0];
  for (int i = 1; i <= grid_points; ++i) {
    r[i] = i * h;
    const double d1 = (psi[i + 1] - psi[i - 1]) / (2.0 * h);
    const double d2 = (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) / (h * h);
    qv[i] = (d2 + (n - 1) / r[i] * d1) / psi[i];
  }

  RadialPotential q = potentials::radial_spline(std::move(r), std::move(qv),
                                                "liouville(" + phi.description + ")");
  q.support_radius = phi.support_radius;
  return q;
}

}  // namespace dtn::radial
