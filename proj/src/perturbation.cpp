#include "dtn/perturbation.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace dtn::perturbation {

namespace {

void require_ball_rule(const QuadratureRule& rule, int n) {
  if (rule.domain != harmonics::Domain::Ball || rule.n != n)
    throw std::invalid_argument("expected a ball quadrature rule for n=" + std::to_string(n));
  if (rule.shell_count <= 0 || rule.angular_count <= 0 ||
      static_cast<std::size_t>(rule.shell_count) * rule.angular_count != rule.nodes.size())
    throw std::invalid_argument("ball rule is missing its shell structure");
}

// Node indices grouped by radial shell (the ball rules are shell-major
// products, so this is a reshape).
std::vector<std::vector<std::size_t>> shells(const QuadratureRule& rule) {
  std::vector<std::vector<std::size_t>> out(rule.shell_count);
  for (int s = 0; s < rule.shell_count; ++s) {
    out[s].resize(rule.angular_count);
    for (int j = 0; j < rule.angular_count; ++j)
      out[s][j] = static_cast<std::size_t>(s) * rule.angular_count + j;
  }
  return out;
}

}  // namespace

SpectralOperator perturbative_dtn_matrix(const BallPotential& q, int n, int K,
                                         const QuadratureRule& rule) {
  require_ball_rule(rule, n);
  SpectralOperator M = SpectralOperator::zero(n, K);
  const auto& basis = M.basis;
  const std::size_t B = basis.size();

  // Harmonics depend only on the angular direction, shared across shells.
  const int SA = rule.angular_count;
  std::vector<std::vector<double>> Y(SA);
  for (int j = 0; j < SA; ++j) {
    const Eigen::Vector3d& x = rule.nodes[j];
    Y[j] = harmonics::eval_all(n, K, x / x.norm());
  }

  Eigen::MatrixXd G(B, B);
  std::vector<double> rpow(2 * K + 1);
  for (int s = 0; s < rule.shell_count; ++s) {
    const std::size_t base = static_cast<std::size_t>(s) * SA;
    const double r = rule.nodes[base].norm();
    G.setZero();
    for (int j = 0; j < SA; ++j) {
      const double wq = rule.weights[base + j] * q(rule.nodes[base + j]);
      if (wq == 0.0) continue;
      const auto& Yj = Y[j];
      for (std::size_t b = 0; b < B; ++b) {
        const double yb = wq * Yj[b];
        for (std::size_t a = 0; a <= b; ++a) G(b, a) += yb * Yj[a];
      }
    }
    rpow[0] = 1.0;
    for (int j = 1; j <= 2 * K; ++j) rpow[j] = rpow[j - 1] * r;
    for (std::size_t b = 0; b < B; ++b)
      for (std::size_t a = 0; a <= b; ++a) {
        const double v = G(b, a) * rpow[basis[a].k + basis[b].k];
        M.matrix(b, a) += v;
        if (a != b) M.matrix(a, b) += v;
      }
  }
  return M;
}

AssemblyResult perturbative_dtn_matrix_checked(const BallPotential& q, int n, int K,
                                               const QuadratureRule& rule) {
  AssemblyResult res;
  res.M = perturbative_dtn_matrix(q, n, K, rule);
  const auto finer = harmonics::quadrature(harmonics::Domain::Ball, n, rule.level + 2);
  const SpectralOperator M2 = perturbative_dtn_matrix(q, n, K, finer);
  res.refinement_shift = (res.M.matrix - M2.matrix).cwiseAbs().maxCoeff();
  res.converged = res.refinement_shift <= 1e-8;
  return res;
}

CommutatorReport commutator_report(const SpectralOperator& M) {
  CommutatorReport rep;
  rep.M = M;
  const Eigen::VectorXd lam = M.eigenvalues();
  const Eigen::Index B = M.matrix.rows();
  rep.C.resize(B, B);
  for (Eigen::Index b = 0; b < B; ++b)
    for (Eigen::Index a = 0; a < B; ++a)
      rep.C(b, a) = (lam(a) - lam(b)) * M.matrix(b, a);
  rep.max_entry = B > 0 ? rep.C.cwiseAbs().maxCoeff() : 0.0;

  Eigen::MatrixXd scaled = rep.C;
  for (Eigen::Index a = 0; a < B; ++a) scaled.col(a) /= std::sqrt(1.0 + lam(a));
  rep.h1_l2_norm =
      B > 0 ? Eigen::JacobiSVD<Eigen::MatrixXd>(scaled).singularValues()(0) : 0.0;
  return rep;
}

RadialPotential radial_projection(const BallPotential& q, int n, const QuadratureRule& rule,
                                  int radial_samples) {
  if (radial_samples < 2) throw std::invalid_argument("radial_projection: need >= 2 samples");
  const QuadratureRule sphere =
      rule.domain == harmonics::Domain::Sphere
          ? rule
          : harmonics::quadrature(harmonics::Domain::Sphere, n, rule.level);
  const double area = sphere.weight_sum();

  std::vector<double> r(radial_samples), v(radial_samples);
  for (int i = 0; i < radial_samples; ++i) {
    const double ri = static_cast<double>(i) / (radial_samples - 1);
    double s = 0.0;
    for (std::size_t j = 0; j < sphere.nodes.size(); ++j)
      s += sphere.weights[j] * q(ri * sphere.nodes[j]);
    r[i] = ri;
    v[i] = s / area;
  }
  RadialPotential p =
      potentials::radial_spline(std::move(r), std::move(v), "P(" + q.description + ")");
  p.support_radius = q.support_radius;
  return p;
}

double l2_norm_sq(const BallPotential& q, const QuadratureRule& rule) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double qi = q(rule.nodes[i]);
    s += rule.weights[i] * qi * qi;
  }
  return s;
}

double radial_deficit_sq(const BallPotential& q, const QuadratureRule& rule) {
  require_ball_rule(rule, rule.n);
  double total = 0.0;
  for (const auto& shell : shells(rule)) {
    double wsum = 0.0, mean = 0.0;
    std::vector<double> vals(shell.size());
    for (std::size_t j = 0; j < shell.size(); ++j) {
      vals[j] = q(rule.nodes[shell[j]]);
      wsum += rule.weights[shell[j]];
      mean += rule.weights[shell[j]] * vals[j];
    }
    mean /= wsum;
    for (std::size_t j = 0; j < shell.size(); ++j) {
      const double d = vals[j] - mean;
      total += rule.weights[shell[j]] * d * d;
    }
  }
  return total;
}

Eigen::Matrix3d haar_rotation(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (n == 2) {
    const double t = 2.0 * harmonics::kPi * unif(rng);
    Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
    R(0, 0) = std::cos(t);
    R(0, 1) = -std::sin(t);
    R(1, 0) = std::sin(t);
    R(1, 1) = std::cos(t);
    return R;
  }
  if (n != 3) throw std::invalid_argument("haar_rotation: n must be 2 or 3");
  // Shoemake's uniform quaternion.
  const double u1 = unif(rng), u2 = unif(rng), u3 = unif(rng);
  const double two_pi = 2.0 * harmonics::kPi;
  const Eigen::Quaterniond quat(std::sqrt(u1) * std::cos(two_pi * u3),
                                std::sqrt(1.0 - u1) * std::sin(two_pi * u2),
                                std::sqrt(1.0 - u1) * std::cos(two_pi * u2),
                                std::sqrt(u1) * std::sin(two_pi * u3));
  return quat.toRotationMatrix();
}

double rotation_average(const BallPotential& q, int n, int rotations,
                        const QuadratureRule& rule, unsigned long seed) {
  if (rotations < 1) throw std::invalid_argument("rotation_average: need >= 1 sample");
  require_ball_rule(rule, n);
  std::mt19937_64 rng(seed);
  double acc = 0.0;
  for (int s = 0; s < rotations; ++s) {
    const Eigen::Matrix3d R = haar_rotation(n, rng);
    double dist = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double d = q(rule.nodes[i]) - q(R * rule.nodes[i]);
      dist += rule.weights[i] * d * d;
    }
    acc += dist;
  }
  return acc / rotations;
}

double rotation_identity_residual(const BallPotential& q, int n, int rotations,
                                  const QuadratureRule& rule, unsigned long seed) {
  const double avg = rotation_average(q, n, rotations, rule, seed);
  return std::abs(avg - 2.0 * radial_deficit_sq(q, rule));
}

double harmonic_moment(const BallPotential& q, const HarmonicIndex& u,
                       const HarmonicIndex& v, const QuadratureRule& rule) {
  if (rule.domain != harmonics::Domain::Ball)
    throw std::invalid_argument("harmonic_moment: need a ball rule");
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    s += rule.weights[i] * q(rule.nodes[i]) *
         harmonics::solid_harmonic(u, rule.nodes[i]) *
         harmonics::solid_harmonic(v, rule.nodes[i]);
  return s;
}

}  // namespace dtn::perturbation
