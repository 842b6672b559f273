#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "dtn/ball_dtn.hpp"
#include "dtn/radial_schrodinger.hpp"
#include "oracles.hpp"

using namespace dtn;
using namespace dtn::radial;
using potentials::RadialPotential;

TEST_CASE("zero potential recovers the ball DtN") {
  const auto q = potentials::radial_constant(0.0);
  for (int n : {2, 3})
    for (int k = 0; k <= 10; ++k)
      CHECK(std::abs(solve_radial_mode(q, n, k).mu - k) < 1e-10);

  const auto op = dtn_radial(q, 3, 6);
  const auto ball = ball_dtn::dtn_ball(3, 6);
  CHECK((op.matrix - ball.matrix).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("constant potential against the series oracle") {
  // q = 1, n = 3, k = 0 has the closed form f = sinh(r)/r, mu = coth(1)-1.
  const double coth1 = std::cosh(1.0) / std::sinh(1.0);
  const auto q1 = potentials::radial_constant(1.0);
  CHECK(std::abs(solve_radial_mode(q1, 3, 0).mu - (coth1 - 1.0)) < 1e-10);

  for (int n : {2, 3})
    for (double c : {1.0, -0.5, 3.0}) {
      const auto q = potentials::radial_constant(c);
      for (int k = 0; k <= 6; ++k) {
        const double expected = oracles::constant_potential_mu(c, n, k);
        CHECK(std::abs(solve_radial_mode(q, n, k).mu - expected) < 1e-8);
      }
    }
}

TEST_CASE("well potential against an implicit-midpoint oracle") {
  // q(r) = -2 (1-r^2)^2, n = 3, K = 6.
  const auto q = potentials::radial_well(-2.0, 2.0);
  auto qf = [](double r) { return -2.0 * std::pow(1.0 - r * r, 2.0); };
  for (int k = 0; k <= 6; ++k) {
    const double mu = solve_radial_mode(q, 3, k).mu;
    const double oracle = oracles::implicit_midpoint_mu(qf, 3, k, 40000);
    CHECK(std::abs(mu - oracle) < 1e-8);
  }
}

TEST_CASE("degree blocks of the radial DtN are constant") {
  const auto op = dtn_radial(potentials::radial_constant(1.0), 3, 4);
  for (int k = 0; k <= 4; ++k) {
    const int off = op.degree_offset(k);
    for (int i = 0; i < harmonics::degree_count(3, k); ++i)
      CHECK(op.matrix(off + i, off + i) == op.matrix(off, off));
  }
  CHECK((op.matrix - Eigen::MatrixXd(op.matrix.diagonal().asDiagonal()))
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("interior Dirichlet eigenvalue is rejected") {
  // For q = -pi^2, n=3, k=0 the regular solution is sin(pi r)/r: f(1) = 0.
  const auto q = potentials::radial_constant(-oracles::kPi * oracles::kPi);
  CHECK_THROWS_AS(solve_radial_mode(q, 3, 0), DirichletEigenvalueError);
  try {
    dtn_radial(q, 3, 2);
    CHECK(false);
  } catch (const DirichletEigenvalueError& e) {
    CHECK(e.degree == 0);
  }
}

TEST_CASE("mu is independent of the launch bookkeeping") {
  const auto q = potentials::radial_well(3.0, 1.0);
  SolveOptions a;
  SolveOptions b;
  b.launch_radius = 2e-3;
  b.series_order = 16;
  const double mu_a = solve_radial_mode(q, 3, 2, a).mu;
  const double mu_b = solve_radial_mode(q, 3, 2, b).mu;
  CHECK(std::abs(mu_a - mu_b) < 1e-11);
}

TEST_CASE("monotonicity for nonnegative potentials") {
  for (const auto& q : {potentials::radial_constant(1.0), potentials::radial_well(2.0, 2.0),
                        potentials::radial_bump(1.5, 0.5, 0.3)}) {
    for (int k = 0; k <= 8; ++k) CHECK(solve_radial_mode(q, 3, k).mu >= k - 1e-8);
  }
}

TEST_CASE("tolerance refinement stability") {
  const auto q = potentials::radial_well(-1.0, 2.0);
  SolveOptions loose;
  loose.rtol = loose.atol = 1e-10;
  SolveOptions tight;
  tight.rtol = tight.atol = 5e-11;
  const double a = solve_radial_mode(q, 3, 3, loose).mu;
  const double b = solve_radial_mode(q, 3, 3, tight).mu;
  CHECK(std::abs(a - b) < 10.0 * loose.rtol);
}

TEST_CASE("tablefile potentials track their closed-form source") {
  const std::string path = "radial_table_test.csv";
  {
    std::ofstream out(path);
    out << "r,value\n";
    out.precision(17);
    for (int i = 0; i <= 200; ++i) {
      const double r = i / 200.0;
      out << r << "," << 1.0 - r * r << "\n";
    }
  }
  const auto q_table = potentials::parse_radial("tablefile:" + path);
  const auto q_exact = potentials::radial_well(1.0, 1.0);
  for (double r : {0.05, 0.3, 0.55, 0.8, 0.99})
    CHECK(std::abs(q_table(r) - q_exact(r)) < 1e-5);
  for (int k = 0; k <= 3; ++k) {
    const double mu_t = solve_radial_mode(q_table, 3, k).mu;
    const double mu_e = solve_radial_mode(q_exact, 3, k).mu;
    CHECK(std::abs(mu_t - mu_e) < 1e-5);
  }
  std::remove(path.c_str());

  CHECK_THROWS_AS(potentials::radial_tablefile("no_such_file.csv"), std::invalid_argument);
}

TEST_CASE("compact support is recorded and honored") {
  const auto q = potentials::radial_bump(2.0, 0.4, 0.3);
  REQUIRE(q.support_radius.has_value());
  CHECK(*q.support_radius == doctest::Approx(0.7));
  for (double r : {0.71, 0.8, 0.95, 1.0}) CHECK(q(r) == 0.0);
  CHECK(q(0.4) == doctest::Approx(2.0));

  // wide bumps reaching the boundary carry no support radius
  CHECK_FALSE(potentials::radial_bump(1.0, 0.8, 0.4).support_radius.has_value());
}

TEST_CASE("symbol table") {
  SUBCASE("zero potential inverts the ball identity") {
    for (int n : {2, 3}) {
      const auto table = symbol_table(potentials::radial_constant(0.0), n, 8);
      for (const auto& [lambda, mu] : table) {
        const double f =
            0.5 * (-(n - 2.0) + std::sqrt((n - 2.0) * (n - 2.0) + 4.0 * lambda));
        CHECK(std::abs(mu - f) < 1e-10);
      }
    }
  }
  SUBCASE("constant potential value") {
    const auto table = symbol_table(potentials::radial_constant(1.0), 3, 2);
    CHECK(table[0].first == 0.0);
    CHECK(table[0].second ==
          doctest::Approx(std::cosh(1.0) / std::sinh(1.0) - 1.0).epsilon(1e-9));
  }
  SUBCASE("compactly supported potentials decay to the free symbol") {
    const auto q = potentials::radial_bump(2.0, 0.4, 0.25);
    const auto table = symbol_table(q, 3, 12);
    double prev = 1e9;
    for (int k = 4; k <= 12; ++k) {
      const double dev = std::abs(table[k].second - k);
      CHECK(dev < prev + 1e-12);
      prev = dev;
    }
    CHECK(std::abs(table[12].second - 12.0) < 1e-3);
  }
}

TEST_CASE("radial DtN commutes with the boundary Laplacian") {
  const auto del = ball_dtn::boundary_laplacian(3, 6);
  for (const auto& q : {potentials::radial_constant(1.0), potentials::radial_well(1.0, 2.0),
                        potentials::radial_bump(1.0, 0.5, 0.2)}) {
    const auto op = dtn_radial(q, 3, 6);
    CHECK(spectral::SpectralOperator::commutator_max(op, del) <= 1e-12);
  }
}

namespace {

// Conductivity-equation oracle: radial mode of div(gamma grad u) = 0 with
// gamma = e^{(n-2) phi}, solved via w'' + (2k+n-1)/r w' + (g'/g)(w' + k w/r) = 0,
// f = r^k w. phi is the amplitude-a bump at (r0, w); derivatives closed form.
double conductivity_mu(double a, double r0, double halfw, int n, int k) {
  auto phi = [&](double r) {
    const double u = (r - r0) / halfw;
    if (std::abs(u) >= 1.0) return 0.0;
    return a * std::exp(1.0 - 1.0 / (1.0 - u * u));
  };
  auto dphi = [&](double r) {
    const double u = (r - r0) / halfw;
    if (std::abs(u) >= 1.0) return 0.0;
    const double d = 1.0 - u * u;
    return phi(r) * (-2.0 * u / (d * d)) / halfw;
  };
  auto glog = [&](double r) { return (n - 2.0) * dphi(r); };  // gamma'/gamma
  auto rhs = [&](double r, const double* y, double* dy) {
    dy[0] = y[1];
    dy[1] = -(2.0 * k + n - 1.0) / r * y[1] - glog(r) * (y[1] + k * y[0] / r);
  };
  const auto traj = ode::integrate_dopri5(rhs, 1e-3, 1.0, 1.0, 0.0, 1e-12, 1e-12);
  return k + traj.back().y1 / traj.back().y0;
}

}  // namespace

TEST_CASE("conformal factor to Schrodinger potential") {
  SUBCASE("n=2 is conformally trivial") {
    const auto phi = potentials::radial_bump(0.3, 0.5, 0.2);
    const auto q = q_from_conformal_factor(phi, 2);
    for (double r : {0.0, 0.3, 0.5, 0.7, 0.95}) CHECK(std::abs(q(r)) < 1e-12);
  }
  SUBCASE("DtN matches the conductivity solve, n=3") {
    const double a = 0.2, r0 = 0.5, w = 0.25;
    const auto phi = potentials::radial_bump(a, r0, w);
    const auto q = q_from_conformal_factor(phi, 3, 8192);
    CHECK(q.support_radius.has_value());
    for (int k = 0; k <= 4; ++k) {
      const double mu_q = solve_radial_mode(q, 3, k).mu;
      const double mu_g = conductivity_mu(a, r0, w, 3, k);
      CHECK(std::abs(mu_q - mu_g) < 2e-6);
    }
  }
}
