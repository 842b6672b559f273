#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "dtn/harmonics.hpp"
#include "oracles.hpp"

using namespace dtn::harmonics;

TEST_CASE("basis counts and validity") {
  CHECK(degree_count(2, 0) == 1);
  CHECK(degree_count(2, 5) == 2);
  CHECK(degree_count(3, 0) == 1);
  CHECK(degree_count(3, 4) == 9);

  CHECK(basis_up_to(3, 6).size() == 49);
  CHECK(basis_up_to(2, 6).size() == 13);

  CHECK(HarmonicIndex{3, 2, -2}.valid());
  CHECK_FALSE(HarmonicIndex{3, 2, 3}.valid());
  CHECK_FALSE(HarmonicIndex{2, 0, 1}.valid());
  CHECK_FALSE(HarmonicIndex{4, 1, 0}.valid());
}

TEST_CASE("laplace eigenvalues") {
  CHECK(laplace_eigenvalue({3, 2, 0}) == 6.0);
  CHECK(laplace_eigenvalue({2, 3, 1}) == 9.0);
  CHECK(laplace_eigenvalue({3, 0, 0}) == 0.0);
}

TEST_CASE("pointwise harmonic values") {
  const double y00 = eval_basis({3, 0, 0}, Vec3(0.0, 0.0, 1.0));
  CHECK(y00 == doctest::Approx(1.0 / std::sqrt(4.0 * kPi)).epsilon(1e-14));

  const double theta = 0.7;
  const double c = eval_basis({2, 1, 1}, Vec3(std::cos(theta), std::sin(theta), 0.0));
  CHECK(c == doctest::Approx(std::cos(theta) / std::sqrt(kPi)).epsilon(1e-14));
  const double s = eval_basis({2, 3, -1}, Vec3(std::cos(theta), std::sin(theta), 0.0));
  CHECK(s == doctest::Approx(std::sin(3 * theta) / std::sqrt(kPi)).epsilon(1e-13));

  CHECK_THROWS_AS(eval_basis({3, 1, 0}, Vec3(0.0, 0.0, 1.5)), std::domain_error);
  CHECK_THROWS_AS(eval_basis({2, 1, 1}, Vec3(0.0, 0.8, 0.6)), std::domain_error);
}

TEST_CASE("eval_all agrees with eval_basis") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {2, 3}) {
    for (int rep = 0; rep < 20; ++rep) {
      Vec3 p(u(rng), u(rng), n == 2 ? 0.0 : u(rng));
      if (p.norm() < 1e-3) continue;
      p /= p.norm();
      const auto all = eval_all(n, 8, p);
      const auto basis = basis_up_to(n, 8);
      for (std::size_t i = 0; i < basis.size(); ++i)
        CHECK(all[i] == doctest::Approx(eval_basis(basis[i], p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("quadrature weight sums") {
  CHECK(quadrature(Domain::Sphere, 3, 8).weight_sum() ==
        doctest::Approx(4.0 * kPi).epsilon(1e-13));
  CHECK(quadrature(Domain::Sphere, 2, 8).weight_sum() ==
        doctest::Approx(2.0 * kPi).epsilon(1e-13));
  CHECK(quadrature(Domain::Ball, 3, 8).weight_sum() ==
        doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-13));
  CHECK(quadrature(Domain::Ball, 2, 8).weight_sum() ==
        doctest::Approx(kPi).epsilon(1e-13));
  CHECK_THROWS_AS(quadrature(Domain::Sphere, 5, 4), std::invalid_argument);
  CHECK_THROWS_AS(quadrature(Domain::Ball, 3, 0), std::invalid_argument);

  const auto rule = quadrature(Domain::Ball, 3, 8);
  double r2 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    r2 += rule.weights[i] * rule.nodes[i].squaredNorm();
  CHECK(r2 == doctest::Approx(4.0 * kPi / 5.0).epsilon(1e-13));

  for (double w : rule.weights) CHECK(w > 0.0);
}

TEST_CASE("quadrature exactness certificate") {
  for (int n : {2, 3}) {
    for (Domain dom : {Domain::Sphere, Domain::Ball}) {
      const int level = 4;
      const auto rule = quadrature(dom, n, level);
      const double scale = rule.domain_volume();
      for (int a = 0; a <= rule.exactness; ++a)
        for (int b = 0; a + b <= rule.exactness; ++b)
          for (int c = 0; a + b + c <= rule.exactness; ++c) {
            if (n == 2 && c > 0) continue;
            double sum = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
              const auto& p = rule.nodes[i];
              sum += rule.weights[i] * std::pow(p.x(), a) * std::pow(p.y(), b) *
                     (n == 3 ? std::pow(p.z(), c) : 1.0);
            }
            const double exact = dom == Domain::Sphere
                                     ? oracles::sphere_monomial_integral(n, a, b, c)
                                     : oracles::ball_monomial_integral(n, a, b, c);
            CHECK(std::abs(sum - exact) <= 1e-12 * scale);
          }
    }
  }
}

TEST_CASE("quadrature rules serialize to json") {
  const auto rule = quadrature(Domain::Ball, 2, 2);
  const std::string path = "rule_test.json";
  rule.write_json(path);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"exactness\": 4") != std::string::npos);
  CHECK(text.find("\"weights\"") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("orthonormality: Gram matrix is the identity") {
  for (int n : {2, 3}) {
    const int K = 6;
    const auto rule = quadrature(Domain::Sphere, n, 8);
    const auto basis = basis_up_to(n, K);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(basis.size(), basis.size());
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const auto Y = eval_all(n, K, rule.nodes[q]);
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
          gram(i, j) += rule.weights[q] * Y[i] * Y[j];
    }
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        const double expected = i == j ? 1.0 : 0.0;
        CHECK(std::abs(gram(i, j) - expected) < 1e-10);
      }
  }
}

namespace {

// Finite-difference positive spherical Laplacian, n=3:
// -(1/sin t d/dt(sin t dY/dt) + 1/sin^2 t d^2Y/dp^2).
double fd_laplacian_s2(const HarmonicIndex& idx, double t, double p, double h) {
  auto Y = [&](double theta, double phi) {
    return eval_basis(idx, Vec3(std::sin(theta) * std::cos(phi),
                                std::sin(theta) * std::sin(phi), std::cos(theta)));
  };
  auto dtheta_term = [&](double theta) {
    return std::sin(theta) * (Y(theta + h, p) - Y(theta - h, p)) / (2.0 * h);
  };
  const double term1 = (dtheta_term(t + h) - dtheta_term(t - h)) / (2.0 * h) / std::sin(t);
  const double term2 =
      (Y(t, p + h) - 2.0 * Y(t, p) + Y(t, p - h)) / (h * h) / (std::sin(t) * std::sin(t));
  return -(term1 + term2);
}

}  // namespace

TEST_CASE("finite-difference Laplacian reproduces eigenvalues") {
  SUBCASE("circle") {
    const HarmonicIndex idx{2, 4, 1};
    const double lambda = laplace_eigenvalue(idx);
    auto Y = [&](double t) { return eval_basis(idx, Vec3(std::cos(t), std::sin(t), 0.0)); };
    const double t0 = 0.9;
    double prev_err = 0.0;
    for (int lev = 0; lev < 2; ++lev) {
      const double h = lev == 0 ? 1e-2 : 5e-3;
      const double fd = -(Y(t0 + h) - 2.0 * Y(t0) + Y(t0 - h)) / (h * h);
      const double err = std::abs(fd - lambda * Y(t0));
      if (lev == 1) CHECK(err < 0.3 * prev_err + 1e-12);
      prev_err = err;
      CHECK(err < 1e-2);
    }
  }
  SUBCASE("sphere") {
    for (const HarmonicIndex idx : {HarmonicIndex{3, 3, 2}, HarmonicIndex{3, 5, -4}}) {
      const double lambda = laplace_eigenvalue(idx);
      const double t0 = 1.1, p0 = 0.4;
      const double y = eval_basis(
          idx, Vec3(std::sin(t0) * std::cos(p0), std::sin(t0) * std::sin(p0), std::cos(t0)));
      double prev_err = 0.0;
      for (int lev = 0; lev < 2; ++lev) {
        const double h = lev == 0 ? 1e-2 : 5e-3;
        const double err = std::abs(fd_laplacian_s2(idx, t0, p0, h) - lambda * y);
        if (lev == 1) CHECK(err < 0.3 * prev_err + 1e-10);
        prev_err = err;
      }
    }
  }
}

TEST_CASE("solid harmonics are homogeneous of degree k") {
  const HarmonicIndex idx{3, 3, 1};
  const Vec3 x(0.21, -0.35, 0.4);
  const double v1 = solid_harmonic(idx, x);
  const double v2 = solid_harmonic(idx, 2.0 * x);
  CHECK(v2 == doctest::Approx(8.0 * v1).epsilon(1e-12));
  CHECK(solid_harmonic({3, 2, 0}, Vec3::Zero()) == 0.0);
  CHECK(solid_harmonic({3, 0, 0}, Vec3::Zero()) ==
        doctest::Approx(1.0 / std::sqrt(4.0 * kPi)));
}
