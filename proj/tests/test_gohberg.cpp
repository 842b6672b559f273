#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "dtn/gohberg.hpp"
#include "dtn/potentials.hpp"
#include "oracles.hpp"

using namespace dtn::gohberg;
using Complex = std::complex<double>;

namespace {

constexpr double kPi = oracles::kPi;

// Mixed symbol with a curvature-type maximum: a(x,+1) = 2 + cos x, a(x,-1) = 1.
CircleSymbol mixed_cosine() {
  return CircleSymbol::from_cosine_series({2.0, 1.0}, {1.0});
}

// Mixed symbol whose maximum 3 is attained on a flat plateau; band-limited
// packets can sit exactly on the top, so the discrete lower bound is tight.
CircleSymbol mixed_plateau(int order = 0) {
  CircleSymbol s;
  s.plus = [](double x) {
    const double up = dtn::potentials::smooth_step(x, kPi - 1.5, kPi - 0.5, 0);
    const double down = dtn::potentials::smooth_step(x, kPi + 0.5, kPi + 1.5, 0);
    return Complex(1.0 + 2.0 * up * (1.0 - down));
  };
  s.minus = [](double) { return Complex(1.0); };
  s.order = order;
  return s;
}

}  // namespace

TEST_CASE("quantization basics") {
  SUBCASE("constant symbols give scalar multiples of the identity") {
    const auto op = quantize(CircleSymbol::constant(2.5), 64);
    CHECK((op.matrix - 2.5 * Eigen::MatrixXcd::Identity(64, 64)).cwiseAbs().maxCoeff() <
          1e-13);
  }
  SUBCASE("sign multiplier is norm one and acts diagonally in frequency") {
    CircleSymbol sgn;
    sgn.plus = [](double) { return Complex(1.0); };
    sgn.minus = [](double) { return Complex(-1.0); };
    const int N = 64;
    const auto op = quantize(sgn, N);
    CHECK(operator_norm(op.matrix) == doctest::Approx(1.0).epsilon(1e-12));
    for (int xi : {3, -5, N / 2}) {
      Eigen::VectorXcd e(N);
      for (int j = 0; j < N; ++j) e(j) = std::polar(1.0, xi * 2.0 * kPi * j / N);
      const Eigen::VectorXcd out = op.matrix * e;
      const double expected = xi >= 0 ? 1.0 : -1.0;
      CHECK((out - expected * e).norm() < 1e-11);
    }
  }
  SUBCASE("x-multiplication symbols multiply pointwise") {
    const auto a = CircleSymbol::from_cosine_series({2.0, 1.0}, {2.0, 1.0});
    const int N = 64;
    const auto op = quantize(a, N);
    for (int j = 0; j < N; ++j) {
      const double x = 2.0 * kPi * j / N;
      CHECK(std::abs(op.matrix(j, j) - Complex(2.0 + std::cos(x))) < 1e-12);
      for (int l = 0; l < N; ++l)
        if (l != j) CHECK(std::abs(op.matrix(j, l)) < 1e-12);
    }
  }
  SUBCASE("direct double-sum oracle at N = 64") {
    const auto a = mixed_cosine();
    const int N = 64;
    const auto op = quantize(a, N);
    Eigen::MatrixXcd oracle(N, N);
    for (int j = 0; j < N; ++j)
      for (int l = 0; l < N; ++l) {
        Complex sum = 0.0;
        for (int idx = 0; idx < N; ++idx) {
          const int xi = idx <= N / 2 ? idx : idx - N;
          const double xj = 2.0 * kPi * j / N, xl = 2.0 * kPi * l / N;
          const Complex branch = xi >= 0 ? a.plus(xj) : a.minus(xj);
          sum += branch * std::polar(1.0 / N, xi * (xj - xl));
        }
        oracle(j, l) = sum;
      }
    CHECK((op.matrix - oracle).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("linearity") {
    const int N = 32;
    const auto a = mixed_cosine();
    const auto b = CircleSymbol::from_cosine_series({0.3, 0.0, 0.7}, {1.1});
    CircleSymbol sum;
    sum.plus = [&](double x) { return a.plus(x) + b.plus(x); };
    sum.minus = [&](double x) { return a.minus(x) + b.minus(x); };
    const auto die = (quantize(sum, N).matrix -
                      (quantize(a, N).matrix + quantize(b, N).matrix))
                         .cwiseAbs()
                         .maxCoeff();
    CHECK(die < 1e-13);
  }
  CHECK_THROWS_AS(quantize(mixed_cosine(), 48), std::invalid_argument);
  CHECK_THROWS_AS(quantize(mixed_cosine(), 8), std::invalid_argument);
}

TEST_CASE("gohberg gap") {
  SUBCASE("constant symbol") {
    const auto g = gohberg_gap(CircleSymbol::constant(2.0), 64);
    CHECK(g.sup_a == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(g.op_norm == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(std::abs(g.gap) < 1e-12);
  }
  SUBCASE("curvature-top mixed symbol stays within tol(N)") {
    const auto g = gohberg_gap(mixed_cosine(), 512);
    CHECK(g.sup_a == doctest::Approx(3.0).epsilon(1e-9));
    MESSAGE("mixed cosine gap at N=512: ", g.gap);
    CHECK(g.gap >= -gap_tolerance(512));
    CHECK(g.op_norm <= g.sup_a + 1e-9);  // multiplication cannot exceed sup
  }
  SUBCASE("flat-top mixed symbol meets the sharp lower bound") {
    const auto g = gohberg_gap(mixed_plateau(), 512);
    CHECK(g.sup_a == doctest::Approx(3.0).epsilon(1e-12));
    MESSAGE("plateau gap at N=512: ", g.gap);
    CHECK(g.gap >= -1e-8);
  }
  SUBCASE("gap magnitude shrinks under refinement") {
    double prev = 1e9;
    for (int N : {256, 512, 1024}) {
      const auto g = gohberg_gap(mixed_cosine(), N);
      CHECK(std::abs(g.gap) <= prev + 1e-10);
      prev = std::abs(g.gap);
    }
  }
}

TEST_CASE("essential norm upper bounds") {
  const std::vector<int> ms{2, 4, 8, 16, 32};
  SUBCASE("constant symbol: all bounds equal |c|") {
    const auto bounds = essential_upper_bounds(CircleSymbol::constant(1.5), 256, ms);
    for (double b : bounds) CHECK(b == doctest::Approx(1.5).epsilon(1e-9));
  }
  SUBCASE("x-independent branches: bounds equal the high-frequency sup") {
    CircleSymbol s;
    s.plus = [](double) { return Complex(1.0); };
    s.minus = [](double) { return Complex(-2.0); };
    const auto bounds = essential_upper_bounds(s, 256, ms);
    for (double b : bounds) CHECK(b == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("flat-top mixed symbol: decreasing, all above the symbol sup") {
    const auto bounds = essential_upper_bounds(mixed_plateau(), 512, ms);
    for (std::size_t i = 1; i < bounds.size(); ++i) CHECK(bounds[i] <= bounds[i - 1] + 1e-10);
    for (double b : bounds) CHECK(b >= 3.0 - 1e-6);
  }
  SUBCASE("compact corrections never break the lower bound") {
    const auto g = gohberg_gap(mixed_cosine(), 256);
    const auto bounds = essential_upper_bounds(mixed_cosine(), 256, ms);
    for (double b : bounds) CHECK(b >= g.sup_a - gap_tolerance(256));
  }
  CHECK_THROWS_AS(essential_upper_bounds(mixed_cosine(), 256, {4, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(essential_upper_bounds(mixed_cosine(), 256, {200}),
                  std::invalid_argument);
}

TEST_CASE("oscillatory families") {
  SUBCASE("x-independent symbols act exactly on trig-polynomial packets") {
    CircleSymbol s;
    s.plus = [](double) { return Complex(1.7); };
    s.minus = [](double) { return Complex(-0.3); };
    const double r = oscillatory_residual(s, make_trig_bump(4), 1, 16, 256);
    CHECK(r < 1e-13);
  }
  SUBCASE("smooth-bump packets: residual decays in lambda") {
    const auto a = mixed_plateau();
    const auto f = make_bump();
    double prev = 1e9;
    for (int lambda : {16, 32, 64, 128}) {
      const double r = oscillatory_residual(a, f, 1, lambda, 512);
      MESSAGE("lambda=", lambda, " residual=", r);
      CHECK(r < prev);
      // decay at least as fast as 1/lambda per doubling
      if (prev < 1e8) CHECK(r <= 0.5 * prev * (1.0 + 1e-9));
      prev = r;
    }
    CHECK(prev < 1e-2);
  }
  SUBCASE("triangle inequality sanity") {
    const auto a = mixed_cosine();
    const auto f = make_bump();
    const int N = 256, lambda = 32;
    const auto A = quantize(a, N).matrix;
    Eigen::VectorXcd u(N), target(N);
    for (int j = 0; j < N; ++j) {
      const double x = 2.0 * kPi * j / N;
      u(j) = std::polar(1.0, lambda * x) * f(x);
      target(j) = a.plus(x) * u(j);
    }
    const double residual = oscillatory_residual(a, f, 1, lambda, N);
    const double lhs = std::abs((A * u).norm() - target.norm()) / u.norm();
    CHECK(residual >= lhs - 1e-12);
  }
  CHECK_THROWS_AS(oscillatory_residual(mixed_cosine(), make_bump(), 1, 200, 256),
                  std::invalid_argument);
}

TEST_CASE("order-k reduction") {
  SUBCASE("k = 0 reduces to gohberg_gap") {
    const auto a = mixed_cosine();
    const auto g0 = gohberg_gap(a, 256);
    const auto gk = order_k_gap(a, 256);
    CHECK(gk.sup_a == doctest::Approx(g0.sup_a).epsilon(1e-13));
    CHECK(gk.op_norm == doctest::Approx(g0.op_norm).epsilon(1e-12));
    CHECK(gk.gap == doctest::Approx(-g0.gap).epsilon(1e-12));
  }
  SUBCASE("k = 1 multiplier") {
    auto a = CircleSymbol::constant(1.0, 1);
    const int N = 512;
    const auto g = order_k_gap(a, N);
    const double expected_norm = (N / 2.0) / std::sqrt(1.0 + (N / 2.0) * (N / 2.0));
    CHECK(g.op_norm == doctest::Approx(expected_norm).epsilon(1e-11));
    CHECK(g.gap > 0.0);
    CHECK(g.gap <= order_gap_tolerance(N, 1));
    CHECK(std::abs(g.reduced_gap) < 1e-11);
  }
  SUBCASE("k = 2 with x-dependence") {
    auto a = mixed_plateau(2);
    const auto g = order_k_gap(a, 512);
    MESSAGE("order-2 gap: ", g.gap, " reduced: ", g.reduced_gap);
    CHECK(g.gap <= order_gap_tolerance(512, 2));
  }
}

TEST_CASE("adjoint matches the conjugated symbol modulo compacts") {
  CircleSymbol a;
  a.plus = [](double x) { return Complex(2.0 + 0.5 * std::cos(x), 0.4 * std::sin(x)); };
  a.minus = [](double x) { return Complex(1.0, 0.2 * std::cos(x)); };
  const int N = 256;
  const auto A = quantize(a, N).matrix;
  const auto Abar = quantize_conjugate(a, N).matrix;
  const Eigen::MatrixXcd diff = A.adjoint() - Abar;
  // the discrepancy concentrates at the two spectral cuts of the discrete
  // model (origin and Nyquist): compressing both away kills it
  CHECK(annulus_compression_norm(diff, N, N / 8, N / 8) < 1.0 / N);
  // while the uncompressed difference is genuinely order one
  CHECK(operator_norm(diff) > 0.1);
  CHECK(operator_norm(diff) < 2.0);
}

TEST_CASE("xi = 0 branch assignment is a rank-one choice") {
  const auto a = mixed_cosine();
  const int N = 128;
  const auto A = quantize(a, N).matrix;
  // alternative quantization: assign xi = 0 to the minus branch
  Eigen::MatrixXcd alt = A;
  for (int j = 0; j < N; ++j) {
    const double x = 2.0 * kPi * j / N;
    for (int l = 0; l < N; ++l) alt(j, l) += (a.minus(x) - a.plus(x)) / double(N);
  }
  const Eigen::MatrixXcd diff = alt - A;
  // rank one, and invisible to every essential-norm bound
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(diff);
  CHECK(svd.singularValues()(0) > 0.1);
  CHECK(svd.singularValues()(1) < 1e-12);
  CHECK(high_frequency_compression_norm(diff, N, 1) < 1e-12);
}
