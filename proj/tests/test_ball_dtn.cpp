#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "dtn/ball_dtn.hpp"

using namespace dtn;
using namespace dtn::ball_dtn;

TEST_CASE("dtn_ball diagonal") {
  const auto op = dtn_ball(3, 2);
  REQUIRE(op.basis.size() == 9);
  const double expected[9] = {0, 1, 1, 1, 2, 2, 2, 2, 2};
  for (int i = 0; i < 9; ++i) {
    CHECK(op.matrix(i, i) == expected[i]);
    for (int j = 0; j < 9; ++j)
      if (i != j) CHECK(op.matrix(i, j) == 0.0);
  }

  const auto disc = dtn_ball(2, 1);
  REQUIRE(disc.basis.size() == 3);
  CHECK(disc.matrix(0, 0) == 0.0);
  CHECK(disc.matrix(1, 1) == 1.0);
  CHECK(disc.matrix(2, 2) == 1.0);
}

TEST_CASE("trace over degrees") {
  const int K = 7;
  const auto op = dtn_ball(3, K);
  double expected = 0.0;
  for (int k = 0; k <= K; ++k) expected += static_cast<double>(k) * (2 * k + 1);
  CHECK(op.matrix.trace() == expected);
}

TEST_CASE("boundary laplacian diagonal") {
  const auto d3 = boundary_laplacian(3, 1);
  CHECK(d3.matrix.diagonal().transpose() == Eigen::RowVector4d(0, 2, 2, 2));
  const auto d2 = boundary_laplacian(2, 2);
  CHECK(d2.matrix(0, 0) == 0.0);
  CHECK(d2.matrix(1, 1) == 1.0);
  CHECK(d2.matrix(2, 2) == 1.0);
  CHECK(d2.matrix(3, 3) == 4.0);
  CHECK(d2.matrix(4, 4) == 4.0);
}

TEST_CASE("Lambda and Delta commute exactly on the ball") {
  for (int n : {2, 3}) {
    const auto lam = dtn_ball(n, 10);
    const auto del = boundary_laplacian(n, 10);
    CHECK(spectral::SpectralOperator::commutator_max(lam, del) == 0.0);
  }
}

TEST_CASE("ball identity residual") {
  CHECK(ball_identity_residual(3, 20) <= 1e-12);
  CHECK(ball_identity_residual(2, 20) <= 1e-12);

  // Perturbing one diagonal entry of Lambda moves the residual to the
  // perturbation scale.
  auto lam = dtn_ball(3, 4);
  const auto del = boundary_laplacian(3, 4);
  lam.matrix(0, 0) += 1e-3;
  const double res = identity_residual(lam, del);
  CHECK(res == doctest::Approx(1e-3).epsilon(1e-2));
}

TEST_CASE("kernel and nonnegativity") {
  const auto op = dtn_ball(3, 6);
  for (Eigen::Index i = 0; i < op.matrix.rows(); ++i) {
    CHECK(op.matrix(i, i) >= 0.0);
    const bool is_constant_block = op.basis[i].k == 0;
    CHECK((op.matrix(i, i) == 0.0) == is_constant_block);
  }
}

TEST_CASE("degree blocks are scalar") {
  const auto op = dtn_ball(3, 8);
  for (int k = 0; k <= 8; ++k) {
    const int off = op.degree_offset(k);
    const int cnt = harmonics::degree_count(3, k);
    for (int i = 0; i < cnt; ++i) CHECK(op.matrix(off + i, off + i) == op.matrix(off, off));
  }
}

TEST_CASE("csv and json export") {
  const auto op = dtn_ball(3, 1);
  const std::string csv = "ball_dtn_test.csv";
  const std::string json = "ball_dtn_test.json";
  op.write_csv(csv);
  op.write_json(json);

  std::ifstream in(csv);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "row,col,value");
  int lines = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 16);

  std::ifstream jin(json);
  REQUIRE(jin.good());
  std::string text((std::istreambuf_iterator<char>(jin)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"degree_offsets\"") != std::string::npos);
  CHECK(text.find("\"matrix\"") != std::string::npos);
  std::remove(csv.c_str());
  std::remove(json.c_str());
}
