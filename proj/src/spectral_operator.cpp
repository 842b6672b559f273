#include "dtn/spectral_operator.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace dtn::spectral {

SpectralOperator SpectralOperator::zero(int n, int K) {
  SpectralOperator op;
  op.n = n;
  op.K = K;
  op.basis = harmonics::basis_up_to(n, K);
  op.matrix = Eigen::MatrixXd::Zero(op.basis.size(), op.basis.size());
  return op;
}

SpectralOperator SpectralOperator::diagonal(int n, int K,
                                            const std::vector<double>& per_degree) {
  if (static_cast<int>(per_degree.size()) != K + 1)
    throw std::invalid_argument("SpectralOperator: need one diagonal value per degree");
  SpectralOperator op = zero(n, K);
  for (std::size_t i = 0; i < op.basis.size(); ++i)
    op.matrix(i, i) = per_degree[op.basis[i].k];
  return op;
}

int SpectralOperator::degree_offset(int k) const {
  int off = 0;
  for (int j = 0; j < k; ++j) off += harmonics::degree_count(n, j);
  return off;
}

Eigen::VectorXd SpectralOperator::eigenvalues() const {
  Eigen::VectorXd lam(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    lam(i) = harmonics::laplace_eigenvalue(basis[i]);
  return lam;
}

double SpectralOperator::max_abs() const {
  return matrix.size() == 0 ? 0.0 : matrix.cwiseAbs().maxCoeff();
}

double SpectralOperator::asymmetry() const {
  return matrix.size() == 0 ? 0.0 : (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
}

double SpectralOperator::commutator_max(const SpectralOperator& a, const SpectralOperator& b) {
  if (a.n != b.n || a.K != b.K)
    throw std::invalid_argument("commutator_max: operators live on different bases");
  const Eigen::MatrixXd c = a.matrix * b.matrix - b.matrix * a.matrix;
  return c.size() == 0 ? 0.0 : c.cwiseAbs().maxCoeff();
}

void SpectralOperator::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "row,col,value\n";
  out.precision(17);
  for (Eigen::Index r = 0; r < matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < matrix.cols(); ++c)
      out << r << "," << c << "," << matrix(r, c) << "\n";
}

void SpectralOperator::write_json(const std::string& path) const {
  nlohmann::json j;
  j["n"] = n;
  j["K"] = K;
  nlohmann::json jb = nlohmann::json::array();
  for (const auto& idx : basis) jb.push_back({{"k", idx.k}, {"m", idx.m}});
  j["basis"] = jb;
  nlohmann::json offsets = nlohmann::json::array();
  for (int k = 0; k <= K; ++k) offsets.push_back(degree_offset(k));
  j["degree_offsets"] = offsets;
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) row.push_back(matrix(r, c));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << j.dump(2) << "\n";
}

}  // namespace dtn::spectral
