#include "dtn/harmonics.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace dtn::harmonics {

namespace {

void check_dimension(int n) {
  if (n != 2 && n != 3)
    throw std::invalid_argument("harmonics: ambient dimension must be 2 or 3, got " +
                                std::to_string(n));
}

void check_on_sphere(int n, const Vec3& p) {
  check_dimension(n);
  if (std::abs(p.norm() - 1.0) > 1e-12)
    throw std::domain_error("harmonics: point is off the unit sphere, |p|=" +
                            std::to_string(p.norm()));
  if (n == 2 && std::abs(p.z()) > 1e-12)
    throw std::domain_error("harmonics: n=2 points must lie on the circle z=0");
}

// Normalized associated Legendre seed and step. Pbar_m^m includes the
// full orthonormalization, so Y_{k,0} = Pbar_k^0(cos theta) and
// Y_{k,|m|>0} = sqrt(2) Pbar_k^m(cos theta) * {cos,sin}(m phi).
double pbar_seed(int m, double sin_theta) {
  double p = std::sqrt(1.0 / (4.0 * kPi));
  for (int i = 1; i <= m; ++i)
    p *= -std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * sin_theta;
  return p;
}

double pbar_next_degree(int k, int m, double z, double pkm1, double pkm2) {
  // Pbar_k^m = a (z Pbar_{k-1}^m - b Pbar_{k-2}^m)
  const double kk = static_cast<double>(k);
  const double mm = static_cast<double>(m);
  const double a = std::sqrt((4.0 * kk * kk - 1.0) / (kk * kk - mm * mm));
  const double b = std::sqrt(((kk - 1.0) * (kk - 1.0) - mm * mm) /
                             (4.0 * (kk - 1.0) * (kk - 1.0) - 1.0));
  return a * (z * pkm1 - b * pkm2);
}

}  // namespace

bool HarmonicIndex::valid() const {
  if (n != 2 && n != 3) return false;
  if (k < 0) return false;
  if (n == 2) return k == 0 ? m == 0 : (m == 1 || m == -1);
  return m >= -k && m <= k;
}

std::string HarmonicIndex::label() const {
  if (n == 2) {
    if (k == 0) return "k=0";
    return "k=" + std::to_string(k) + (m == 1 ? ",cos" : ",sin");
  }
  return "k=" + std::to_string(k) + ",m=" + std::to_string(m);
}

int degree_count(int n, int k) {
  check_dimension(n);
  if (k < 0) throw std::invalid_argument("harmonics: negative degree");
  if (n == 2) return k == 0 ? 1 : 2;
  return 2 * k + 1;
}

std::vector<HarmonicIndex> basis_up_to(int n, int K) {
  check_dimension(n);
  if (K < 0) throw std::invalid_argument("harmonics: negative degree cutoff");
  std::vector<HarmonicIndex> basis;
  for (int k = 0; k <= K; ++k) {
    if (n == 2) {
      if (k == 0) {
        basis.push_back({2, 0, 0});
      } else {
        basis.push_back({2, k, 1});
        basis.push_back({2, k, -1});
      }
    } else {
      for (int m = -k; m <= k; ++m) basis.push_back({3, k, m});
    }
  }
  return basis;
}

double laplace_eigenvalue(const HarmonicIndex& idx) {
  if (!idx.valid()) throw std::invalid_argument("harmonics: invalid index " + idx.label());
  return static_cast<double>(idx.k) * (idx.k + idx.n - 2);
}

std::vector<double> eval_all(int n, int K, const Vec3& p) {
  check_on_sphere(n, p);
  const auto basis = basis_up_to(n, K);
  std::vector<double> values(basis.size(), 0.0);

  if (n == 2) {
    const double theta = std::atan2(p.y(), p.x());
    std::size_t pos = 0;
    for (int k = 0; k <= K; ++k) {
      if (k == 0) {
        values[pos++] = 1.0 / std::sqrt(2.0 * kPi);
      } else {
        values[pos++] = std::cos(k * theta) / std::sqrt(kPi);
        values[pos++] = std::sin(k * theta) / std::sqrt(kPi);
      }
    }
    return values;
  }

  const double z = p.z();
  const double rxy = std::hypot(p.x(), p.y());
  double cphi = 1.0, sphi = 0.0;
  if (rxy > 0.0) {
    cphi = p.x() / rxy;
    sphi = p.y() / rxy;
  }
  // cos(m phi), sin(m phi) by angle addition.
  std::vector<double> cm(K + 1), sm(K + 1);
  cm[0] = 1.0;
  sm[0] = 0.0;
  for (int m = 1; m <= K; ++m) {
    cm[m] = cm[m - 1] * cphi - sm[m - 1] * sphi;
    sm[m] = sm[m - 1] * cphi + cm[m - 1] * sphi;
  }

  auto slot = [&](int k, int m) {
    // offset of (k,m) within the degree-major ordering
    return static_cast<std::size_t>(k * k + (m + k));
  };

  const double sqrt2 = std::sqrt(2.0);
  for (int m = 0; m <= K; ++m) {
    double pmm = pbar_seed(m, rxy);
    double prev2 = 0.0, prev1 = pmm;
    for (int k = m; k <= K; ++k) {
      double pkm;
      if (k == m) {
        pkm = pmm;
      } else if (k == m + 1) {
        pkm = z * std::sqrt(2.0 * m + 3.0) * pmm;
      } else {
        pkm = pbar_next_degree(k, m, z, prev1, prev2);
      }
      if (k > m) {
        prev2 = prev1;
        prev1 = pkm;
      }
      if (m == 0) {
        values[slot(k, 0)] = pkm;
      } else {
        values[slot(k, m)] = sqrt2 * pkm * cm[m];
        values[slot(k, -m)] = sqrt2 * pkm * sm[m];
      }
    }
  }
  return values;
}

double eval_basis(const HarmonicIndex& idx, const Vec3& p) {
  if (!idx.valid()) throw std::invalid_argument("harmonics: invalid index");
  check_on_sphere(idx.n, p);

  if (idx.n == 2) {
    const double theta = std::atan2(p.y(), p.x());
    if (idx.k == 0) return 1.0 / std::sqrt(2.0 * kPi);
    return (idx.m == 1 ? std::cos(idx.k * theta) : std::sin(idx.k * theta)) / std::sqrt(kPi);
  }

  const int m = std::abs(idx.m);
  const double z = p.z();
  const double rxy = std::hypot(p.x(), p.y());
  double pmm = pbar_seed(m, rxy);
  double prev2 = 0.0, prev1 = pmm, pkm = pmm;
  for (int k = m + 1; k <= idx.k; ++k) {
    if (k == m + 1)
      pkm = z * std::sqrt(2.0 * m + 3.0) * pmm;
    else
      pkm = pbar_next_degree(k, m, z, prev1, prev2);
    prev2 = prev1;
    prev1 = pkm;
  }
  if (idx.m == 0) return pkm;
  const double phi = std::atan2(p.y(), p.x());
  const double azimuth = idx.m > 0 ? std::cos(m * phi) : std::sin(m * phi);
  return std::sqrt(2.0) * pkm * azimuth;
}

double solid_harmonic(const HarmonicIndex& idx, const Vec3& x) {
  const double r = x.norm();
  if (r == 0.0) {
    if (idx.k == 0) return eval_basis(idx, Vec3(idx.n == 2 ? 1 : 0, 0, idx.n == 2 ? 0 : 1));
    return 0.0;
  }
  Vec3 p = x / r;
  if (idx.n == 2) p.z() = 0.0;
  return std::pow(r, idx.k) * eval_basis(idx, p);
}

double sphere_area(int n) {
  check_dimension(n);
  return n == 2 ? kCircleLength : kSphereArea3;
}

double ball_volume(int n) {
  check_dimension(n);
  return sphere_area(n) / n;
}

double QuadratureRule::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double QuadratureRule::domain_volume() const {
  return domain == Domain::Sphere ? sphere_area(n) : ball_volume(n);
}

void QuadratureRule::write_json(const std::string& path) const {
  nlohmann::json j;
  j["domain"] = domain == Domain::Sphere ? "sphere" : "ball";
  j["n"] = n;
  j["level"] = level;
  j["exactness"] = exactness;
  j["weight_sum"] = weight_sum();
  nlohmann::json nodes_json = nlohmann::json::array();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    nodes_json.push_back({nodes[i].x(), nodes[i].y(), nodes[i].z()});
  j["nodes"] = nodes_json;
  j["weights"] = weights;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << j.dump(2) << "\n";
}

void gauss_legendre(int points, std::vector<double>& x, std::vector<double>& w) {
  if (points < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  x.assign(points, 0.0);
  w.assign(points, 0.0);
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double xi = std::cos(kPi * (i + 0.75) / (points + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = xi;
      for (int j = 2; j <= points; ++j) {
        const double p2 = ((2.0 * j - 1.0) * xi * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      const double dp = points * (xi * p1 - p0) / (xi * xi - 1.0);
      const double dx = p1 / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = xi;
    for (int j = 2; j <= points; ++j) {
      const double p2 = ((2.0 * j - 1.0) * xi * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    const double dp = points * (xi * p1 - p0) / (xi * xi - 1.0);
    x[i] = -xi;
    x[points - 1 - i] = xi;
    w[i] = w[points - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
}

QuadratureRule quadrature(Domain domain, int n, int level) {
  check_dimension(n);
  if (level < 1) throw std::invalid_argument("quadrature: level must be positive");

  QuadratureRule rule;
  rule.domain = domain;
  rule.n = n;
  rule.level = level;
  rule.exactness = 2 * level;

  // Sphere factor.
  std::vector<Vec3> snodes;
  std::vector<double> sweights;
  if (n == 2) {
    const int M = 2 * level + 2;
    snodes.reserve(M);
    for (int j = 0; j < M; ++j) {
      const double t = 2.0 * kPi * j / M;
      snodes.emplace_back(std::cos(t), std::sin(t), 0.0);
      sweights.push_back(2.0 * kPi / M);
    }
  } else {
    const int G = level + 1;
    const int M = 2 * level + 2;
    std::vector<double> t, wt;
    gauss_legendre(G, t, wt);
    snodes.reserve(static_cast<std::size_t>(G) * M);
    for (int i = 0; i < G; ++i) {
      const double z = t[i];
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int j = 0; j < M; ++j) {
        const double phi = 2.0 * kPi * j / M;
        snodes.emplace_back(s * std::cos(phi), s * std::sin(phi), z);
        sweights.push_back(wt[i] * 2.0 * kPi / M);
      }
    }
  }

  if (domain == Domain::Sphere) {
    rule.nodes = std::move(snodes);
    rule.weights = std::move(sweights);
    return rule;
  }

  // Ball: composite Gauss-Legendre in r (8 points per panel, `level`
  // panels) with the r^{n-1} Jacobian folded into the weights, crossed
  // with the sphere rule. The panel count, not the per-panel order,
  // carries the refinement: single high-order Gauss converges only
  // root-exponentially on compactly supported C-infinity factors.
  const int panels = std::max(2, level);
  const int per_panel = 8;
  std::vector<double> u, wu;
  gauss_legendre(per_panel, u, wu);
  rule.shell_count = panels * per_panel;
  rule.angular_count = static_cast<int>(snodes.size());
  rule.nodes.reserve(static_cast<std::size_t>(rule.shell_count) * snodes.size());
  for (int p = 0; p < panels; ++p) {
    const double a = static_cast<double>(p) / panels;
    const double b = static_cast<double>(p + 1) / panels;
    for (int i = 0; i < per_panel; ++i) {
      const double r = 0.5 * (a + b) + 0.5 * (b - a) * u[i];
      const double wr = 0.5 * (b - a) * wu[i] * std::pow(r, n - 1);
      for (std::size_t j = 0; j < snodes.size(); ++j) {
        rule.nodes.push_back(r * snodes[j]);
        rule.weights.push_back(wr * sweights[j]);
      }
    }
  }
  return rule;
}

}  // namespace dtn::harmonics
