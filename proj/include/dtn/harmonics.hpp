#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace dtn::harmonics {

using Vec3 = Eigen::Vector3d;

/// Index of a real L2-orthonormal harmonic on S^{n-1}, n in {2,3}.
///
/// Ordering conventions (degree-major, then order label):
///   n=2: k=0 has the single label m=0; k>=1 has m=+1 (cos k*theta)
///        followed by m=-1 (sin k*theta).
///   n=3: m runs through -k..k; negative m are the sin-type harmonics.
struct HarmonicIndex {
  int n = 3;
  int k = 0;
  int m = 0;

  bool valid() const;
  std::string label() const;

  bool operator==(const HarmonicIndex&) const = default;
};

/// Number of basis functions of degree k: 1 or 2 for n=2, 2k+1 for n=3.
int degree_count(int n, int k);

/// All indices with degree <= K in the canonical ordering.
std::vector<HarmonicIndex> basis_up_to(int n, int K);

/// Eigenvalue k(k+n-2) of the positive spherical Laplacian.
double laplace_eigenvalue(const HarmonicIndex& idx);

/// Value of the orthonormal harmonic at a unit-sphere point.
/// For n=2 the point must lie on the equatorial circle (z=0).
/// Throws std::domain_error if p is off the sphere (tolerance 1e-12).
double eval_basis(const HarmonicIndex& idx, const Vec3& p);

/// Values of every harmonic with degree <= K at one point, in
/// basis_up_to ordering. Much cheaper than repeated eval_basis calls.
std::vector<double> eval_all(int n, int K, const Vec3& p);

/// Solid harmonic r^k Y_k(x/r); the homogeneous harmonic polynomial
/// that restricts to eval_basis on the sphere. Defined on all of R^n.
double solid_harmonic(const HarmonicIndex& idx, const Vec3& x);

enum class Domain { Sphere, Ball };

/// Product quadrature rule on S^{n-1} or B^n. Weights are positive and
/// sum to the domain volume; polynomials of degree <= exactness are
/// integrated exactly. Ball rules are radial-shell products (composite
/// Gauss in r with the r^{n-1} Jacobian folded into the weights, times a
/// sphere rule) and store their nodes shell-major: node index
/// = shell * angular_count + angular index.
struct QuadratureRule {
  Domain domain = Domain::Sphere;
  int n = 3;
  int level = 0;
  int exactness = 0;
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  int shell_count = 0;    // ball rules only
  int angular_count = 0;  // ball rules only

  double weight_sum() const;
  /// |S^{n-1}| or |B^n|.
  double domain_volume() const;
  /// Debug dump: nodes, weights, exactness.
  void write_json(const std::string& path) const;
};

/// Build a rule with exactness 2*level. Throws std::invalid_argument
/// for unsupported n or nonpositive level.
QuadratureRule quadrature(Domain domain, int n, int level);

/// Gauss-Legendre nodes/weights on [-1,1].
void gauss_legendre(int points, std::vector<double>& x, std::vector<double>& w);

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSphereArea3 = 4.0 * kPi;        // |S^2|
inline constexpr double kCircleLength = 2.0 * kPi;       // |S^1|

double sphere_area(int n);
double ball_volume(int n);

}  // namespace dtn::harmonics
