#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dtn::potentials {

using Vec3 = Eigen::Vector3d;

/// Radial potential q(r) on [0,1]. If support_radius is set the profile
/// vanishes for r > support_radius < 1.
struct RadialPotential {
  std::function<double(double)> profile;
  std::optional<double> support_radius;
  std::string description = "radial";

  double operator()(double r) const { return profile(r); }
};

/// Potential on the unit ball, evaluable at any point.
struct BallPotential {
  std::function<double(const Vec3&)> field;
  std::optional<double> support_radius;
  std::string description = "ball";

  double operator()(const Vec3& x) const { return field(x); }
};

RadialPotential radial_constant(double c);
/// a (1 - r^2)^p
RadialPotential radial_well(double a, double p);
/// Smooth compactly supported bump of amplitude a centered at r0 with
/// half-width w: a * exp(1 - 1/(1-u^2)), u = (r-r0)/w.
RadialPotential radial_bump(double a, double r0, double w);
/// Natural cubic spline through CSV samples (columns r,value). Accepts
/// merely continuous profiles; accuracy statements elsewhere assume the
/// smooth closed-form families.
RadialPotential radial_tablefile(const std::string& path);
/// Natural cubic spline through in-memory samples (r strictly increasing).
RadialPotential radial_spline(std::vector<double> r, std::vector<double> value,
                              std::string description = "spline");

BallPotential ball_from_radial(const RadialPotential& q);
/// x^i y^j z^k, optionally times a radial bump (amplitude 1).
BallPotential ball_monomial(int i, int j, int k);
BallPotential ball_monomial_bump(int i, int j, int k, double r0, double w);
BallPotential ball_sum(const std::vector<BallPotential>& terms);

/// Mini-language parsers.
///   radial: "const:c" | "well:a,p" | "bump:a,r0,w" | "tablefile:<path>"
///   ball:   "radial:<radial-spec>" | "monomial:i,j,k[ x bump:r0,w]"
///           | "sum:[spec;spec;...]"
/// Throw std::invalid_argument on malformed specs.
RadialPotential parse_radial(const std::string& spec);
BallPotential parse_ball(const std::string& spec);

/// C^infinity step: 0 for x <= lo, 1 for x >= hi, the normalized integral
/// of exp(-1/(u(1-u))) in between. derivative orders 0..3.
double smooth_step(double x, double lo, double hi, int derivative = 0);

}  // namespace dtn::potentials
