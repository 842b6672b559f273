#pragma once

#include <functional>
#include <vector>

#include "dtn/errors.hpp"

namespace dtn::surface {

/// Position and derivatives (to third order) of a plane curve at one
/// parameter value. y is the distance to the revolution axis.
struct CurveJet {
  double x = 0, y = 0;
  double dx = 0, dy = 0;
  double ddx = 0, ddy = 0;
  double dddx = 0, dddy = 0;
};

using SegmentEval = std::function<CurveJet(double)>;

enum class Region { Cap, Blend, Delaunay, Generic };

/// One arclength sample of the profile with its cached curvature data.
/// kmu is the meridian principal curvature, kpi the parallel one, both
/// with respect to the outward normal (unit sphere: kmu = kpi = +1).
struct ProfileSample {
  double s = 0;
  double x = 0, rho = 0;
  double tx = 0, ty = 0;  // dx/ds, drho/ds
  double kmu = 0, kpi = 0;
  double dkmu = 0, dkpi = 0;  // d/ds
  Region region = Region::Generic;
};

/// Arclength-parametrized profile curve plus integrals accumulated with
/// per-interval Gauss quadrature on the exact parametric jets:
///   area        = int 2 pi rho ds
///   gauss       = int K dA          (4 pi for closed genus-0 profiles)
///   abs_mean    = int |H| dA
///   deficit_sq  = int |II - H Id|_F^2 dA = int (kmu - kpi)^2 / 2 dA
struct ProfileCurve {
  std::vector<ProfileSample> samples;
  bool closed_left = false;
  bool closed_right = false;
  double length = 0;
  double area = 0;
  double gauss = 0;
  double abs_mean = 0;
  double deficit_sq = 0;

  bool closed() const { return closed_left && closed_right; }
  /// Sample fields linearly interpolated at arclength s (clamped).
  ProfileSample at(double s) const;
};

struct SegmentSpec {
  SegmentEval eval;
  std::vector<double> params;  // increasing parameter values to sample
  Region region = Region::Generic;
  bool pole_start = false;  // rho -> 0 at the first sample
  bool pole_end = false;
};

/// Assemble a profile from parametric segments (in order). Throws
/// std::invalid_argument when segments are empty or regress in x at the
/// joints.
ProfileCurve build_profile(const std::vector<SegmentSpec>& segments);

/// Uniform rescaling by factor t > 0.
ProfileCurve scaled(const ProfileCurve& profile, double factor);

/// Closed unit-sphere profile.
ProfileCurve sphere_profile(int resolution);
/// Closed ellipsoid of revolution: semi-axis c along the axis, a across.
ProfileCurve ellipsoid_profile(double a, double c, int resolution);
/// Open cylinder segment of the given radius and length (test geometry).
ProfileCurve cylinder_profile(double radius, double length, int resolution);

struct CappedDelaunayParams {
  double eps = 0.1;           // full minor axis of the rolled ellipse
  double blend_center = 0.0;  // step window defaults to [-1/2, 1/2]
  double blend_width = 1.0;
  int periods = 3;            // undulary periods between the caps
  int resolution = 256;       // base samples per region; necks refine adaptively
};

/// Capped Delaunay surface: the undulary traced by the focus of an
/// ellipse with full axes (1, eps) rolled along the x-axis, blended into
/// unit semicircle caps on both ends with the C-infinity step. Closed and
/// genus 0; eps -> 0 recovers a chain of unit spheres.
/// Throws RefinementError when the neck cannot be resolved within the
/// sample budget implied by `resolution`.
ProfileCurve capped_delaunay_profile(const CappedDelaunayParams& params);

/// Roulette of the upper focus of the rolling ellipse (exposed for
/// tests): jet of the traced curve at rolling parameter t, with contact
/// at t = pi placed at the origin.
CurveJet undulary_jet(double eps, double t);
/// x-parametrized jet of the undulary graph y = u_eps(x), any real x.
CurveJet undulary_graph_jet(double eps, double x);
/// Spatial period of the undulary (the rolled ellipse circumference).
double undulary_period(double eps);

}  // namespace dtn::surface
