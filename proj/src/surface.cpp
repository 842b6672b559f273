#include "dtn/surface.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "dtn/harmonics.hpp"

namespace dtn::surface {

RevolutionSurface sphere_surface(int resolution) {
  return {sphere_profile(resolution)};
}

RevolutionSurface ellipsoid_surface(double a, double c, int resolution) {
  return {ellipsoid_profile(a, c, resolution)};
}

RevolutionSurface cylinder_surface(double radius, double length, int resolution) {
  return {cylinder_profile(radius, length, resolution)};
}

RevolutionSurface capped_delaunay(const CappedDelaunayParams& params) {
  return {capped_delaunay_profile(params)};
}

RevolutionSurface scaled(const RevolutionSurface& surface, double factor) {
  return {scaled(surface.profile, factor)};
}

RevolutionSurface normalized_to_area(const RevolutionSurface& surface) {
  return scaled(surface, std::sqrt(4.0 * harmonics::kPi / surface.area()));
}

FundamentalData fundamental_data(const RevolutionSurface& surface, double s) {
  const ProfileSample p = surface.profile.at(s);
  FundamentalData f;
  f.kmu = p.kmu;
  f.kpi = p.kpi;
  f.H = 0.5 * (p.kmu + p.kpi);
  f.K = p.kmu * p.kpi;
  return f;
}

double grad_II_norm(const ProfileSample& p) {
  double mixed = 0.0;
  if (p.rho > 1e-12) mixed = (p.ty / p.rho) * (p.kmu - p.kpi);
  return std::sqrt(p.dkmu * p.dkmu + p.dkpi * p.dkpi + 2.0 * mixed * mixed);
}

double sup_grad_II(const RevolutionSurface& surface) {
  double sup = 0.0;
  for (const auto& p : surface.profile.samples) sup = std::max(sup, grad_II_norm(p));
  return sup;
}

namespace {

// Geodesic on the metric ds^2 + rho(s)^2 dphi^2 starting at (s0, 0) with
// unit velocity in the parallel direction, integrated by RK4 together
// with the parallel-frame angle theta (rate -phidot * rho').
struct GeoState {
  double s, phi, sdot, phidot, theta;
};

GeoState geo_rhs(const ProfileCurve& prof, const GeoState& y) {
  const ProfileSample p = prof.at(y.s);
  GeoState d;
  d.s = y.sdot;
  d.phi = y.phidot;
  d.sdot = p.rho * p.ty * y.phidot * y.phidot;
  d.phidot = (p.rho > 1e-12) ? -2.0 * (p.ty / p.rho) * y.sdot * y.phidot : 0.0;
  d.theta = -y.phidot * p.ty;
  return d;
}

GeoState geo_step(const ProfileCurve& prof, const GeoState& y, double h) {
  auto add = [](const GeoState& a, double c, const GeoState& b) {
    return GeoState{a.s + c * b.s, a.phi + c * b.phi, a.sdot + c * b.sdot,
                    a.phidot + c * b.phidot, a.theta + c * b.theta};
  };
  const GeoState k1 = geo_rhs(prof, y);
  const GeoState k2 = geo_rhs(prof, add(y, 0.5 * h, k1));
  const GeoState k3 = geo_rhs(prof, add(y, 0.5 * h, k2));
  const GeoState k4 = geo_rhs(prof, add(y, h, k3));
  GeoState out = y;
  out.s += h / 6.0 * (k1.s + 2.0 * k2.s + 2.0 * k3.s + k4.s);
  out.phi += h / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi);
  out.sdot += h / 6.0 * (k1.sdot + 2.0 * k2.sdot + 2.0 * k3.sdot + k4.sdot);
  out.phidot += h / 6.0 * (k1.phidot + 2.0 * k2.phidot + 2.0 * k3.phidot + k4.phidot);
  out.theta += h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
  return out;
}

// II evaluated on the parallel-transported frame after flowing time t
// along the parallel-direction geodesic: returns the three components
// II(A,A), II(A,B), II(B,B) with A,B the transports of e1,e2.
void parallel_II(const ProfileCurve& prof, double s0, double t, double comps[3]) {
  GeoState y{s0, 0.0, 0.0, 1.0 / std::max(prof.at(s0).rho, 1e-12), 0.0};
  const int steps = 32;
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) y = geo_step(prof, y, h);
  const ProfileSample p = prof.at(y.s);
  const double ca = std::cos(y.theta), sa = std::sin(y.theta);
  // A = cos(theta) e1 + sin(theta) e2, B = -sin(theta) e1 + cos(theta) e2.
  comps[0] = p.kmu * ca * ca + p.kpi * sa * sa;
  comps[1] = (p.kpi - p.kmu) * ca * sa;
  comps[2] = p.kmu * sa * sa + p.kpi * ca * ca;
}

}  // namespace

double grad_II_normal_coordinates(const RevolutionSurface& surface, double s,
                                  double step) {
  const ProfileCurve& prof = surface.profile;
  // Direction e1 (meridian): the frame is parallel along meridians and the
  // components are just (kmu, 0, kpi) as functions of s.
  const ProfileSample pp = prof.at(s + step);
  const ProfileSample pm = prof.at(s - step);
  const double d1_11 = (pp.kmu - pm.kmu) / (2.0 * step);
  const double d1_22 = (pp.kpi - pm.kpi) / (2.0 * step);
  const double d1_12 = 0.0;

  // Direction e2: geodesic shooting with parallel transport.
  double cp[3], cm[3];
  parallel_II(prof, s, step, cp);
  parallel_II(prof, s, -step, cm);
  const double d2_11 = (cp[0] - cm[0]) / (2.0 * step);
  const double d2_12 = (cp[1] - cm[1]) / (2.0 * step);
  const double d2_22 = (cp[2] - cm[2]) / (2.0 * step);

  return std::sqrt(d1_11 * d1_11 + 2.0 * d1_12 * d1_12 + d1_22 * d1_22 +
                   d2_11 * d2_11 + 2.0 * d2_12 * d2_12 + d2_22 * d2_22);
}

double sup_grad_II_checked(const RevolutionSurface& surface, int spots) {
  const double sup = sup_grad_II(surface);
  const double L = surface.profile.length;
  const double scale = std::max(sup, 1e-8);
  for (int i = 1; i <= spots; ++i) {
    const double s = L * i / (spots + 1);
    const ProfileSample p = surface.profile.at(s);
    if (p.rho < 0.05 * L / spots) continue;  // skip near-pole spots
    const double step = std::min(1e-4 * L, 0.2 * p.rho);
    const double frame = grad_II_norm(p);
    const double fd = grad_II_normal_coordinates(surface, s, step);
    if (std::abs(frame - fd) > 0.01 * scale)
      throw InternalConsistencyError(
          "sup_grad_II: frame formula and normal-coordinate finite differences "
          "disagree by more than 1% at s=" + std::to_string(s));
  }
  return sup;
}

double sup_grad_H(const RevolutionSurface& surface) {
  double sup = 0.0;
  for (const auto& p : surface.profile.samples)
    sup = std::max(sup, 0.5 * std::abs(p.dkmu + p.dkpi));
  return sup;
}

double sup_grad_H(const RevolutionSurface& surface, Region region) {
  double sup = 0.0;
  for (const auto& p : surface.profile.samples)
    if (p.region == region) sup = std::max(sup, 0.5 * std::abs(p.dkmu + p.dkpi));
  return sup;
}

double stddev_H(const RevolutionSurface& surface, Region region) {
  const auto& samples = surface.profile.samples;
  double w_total = 0.0, mean = 0.0;
  std::vector<double> H, W;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    if (samples[i].region != region || samples[i + 1].region != region) continue;
    const double ds = samples[i + 1].s - samples[i].s;
    const double rho = 0.5 * (samples[i].rho + samples[i + 1].rho);
    const double h = 0.25 * (samples[i].kmu + samples[i].kpi + samples[i + 1].kmu +
                             samples[i + 1].kpi);
    const double w = rho * ds;
    H.push_back(h);
    W.push_back(w);
    w_total += w;
    mean += w * h;
  }
  if (w_total == 0.0) return 0.0;
  mean /= w_total;
  double var = 0.0;
  for (std::size_t i = 0; i < H.size(); ++i) var += W[i] * (H[i] - mean) * (H[i] - mean);
  return std::sqrt(var / w_total);
}

UmbilicalDeficit umbilical_deficit(const RevolutionSurface& surface) {
  UmbilicalDeficit d;
  for (const auto& p : surface.profile.samples)
    d.sup = std::max(d.sup, 0.5 * std::abs(p.kmu - p.kpi));
  d.l2 = std::sqrt(std::max(0.0, surface.profile.deficit_sq));
  return d;
}

ToppingReport topping_report(const RevolutionSurface& surface, int mesh_resolution) {
  if (!surface.closed())
    throw std::invalid_argument("topping_report: surface must be closed");
  ToppingReport rep;
  rep.diameter = intrinsic_diameter(surface, mesh_resolution);
  rep.bound = 32.0 / harmonics::kPi * surface.abs_mean_integral();
  rep.satisfied = rep.diameter <= rep.bound;
  return rep;
}

double commutator_symbol_sup_at(const ProfileSample& p) {
  // With u = xi_1^2 on the unit circle of directions, the squared symbol
  // is g(u) = u (A + (B - A) u)^2 where A = kmu' - 2 (rho'/rho)(kmu-kpi)
  // and B = kpi'. Critical points: u = -A/(3(B-A)) and the ends.
  double mixed = 0.0;
  if (p.rho > 1e-12) mixed = (p.ty / p.rho) * (p.kmu - p.kpi);
  const double A = p.dkmu - 2.0 * mixed;
  const double B = p.dkpi;
  const double D = B - A;
  double best = std::abs(B);  // u = 1
  if (std::abs(D) > 0.0) {
    const double u = -A / (3.0 * D);
    if (u > 0.0 && u < 1.0) {
      const double val = std::sqrt(u) * std::abs(A + D * u);
      best = std::max(best, val);
    }
  }
  return best;
}

double commutator_symbol_sup(const RevolutionSurface& surface) {
  double sup = 0.0;
  for (const auto& p : surface.profile.samples)
    sup = std::max(sup, commutator_symbol_sup_at(p));
  return sup;
}

void write_curvature_csv(const RevolutionSurface& surface, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "s,x,rho,kmu,kpi,H,K,dkmu_ds,dkpi_ds,grad_II,region\n";
  out.precision(17);
  for (const auto& p : surface.profile.samples) {
    const char* region = p.region == Region::Cap       ? "cap"
                         : p.region == Region::Blend   ? "blend"
                         : p.region == Region::Delaunay ? "delaunay"
                                                        : "generic";
    out << p.s << "," << p.x << "," << p.rho << "," << p.kmu << "," << p.kpi << ","
        << 0.5 * (p.kmu + p.kpi) << "," << p.kmu * p.kpi << "," << p.dkmu << ","
        << p.dkpi << "," << grad_II_norm(p) << "," << region << "\n";
  }
}

void write_obj(const RevolutionSurface& surface, const std::string& path,
               int mesh_resolution) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  const ProfileCurve& prof = surface.profile;
  const int M = std::max(8, mesh_resolution);
  const int rings = M;
  const int around = std::max(8, M / 2);

  const bool closed = prof.closed();
  std::vector<double> svals;
  // interior rings for closed profiles; full range otherwise
  for (int i = 0; i < rings; ++i) {
    const double f = closed ? (i + 1.0) / (rings + 1.0) : static_cast<double>(i) / (rings - 1);
    svals.push_back(prof.length * f);
  }

  out << "# surface of revolution\n";
  out.precision(10);
  for (double s : svals) {
    const ProfileSample p = prof.at(s);
    for (int j = 0; j < around; ++j) {
      const double phi = 2.0 * harmonics::kPi * j / around;
      out << "v " << p.x << " " << p.rho * std::cos(phi) << " " << p.rho * std::sin(phi)
          << "\n";
    }
  }
  int pole_left_id = 0, pole_right_id = 0;
  if (closed) {
    const ProfileSample pl = prof.samples.front();
    const ProfileSample pr = prof.samples.back();
    out << "v " << pl.x << " 0 0\n";
    out << "v " << pr.x << " 0 0\n";
    pole_left_id = rings * around + 1;
    pole_right_id = rings * around + 2;
  }
  auto vid = [around](int i, int j) { return i * around + (j % around) + 1; };
  for (int i = 0; i + 1 < rings; ++i)
    for (int j = 0; j < around; ++j) {
      out << "f " << vid(i, j) << " " << vid(i + 1, j) << " " << vid(i + 1, j + 1) << "\n";
      out << "f " << vid(i, j) << " " << vid(i + 1, j + 1) << " " << vid(i, j + 1) << "\n";
    }
  if (closed) {
    for (int j = 0; j < around; ++j) {
      out << "f " << pole_left_id << " " << vid(0, j + 1) << " " << vid(0, j) << "\n";
      out << "f " << pole_right_id << " " << vid(rings - 1, j) << " " << vid(rings - 1, j + 1)
          << "\n";
    }
  }
}

}  // namespace dtn::surface
