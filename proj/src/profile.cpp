#include "dtn/profile.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "dtn/harmonics.hpp"
#include "dtn/potentials.hpp"

namespace dtn::surface {

namespace {

constexpr double kPoleTol = 1e-12;

struct Gauss7 {
  std::vector<double> x, w;
  Gauss7() { harmonics::gauss_legendre(7, x, w); }
};

const Gauss7& gauss7() {
  static Gauss7 g;
  return g;
}

struct Vec2 {
  double x = 0, y = 0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 v) { return {c * v.x, c * v.y}; }
inline Vec2 rot90(Vec2 v) { return {-v.y, v.x}; }  // J

// Roulette of the upper focus of an ellipse with semi-axes (a, b) rolling
// on the x-axis; rolling parameter t is the ellipse parameter of the
// contact point, contact at t = pi placed at the origin. All derivatives
// are closed-form; only the rolled arclength sigma(t) is quadrature.
class Undulary {
 public:
  explicit Undulary(double eps) : a_(0.5), b_(0.5 * eps) {
    c_ = std::sqrt(a_ * a_ - b_ * b_);
    build_tables();
    Le_ = sigma(kT0 + 2.0 * harmonics::kPi);
  }

  double period() const { return Le_; }

  CurveJet jet(double t) const {
    const double st = std::sin(t), ct = std::cos(t);
    const double s1 = speed(t);
    const double s2 = (a_ * a_ - b_ * b_) * st * ct / s1;
    const double s3 =
        (a_ * a_ - b_ * b_) * (std::cos(2.0 * t) / s1 - st * ct * s2 / (s1 * s1));

    const Vec2 E{a_ * ct, b_ * st};
    const Vec2 E1{-a_ * st, b_ * ct};
    const double cb = E1.x / s1, sb = E1.y / s1;  // cos/sin of the tangent angle

    const double b1 = a_ * b_ / (s1 * s1);
    const double b2 = -2.0 * a_ * b_ * s2 / (s1 * s1 * s1);
    const double b3 = -2.0 * a_ * b_ * (s3 / (s1 * s1 * s1) - 3.0 * s2 * s2 / (s1 * s1 * s1 * s1));

    const Vec2 D{c_ - E.x, -E.y};
    const Vec2 D1{-E1.x, -E1.y};
    const Vec2 D2 = E;
    const Vec2 D3 = E1;

    const Vec2 G1 = D1 - b1 * rot90(D);
    const Vec2 G2 = D2 - b2 * rot90(D) - 2.0 * b1 * rot90(D1) - (b1 * b1) * D;
    const Vec2 G3 = D3 - b3 * rot90(D) - 3.0 * b2 * rot90(D1) - 3.0 * b1 * rot90(D2) -
                    3.0 * b1 * b2 * D - 3.0 * b1 * b1 * D1 + (b1 * b1 * b1) * rot90(D);

    auto world = [cb, sb](Vec2 v) -> Vec2 {
      return {cb * v.x + sb * v.y, -sb * v.x + cb * v.y};  // R(-beta) v
    };
    const Vec2 F0 = world(D), F1 = world(G1), F2 = world(G2), F3 = world(G3);

    CurveJet j;
    j.x = sigma(t) + F0.x;
    j.y = F0.y;
    j.dx = s1 + F1.x;
    j.dy = F1.y;
    j.ddx = s2 + F2.x;
    j.ddy = F2.y;
    j.dddx = s3 + F3.x;
    j.dddy = F3.y;
    return j;
  }

  double t_from_x(double x) const {
    if (x < xs_.front() - 1e-9 || x > xs_.back() + 1e-9)
      throw std::invalid_argument("undulary: x outside the tabulated rolling range");
    // x(t) is strictly increasing; bisection-safeguarded Newton. The raw
    // Newton step can shoot across a neck, where dx/dt is tiny.
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = std::min(xs_.size() - 1, static_cast<std::size_t>(it - xs_.begin()));
    if (i == 0) i = 1;
    double ta = ts_[i > 1 ? i - 2 : i - 1];
    double tb = ts_[std::min(xs_.size() - 1, i + 1)];
    double t = ts_[i - 1] + (ts_[i] - ts_[i - 1]) *
                                std::clamp((x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]), 0.0, 1.0);
    const double tol = 1e-14 * std::max(1.0, std::abs(x));
    for (int iter = 0; iter < 200; ++iter) {
      const CurveJet j = jet(t);
      const double dx = j.x - x;
      if (std::abs(dx) < tol) return t;
      (dx > 0.0 ? tb : ta) = t;
      double tn = t - dx / j.dx;
      if (!(tn > ta && tn < tb)) tn = 0.5 * (ta + tb);
      if (tn == t) break;
      t = tn;
    }
    if (std::abs(jet(t).x - x) > 1e-9)
      throw std::runtime_error("undulary: x->t inversion failed to converge");
    return t;
  }

  // Graph jet of y = u_eps(x); even around the bulge at x = 0.
  CurveJet graph_jet(double x) const {
    const bool mirrored = x < 0.0;
    const double t = t_from_x(mirrored ? -x : x);
    const CurveJet p = jet(t);
    CurveJet g;
    g.x = x;
    g.y = p.y;
    g.dx = 1.0;
    const double v = p.dx;
    g.dy = p.dy / v;
    const double N = p.ddy * p.dx - p.dy * p.ddx;
    g.ddy = N / (v * v * v);
    const double Ndot = p.dddy * p.dx - p.dy * p.dddx;
    g.dddy = (Ndot * v - 3.0 * p.ddx * N) / (v * v * v * v * v);
    if (mirrored) {
      g.dy = -g.dy;
      g.dddy = -g.dddy;
    }
    return g;
  }

  double max_tabulated_x() const { return xs_.back(); }

 private:
  static constexpr double kT0 = harmonics::kPi;
  static constexpr int kPerPeriod = 2048;
  static constexpr int kMaxPeriods = 13;

  double speed(double t) const {
    const double st = std::sin(t), ct = std::cos(t);
    return std::sqrt(a_ * a_ * st * st + b_ * b_ * ct * ct);
  }

  void build_tables() {
    const double t_end = kT0 + 2.0 * harmonics::kPi * kMaxPeriods + harmonics::kPi;
    const int cells = static_cast<int>((t_end - kT0) / (2.0 * harmonics::kPi) * kPerPeriod);
    ts_.resize(cells + 1);
    sig_.resize(cells + 1);
    sig_[0] = 0.0;
    const auto& g = gauss7();
    for (int i = 0; i <= cells; ++i) ts_[i] = kT0 + (t_end - kT0) * i / cells;
    for (int i = 0; i < cells; ++i) {
      const double h = 0.5 * (ts_[i + 1] - ts_[i]);
      const double c = 0.5 * (ts_[i + 1] + ts_[i]);
      double acc = 0.0;
      for (std::size_t q = 0; q < g.x.size(); ++q) acc += g.w[q] * speed(c + h * g.x[q]);
      sig_[i + 1] = sig_[i] + acc * h;
    }
    xs_.resize(ts_.size());
    for (std::size_t i = 0; i < ts_.size(); ++i) xs_[i] = jet_x_with_sigma(ts_[i], sig_[i]);
  }

  double jet_x_with_sigma(double t, double sig) const {
    const double st = std::sin(t), ct = std::cos(t);
    const double s1 = speed(t);
    const Vec2 E1{-a_ * st, b_ * ct};
    const double cb = E1.x / s1, sb = E1.y / s1;
    const Vec2 D{c_ - a_ * ct, -b_ * st};
    return sig + cb * D.x + sb * D.y;
  }

  double sigma(double t) const {
    const auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
    std::size_t i = std::min(ts_.size() - 1, static_cast<std::size_t>(it - ts_.begin()));
    if (i == 0) i = 1;
    const double t0 = ts_[i - 1];
    const auto& g = gauss7();
    const double h = 0.5 * (t - t0), c = 0.5 * (t + t0);
    double acc = 0.0;
    for (std::size_t q = 0; q < g.x.size(); ++q) acc += g.w[q] * speed(c + h * g.x[q]);
    return sig_[i - 1] + acc * h;
  }

  double a_, b_, c_;
  double Le_ = 0.0;
  std::vector<double> ts_, sig_, xs_;
};

const Undulary& undulary_cache(double eps) {
  static std::map<double, std::unique_ptr<Undulary>> cache;
  auto it = cache.find(eps);
  if (it == cache.end()) it = cache.emplace(eps, std::make_unique<Undulary>(eps)).first;
  return *it->second;
}

ProfileSample sample_from_jet(const CurveJet& j, Region region, bool at_pole) {
  const double v = std::hypot(j.dx, j.dy);
  if (v < 1e-14) throw std::invalid_argument("profile: stationary parametrization");
  ProfileSample s;
  s.x = j.x;
  s.rho = j.y;
  s.tx = j.dx / v;
  s.ty = j.dy / v;
  s.kmu = (j.dy * j.ddx - j.dx * j.ddy) / (v * v * v);
  const double vdot = (j.dx * j.ddx + j.dy * j.ddy) / v;
  s.dkmu = (j.dy * j.dddx - j.dx * j.dddy) / (v * v * v * v) -
           3.0 * s.kmu * vdot / (v * v);
  s.region = region;
  if (at_pole || j.y < kPoleTol) {
    if (at_pole) s.rho = 0.0;
    s.kpi = s.kmu;
    s.dkmu = 0.0;
    s.dkpi = 0.0;
  } else {
    s.kpi = j.dx / (v * j.y);
    s.dkpi = j.ddx / (v * v * j.y) - j.dx * vdot / (v * v * v * j.y) -
             j.dx * j.dy / (v * v * j.y * j.y);
  }
  return s;
}

}  // namespace

ProfileSample ProfileCurve::at(double s) const {
  if (samples.empty()) throw std::invalid_argument("profile: empty");
  if (s <= samples.front().s) return samples.front();
  if (s >= samples.back().s) return samples.back();
  std::size_t lo = 0, hi = samples.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (samples[mid].s <= s ? lo : hi) = mid;
  }
  const auto& p = samples[lo];
  const auto& q = samples[hi];
  const double t = (s - p.s) / (q.s - p.s);
  ProfileSample out = p;
  out.s = s;
  auto lerp = [t](double u, double v) { return (1.0 - t) * u + t * v; };
  out.x = lerp(p.x, q.x);
  out.rho = lerp(p.rho, q.rho);
  out.tx = lerp(p.tx, q.tx);
  out.ty = lerp(p.ty, q.ty);
  out.kmu = lerp(p.kmu, q.kmu);
  out.kpi = lerp(p.kpi, q.kpi);
  out.dkmu = lerp(p.dkmu, q.dkmu);
  out.dkpi = lerp(p.dkpi, q.dkpi);
  return out;
}

ProfileCurve build_profile(const std::vector<SegmentSpec>& segments) {
  if (segments.empty()) throw std::invalid_argument("build_profile: no segments");
  ProfileCurve curve;
  const auto& g = gauss7();

  double s_acc = 0.0;
  for (std::size_t seg = 0; seg < segments.size(); ++seg) {
    const auto& spec = segments[seg];
    if (spec.params.size() < 2)
      throw std::invalid_argument("build_profile: segment needs at least two samples");

    for (std::size_t i = 0; i < spec.params.size(); ++i) {
      const double t = spec.params[i];
      if (i > 0 && t <= spec.params[i - 1])
        throw std::invalid_argument("build_profile: params must increase");
      const CurveJet jt = spec.eval(t);
      const bool at_pole = (i == 0 && spec.pole_start) ||
                           (i + 1 == spec.params.size() && spec.pole_end);
      ProfileSample smp = sample_from_jet(jt, spec.region, at_pole);

      if (!curve.samples.empty() && i == 0) {
        const auto& prev = curve.samples.back();
        if (std::abs(prev.x - smp.x) > 1e-9 || std::abs(prev.rho - smp.rho) > 1e-9)
          throw std::invalid_argument("build_profile: segments do not join continuously");
        continue;  // joint sample already present
      }

      if (i > 0) {
        // accumulate arclength and the surface integrals over [t_{i-1}, t_i]
        const double t0 = spec.params[i - 1], t1 = t;
        const double h = 0.5 * (t1 - t0), c = 0.5 * (t1 + t0);
        double ds = 0, da = 0, dg = 0, dm = 0, dd = 0;
        for (std::size_t qx = 0; qx < g.x.size(); ++qx) {
          const CurveJet jq = spec.eval(c + h * g.x[qx]);
          const double v = std::hypot(jq.dx, jq.dy);
          const double kmu = (jq.dy * jq.ddx - jq.dx * jq.ddy) / (v * v * v);
          const double txv = jq.dx / v;
          const double w = g.w[qx];
          ds += w * v;
          da += w * 2.0 * harmonics::kPi * jq.y * v;
          // K dA = kmu * (tx/rho) * 2 pi rho v dt: the rho cancels.
          dg += w * 2.0 * harmonics::kPi * kmu * txv * v;
          dm += w * harmonics::kPi * std::abs(kmu * jq.y + txv) * v;
          if (jq.y > kPoleTol) {
            const double dev = kmu * jq.y - txv;
            dd += w * harmonics::kPi * v * dev * dev / jq.y;
          }
        }
        s_acc += ds * h;
        curve.area += da * h;
        curve.gauss += dg * h;
        curve.abs_mean += dm * h;
        curve.deficit_sq += dd * h;
      }
      smp.s = s_acc;
      curve.samples.push_back(smp);
    }
  }

  curve.length = s_acc;
  curve.closed_left = segments.front().pole_start;
  curve.closed_right = segments.back().pole_end;
  return curve;
}

ProfileCurve scaled(const ProfileCurve& profile, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("scaled: factor must be positive");
  ProfileCurve out = profile;
  for (auto& s : out.samples) {
    s.s *= factor;
    s.x *= factor;
    s.rho *= factor;
    s.kmu /= factor;
    s.kpi /= factor;
    s.dkmu /= factor * factor;
    s.dkpi /= factor * factor;
  }
  out.length *= factor;
  out.area *= factor * factor;
  out.abs_mean *= factor;
  // gauss and deficit_sq are scale invariant
  return out;
}

ProfileCurve sphere_profile(int resolution) {
  if (resolution < 8) throw std::invalid_argument("sphere_profile: resolution too small");
  SegmentSpec seg;
  seg.eval = [](double t) {
    CurveJet j;
    j.x = -std::cos(t);
    j.y = std::sin(t);
    j.dx = std::sin(t);
    j.dy = std::cos(t);
    j.ddx = std::cos(t);
    j.ddy = -std::sin(t);
    j.dddx = -std::sin(t);
    j.dddy = -std::cos(t);
    return j;
  };
  seg.params.resize(resolution + 1);
  for (int i = 0; i <= resolution; ++i)
    seg.params[i] = harmonics::kPi * i / resolution;
  seg.region = Region::Generic;
  seg.pole_start = seg.pole_end = true;
  return build_profile({seg});
}

ProfileCurve ellipsoid_profile(double a, double c, int resolution) {
  if (a <= 0.0 || c <= 0.0) throw std::invalid_argument("ellipsoid: axes must be positive");
  if (resolution < 8) throw std::invalid_argument("ellipsoid: resolution too small");
  SegmentSpec seg;
  seg.eval = [a, c](double t) {
    CurveJet j;
    j.x = -c * std::cos(t);
    j.y = a * std::sin(t);
    j.dx = c * std::sin(t);
    j.dy = a * std::cos(t);
    j.ddx = c * std::cos(t);
    j.ddy = -a * std::sin(t);
    j.dddx = -c * std::sin(t);
    j.dddy = -a * std::cos(t);
    return j;
  };
  seg.params.resize(resolution + 1);
  for (int i = 0; i <= resolution; ++i)
    seg.params[i] = harmonics::kPi * i / resolution;
  seg.pole_start = seg.pole_end = true;
  return build_profile({seg});
}

ProfileCurve cylinder_profile(double radius, double length, int resolution) {
  if (radius <= 0.0 || length <= 0.0) throw std::invalid_argument("cylinder: bad dimensions");
  SegmentSpec seg;
  seg.eval = [radius](double t) {
    CurveJet j;
    j.x = t;
    j.y = radius;
    j.dx = 1.0;
    return j;
  };
  seg.params.resize(resolution + 1);
  for (int i = 0; i <= resolution; ++i) seg.params[i] = length * i / resolution;
  return build_profile({seg});
}

CurveJet undulary_jet(double eps, double t) { return undulary_cache(eps).jet(t); }

CurveJet undulary_graph_jet(double eps, double x) {
  return undulary_cache(eps).graph_jet(x);
}

double undulary_period(double eps) { return undulary_cache(eps).period(); }

namespace {

// x-graph segment for the left blend window: v = (1-phi) u0 + phi u_eps
// with phi the rising smooth step on [lo, hi]; jets by the Leibniz rule.
SegmentSpec blend_segment(const Undulary& und, double lo, double hi, int samples) {
  SegmentSpec seg;
  seg.region = Region::Blend;
  seg.params.resize(samples + 1);
  for (int i = 0; i <= samples; ++i) seg.params[i] = lo + (hi - lo) * i / samples;
  seg.eval = [&und, lo, hi](double x) {
    const CurveJet u = und.graph_jet(x);
    const double u0 = std::sqrt(1.0 - x * x);
    const double u0p = -x / u0;
    const double u0pp = -1.0 / (u0 * u0 * u0);
    const double u0ppp = -3.0 * x / (u0 * u0 * u0 * u0 * u0);

    const double phi0 = potentials::smooth_step(x, lo, hi, 0);
    const double phi1 = potentials::smooth_step(x, lo, hi, 1);
    const double phi2 = potentials::smooth_step(x, lo, hi, 2);
    const double phi3 = potentials::smooth_step(x, lo, hi, 3);

    const double d0 = u.y - u0;
    const double d1 = u.dy - u0p;
    const double d2 = u.ddy - u0pp;
    const double d3 = u.dddy - u0ppp;

    CurveJet j;
    j.x = x;
    j.dx = 1.0;
    j.y = u0 + phi0 * d0;
    j.dy = u0p + phi1 * d0 + phi0 * d1;
    j.ddy = u0pp + phi2 * d0 + 2.0 * phi1 * d1 + phi0 * d2;
    j.dddy = u0ppp + phi3 * d0 + 3.0 * phi2 * d1 + 3.0 * phi1 * d2 + phi0 * d3;
    return j;
  };
  return seg;
}

SegmentSpec cap_segment(double cap_center, double theta_lo, double theta_hi, int samples,
                        bool pole_at_start) {
  SegmentSpec seg;
  seg.region = Region::Cap;
  seg.params.resize(samples + 1);
  for (int i = 0; i <= samples; ++i)
    seg.params[i] = theta_lo + (theta_hi - theta_lo) * i / samples;
  seg.eval = [cap_center](double t) {
    CurveJet j;
    j.x = cap_center - std::cos(t);
    j.y = std::sin(t);
    j.dx = std::sin(t);
    j.dy = std::cos(t);
    j.ddx = std::cos(t);
    j.ddy = -std::sin(t);
    j.dddx = -std::sin(t);
    j.dddy = -std::cos(t);
    return j;
  };
  seg.pole_start = pole_at_start;
  seg.pole_end = !pole_at_start;
  return seg;
}

}  // namespace

ProfileCurve capped_delaunay_profile(const CappedDelaunayParams& p) {
  if (!(p.eps > 0.0 && p.eps < 1.0))
    throw std::invalid_argument("capped_delaunay: eps must lie in (0,1)");
  if (p.periods < 1 || p.periods > 12)
    throw std::invalid_argument("capped_delaunay: periods must lie in 1..12");
  if (p.resolution < 16) throw std::invalid_argument("capped_delaunay: resolution too small");
  if (p.blend_width <= 0.0) throw std::invalid_argument("capped_delaunay: bad blend width");

  const Undulary& und = undulary_cache(p.eps);
  const double Le = und.period();
  const double lo = p.blend_center - 0.5 * p.blend_width;
  const double hi = p.blend_center + 0.5 * p.blend_width;
  if (lo <= -0.9 || hi >= 0.5 * Le - 0.02)
    throw std::invalid_argument(
        "capped_delaunay: blend window must sit inside the first undulary arch");

  const double xc = p.periods * Le;  // center of the right cap
  const double rlo_m = xc - hi;      // mirrored blend window [xc-hi, xc-lo]
  const double rhi = xc - lo;

  // --- Delaunay region sampling in the rolling parameter, with adaptive
  // subdivision so the necks stay resolved: each interval must satisfy
  // dx <= rho/5 (five grid cells across the neck).
  const double t_lo = und.t_from_x(hi);
  const double t_hi = und.t_from_x(rlo_m);
  const int base = std::max(64, p.resolution) * p.periods;
  std::vector<double> ts;
  ts.reserve(base + 1);
  for (int i = 0; i <= base; ++i) ts.push_back(t_lo + (t_hi - t_lo) * i / base);

  // Sample budget implied by the requested resolution; the geometric
  // grading toward the necks adds only a handful of samples per decade of
  // rho, so exceeding this means the necks are out of reach.
  const std::size_t budget = static_cast<std::size_t>(8) * p.resolution * p.periods;
  std::vector<double> refined;
  refined.push_back(ts[0]);
  struct Iv {
    double a, b;
  };
  std::vector<Iv> stack;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    stack.push_back({ts[i], ts[i + 1]});
    while (!stack.empty()) {
      const Iv iv = stack.back();
      stack.pop_back();
      const double mid = 0.5 * (iv.a + iv.b);
      const CurveJet ja = und.jet(iv.a);
      const CurveJet jb = und.jet(iv.b);
      const CurveJet jm = und.jet(mid);
      const double dx = jb.x - ja.x;
      const double rho_min = std::min({ja.y, jm.y, jb.y});
      if (dx > rho_min / 5.0) {
        if (dx <= 1e-10)
          throw RefinementError(
              "capped_delaunay: neck is below double-precision resolution");
        stack.push_back({mid, iv.b});
        stack.push_back({iv.a, mid});
        if (refined.size() + stack.size() > budget)
          throw RefinementError(
              "capped_delaunay: resolution too coarse to resolve the neck "
              "(min rho under 5 grid cells); increase resolution");
        continue;
      }
      refined.push_back(iv.b);
    }
  }

  SegmentSpec delaunay;
  delaunay.region = Region::Delaunay;
  delaunay.params = std::move(refined);
  delaunay.eval = [&und](double t) { return und.jet(t); };

  // --- caps and blends
  const int cap_samples = std::max(16, p.resolution / 3);
  const int blend_samples = std::max(32, p.resolution);
  const double theta_left = std::acos(-lo);
  SegmentSpec left_cap = cap_segment(0.0, 0.0, theta_left, cap_samples, true);
  SegmentSpec left_blend = blend_segment(und, lo, hi, blend_samples);

  // right blend runs delaunay -> cap; its undulary argument is x, the cap
  // sits at xc, and the step falls from 1 to 0 over [rlo_m, rhi].
  SegmentSpec right_blend;
  right_blend.region = Region::Blend;
  right_blend.params.resize(blend_samples + 1);
  for (int i = 0; i <= blend_samples; ++i)
    right_blend.params[i] = rlo_m + (rhi - rlo_m) * i / blend_samples;
  right_blend.eval = [&und, rlo_m, rhi, xc](double x) {
    const CurveJet u = und.graph_jet(x);
    const double xr = x - xc;
    const double u0 = std::sqrt(1.0 - xr * xr);
    const double u0p = -xr / u0;
    const double u0pp = -1.0 / (u0 * u0 * u0);
    const double u0ppp = -3.0 * xr / (u0 * u0 * u0 * u0 * u0);
    const double phi0 = potentials::smooth_step(x, rlo_m, rhi, 0);
    const double phi1 = potentials::smooth_step(x, rlo_m, rhi, 1);
    const double phi2 = potentials::smooth_step(x, rlo_m, rhi, 2);
    const double phi3 = potentials::smooth_step(x, rlo_m, rhi, 3);
    const double d0 = u0 - u.y;
    const double d1 = u0p - u.dy;
    const double d2 = u0pp - u.ddy;
    const double d3 = u0ppp - u.dddy;
    CurveJet j;
    j.x = x;
    j.dx = 1.0;
    j.y = u.y + phi0 * d0;
    j.dy = u.dy + phi1 * d0 + phi0 * d1;
    j.ddy = u.ddy + phi2 * d0 + 2.0 * phi1 * d1 + phi0 * d2;
    j.dddy = u.dddy + phi3 * d0 + 3.0 * phi2 * d1 + 3.0 * phi1 * d2 + phi0 * d3;
    return j;
  };

  const double theta_right_start = std::acos(xc - rhi);
  SegmentSpec right_cap =
      cap_segment(xc, theta_right_start, harmonics::kPi, cap_samples, false);

  return build_profile({left_cap, left_blend, delaunay, right_blend, right_cap});
}

}  // namespace dtn::surface
