#include "dtn/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "dtn/harmonics.hpp"

namespace dtn::potentials {

namespace {

// exp(-1/(u(1-u))) on (0,1), zero outside.
double bump_kernel(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return std::exp(-1.0 / (u * (1.0 - u)));
}

double bump_kernel_d1(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double w = u * (1.0 - u);
  const double wp = 1.0 - 2.0 * u;
  return bump_kernel(u) * wp / (w * w);
}

double bump_kernel_d2(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  // psi = -1/w with w = u(1-u): psi' = w'/w^2, psi'' = w''/w^2 - 2w'^2/w^3.
  const double w = u * (1.0 - u);
  const double wp = 1.0 - 2.0 * u;
  const double psi1 = wp / (w * w);
  const double psi2 = -2.0 / (w * w) - 2.0 * wp * wp / (w * w * w);
  return bump_kernel(u) * (psi2 + psi1 * psi1);
}

// Cumulative integral of bump_kernel on [0,1], machine accurate.
class StepTable {
 public:
  StepTable() {
    std::vector<double> gx, gw;
    harmonics::gauss_legendre(7, gx, gw);
    cum_.assign(kCells + 1, 0.0);
    for (int i = 0; i < kCells; ++i) {
      const double a = static_cast<double>(i) / kCells;
      const double b = static_cast<double>(i + 1) / kCells;
      cum_[i + 1] = cum_[i] + segment(a, b, gx, gw);
    }
    total_ = cum_[kCells];
    gx_ = gx;
    gw_ = gw;
  }

  double total() const { return total_; }

  double integral_to(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return total_;
    const double pos = u * kCells;
    const int cell = std::min(kCells - 1, static_cast<int>(pos));
    const double a = static_cast<double>(cell) / kCells;
    return cum_[cell] + segment(a, u, gx_, gw_);
  }

 private:
  static double segment(double a, double b, const std::vector<double>& gx,
                        const std::vector<double>& gw) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t q = 0; q < gx.size(); ++q) s += gw[q] * bump_kernel(c + h * gx[q]);
    return s * h;
  }

  static constexpr int kCells = 512;
  std::vector<double> cum_;
  std::vector<double> gx_, gw_;
  double total_ = 0.0;
};

const StepTable& step_table() {
  static StepTable table;
  return table;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_num(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("potential spec: cannot parse number '" + s + "' in " + what);
  }
}

int parse_int(const std::string& s, const std::string& what) {
  const double v = parse_num(s, what);
  const int i = static_cast<int>(std::lround(v));
  if (std::abs(v - i) > 1e-9)
    throw std::invalid_argument("potential spec: expected integer in " + what);
  return i;
}

}  // namespace

double smooth_step(double x, double lo, double hi, int derivative) {
  if (!(hi > lo)) throw std::invalid_argument("smooth_step: need hi > lo");
  const double W = hi - lo;
  const double u = (x - lo) / W;
  const auto& table = step_table();
  switch (derivative) {
    case 0:
      return table.integral_to(u) / table.total();
    case 1:
      return bump_kernel(u) / table.total() / W;
    case 2:
      return bump_kernel_d1(u) / table.total() / (W * W);
    case 3:
      return bump_kernel_d2(u) / table.total() / (W * W * W);
    default:
      throw std::invalid_argument("smooth_step: derivative order 0..3 only");
  }
}

RadialPotential radial_constant(double c) {
  RadialPotential q;
  q.profile = [c](double) { return c; };
  q.description = "const:" + std::to_string(c);
  return q;
}

RadialPotential radial_well(double a, double p) {
  RadialPotential q;
  q.profile = [a, p](double r) { return a * std::pow(1.0 - r * r, p); };
  q.description = "well:" + std::to_string(a) + "," + std::to_string(p);
  return q;
}

RadialPotential radial_bump(double a, double r0, double w) {
  if (w <= 0.0) throw std::invalid_argument("radial bump: width must be positive");
  RadialPotential q;
  q.profile = [a, r0, w](double r) {
    const double u = (r - r0) / w;
    if (std::abs(u) >= 1.0) return 0.0;
    return a * std::exp(1.0 - 1.0 / (1.0 - u * u));
  };
  if (r0 + w < 1.0) q.support_radius = r0 + w;
  q.description = "bump:" + std::to_string(a) + "," + std::to_string(r0) + "," +
                  std::to_string(w);
  return q;
}

RadialPotential radial_tablefile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("tablefile: cannot open " + path);
  std::vector<double> r, v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a, b;
    if (ls >> a >> b) {
      r.push_back(a);
      v.push_back(b);
    }
  }
  return radial_spline(std::move(r), std::move(v), "tablefile:" + path);
}

RadialPotential radial_spline(std::vector<double> r, std::vector<double> v,
                              std::string description) {
  if (r.size() != v.size()) throw std::invalid_argument("spline: size mismatch");
  if (r.size() < 2) throw std::invalid_argument("spline: need at least two samples");
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] <= r[i - 1]) throw std::invalid_argument("spline: radii must increase");

  // Natural cubic spline second derivatives.
  const std::size_t n = r.size();
  std::vector<double> m(n, 0.0), diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
  diag[0] = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = r[i] - r[i - 1], h1 = r[i + 1] - r[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((v[i + 1] - v[i]) / h1 - (v[i] - v[i - 1]) / h0);
  }
  diag[n - 1] = 1.0;
  // Thomas solve (lower coefficients are the previous interval lengths).
  std::vector<double> cp(n, 0.0), dp(n, 0.0);
  cp[0] = upper[0] / diag[0];
  dp[0] = rhs[0] / diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double lower = (i + 1 < n) ? (r[i] - r[i - 1]) : 0.0;
    const double denom = diag[i] - lower * cp[i - 1];
    cp[i] = (i + 1 < n) ? upper[i] / denom : 0.0;
    dp[i] = (rhs[i] - lower * dp[i - 1]) / denom;
  }
  m[n - 1] = dp[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) m[i] = dp[i] - cp[i] * m[i + 1];

  auto rr = std::make_shared<std::vector<double>>(std::move(r));
  auto vv = std::make_shared<std::vector<double>>(std::move(v));
  auto mm = std::make_shared<std::vector<double>>(std::move(m));
  RadialPotential q;
  q.profile = [rr, vv, mm](double x) {
    const auto& R = *rr;
    const auto& V = *vv;
    const auto& M = *mm;
    if (x <= R.front()) return V.front();
    if (x >= R.back()) return V.back();
    const auto it = std::upper_bound(R.begin(), R.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - R.begin()) - 1;
    const double h = R[i + 1] - R[i];
    const double a = (R[i + 1] - x) / h, b = (x - R[i]) / h;
    return a * V[i] + b * V[i + 1] +
           ((a * a * a - a) * M[i] + (b * b * b - b) * M[i + 1]) * h * h / 6.0;
  };
  q.description = std::move(description);
  return q;
}

BallPotential ball_from_radial(const RadialPotential& q) {
  BallPotential b;
  b.field = [prof = q.profile](const Vec3& x) { return prof(x.norm()); };
  b.support_radius = q.support_radius;
  b.description = "radial:" + q.description;
  return b;
}

BallPotential ball_monomial(int i, int j, int k) {
  if (i < 0 || j < 0 || k < 0)
    throw std::invalid_argument("monomial: exponents must be nonnegative");
  BallPotential b;
  b.field = [i, j, k](const Vec3& x) {
    return std::pow(x.x(), i) * std::pow(x.y(), j) * std::pow(x.z(), k);
  };
  b.description = "monomial:" + std::to_string(i) + "," + std::to_string(j) + "," +
                  std::to_string(k);
  return b;
}

BallPotential ball_monomial_bump(int i, int j, int k, double r0, double w) {
  const BallPotential mono = ball_monomial(i, j, k);
  const RadialPotential bump = radial_bump(1.0, r0, w);
  BallPotential b;
  b.field = [mono, bump](const Vec3& x) { return mono(x) * bump(x.norm()); };
  b.support_radius = bump.support_radius;
  b.description = mono.description + " x bump:" + std::to_string(r0) + "," +
                  std::to_string(w);
  return b;
}

BallPotential ball_sum(const std::vector<BallPotential>& terms) {
  if (terms.empty()) throw std::invalid_argument("sum: empty term list");
  BallPotential b;
  b.field = [terms](const Vec3& x) {
    double s = 0.0;
    for (const auto& t : terms) s += t(x);
    return s;
  };
  bool all_support = true;
  double rmax = 0.0;
  for (const auto& t : terms) {
    if (!t.support_radius) all_support = false;
    else rmax = std::max(rmax, *t.support_radius);
  }
  if (all_support) b.support_radius = rmax;
  std::string d = "sum:[";
  for (std::size_t i = 0; i < terms.size(); ++i)
    d += terms[i].description + (i + 1 < terms.size() ? ";" : "");
  b.description = d + "]";
  return b;
}

RadialPotential parse_radial(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("radial spec: missing ':' in '" + spec + "'");
  const std::string head = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (head == "const") return radial_constant(parse_num(rest, spec));
  if (head == "well") {
    const auto parts = split(rest, ',');
    if (parts.size() != 2) throw std::invalid_argument("well: expected well:a,p");
    return radial_well(parse_num(parts[0], spec), parse_num(parts[1], spec));
  }
  if (head == "bump") {
    const auto parts = split(rest, ',');
    if (parts.size() != 3) throw std::invalid_argument("bump: expected bump:a,r0,w");
    return radial_bump(parse_num(parts[0], spec), parse_num(parts[1], spec),
                       parse_num(parts[2], spec));
  }
  if (head == "tablefile") return radial_tablefile(rest);
  throw std::invalid_argument("radial spec: unknown family '" + head + "'");
}

BallPotential parse_ball(const std::string& spec) {
  if (spec.rfind("radial:", 0) == 0) return ball_from_radial(parse_radial(spec.substr(7)));
  if (spec.rfind("monomial:", 0) == 0) {
    const std::string rest = spec.substr(9);
    const auto x_at = rest.find(" x ");
    const std::string mono = x_at == std::string::npos ? rest : rest.substr(0, x_at);
    const auto ijk = split(mono, ',');
    if (ijk.size() != 3) throw std::invalid_argument("monomial: expected monomial:i,j,k");
    const int i = parse_int(ijk[0], spec), j = parse_int(ijk[1], spec),
              k = parse_int(ijk[2], spec);
    if (x_at == std::string::npos) return ball_monomial(i, j, k);
    const std::string tail = rest.substr(x_at + 3);
    if (tail.rfind("bump:", 0) != 0)
      throw std::invalid_argument("monomial: expected '... x bump:r0,w'");
    const auto bw = split(tail.substr(5), ',');
    if (bw.size() != 2) throw std::invalid_argument("monomial bump: expected bump:r0,w");
    return ball_monomial_bump(i, j, k, parse_num(bw[0], spec), parse_num(bw[1], spec));
  }
  if (spec.rfind("sum:[", 0) == 0 && spec.back() == ']') {
    const std::string inner = spec.substr(5, spec.size() - 6);
    std::vector<BallPotential> terms;
    for (const auto& part : split(inner, ';'))
      if (!part.empty()) terms.push_back(parse_ball(part));
    return ball_sum(terms);
  }
  throw std::invalid_argument("ball potential spec: cannot parse '" + spec + "'");
}

}  // namespace dtn::potentials
