#include "dtn/run.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "dtn/ball_dtn.hpp"
#include "dtn/errors.hpp"
#include "dtn/gohberg.hpp"
#include "dtn/harmonics.hpp"
#include "dtn/perturbation.hpp"
#include "dtn/potentials.hpp"
#include "dtn/radial_schrodinger.hpp"
#include "dtn/surface.hpp"

namespace dtn::cli {

namespace {

using nlohmann::json;

json config_json(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  j["n"] = c.n;
  j["K"] = c.K;
  j["level"] = c.level;
  j["ode_tol"] = c.ode_tol;
  j["resolution"] = c.resolution;
  j["mesh_resolution"] = c.mesh_resolution;
  j["seed"] = c.seed;
  j["rotation_samples"] = c.rotation_samples;
  j["q"] = c.q_spec;
  j["symbol"] = c.symbol_spec;
  j["N"] = c.N;
  j["kind"] = c.kind;
  j["a"] = c.a;
  j["c"] = c.c;
  j["eps"] = c.eps;
  j["periods"] = c.periods;
  j["blend_center"] = c.blend_center;
  j["blend_width"] = c.blend_width;
  j["eps_list"] = c.eps_list;
  j["normalize"] = c.normalize;
  return j;
}

json report_skeleton(const RunConfig& c) {
  json j;
  j["schema"] = 1;
  j["version"] = version();
  j["config"] = config_json(c);
  return j;
}

void write_report(const RunConfig& c, const json& j) {
  const std::string path =
      c.out_path.empty() ? default_output_dir() + "/" + c.subcommand + ".json" : c.out_path;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << j.dump(2) << "\n";
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index col = 0; col < m.cols(); ++col) row.push_back(m(r, col));
    rows.push_back(row);
  }
  return rows;
}

radial::SolveOptions solve_options(const RunConfig& c) {
  radial::SolveOptions opt;
  opt.rtol = opt.atol = c.ode_tol;
  return opt;
}

RunResult finish(const RunConfig& c, json& j, bool pass, const std::string& fail_msg) {
  j["pass"] = pass;
  write_report(c, j);
  return {pass ? 0 : 1, pass ? "ok" : fail_msg};
}

RunResult run_ball_check(const RunConfig& c) {
  json j = report_skeleton(c);
  const double residual = ball_dtn::ball_identity_residual(c.n, c.K);
  const double comm = spectral::SpectralOperator::commutator_max(
      ball_dtn::dtn_ball(c.n, c.K), ball_dtn::boundary_laplacian(c.n, c.K));
  j["residual_max"] = residual;
  j["commutator_max"] = comm;
  return finish(c, j, residual <= 1e-12 && comm <= 1e-14,
                "ball identity residual above tolerance");
}

RunResult run_radial_dtn(const RunConfig& c) {
  json j = report_skeleton(c);
  const auto q = potentials::parse_radial(c.q_spec.empty() ? "const:0" : c.q_spec);
  const auto table = radial::symbol_table(q, c.n, c.K, solve_options(c));
  json rows = json::array();
  json mu = json::array();
  for (const auto& [lambda, m] : table) {
    rows.push_back({lambda, m});
    mu.push_back(m);
  }
  j["symbol_table"] = rows;
  j["mu"] = mu;
  j["q_description"] = q.description;
  if (!c.csv_path.empty()) {
    std::ofstream csv(c.csv_path);
    if (!csv) throw std::runtime_error("cannot open " + c.csv_path);
    csv << "laplace_eigenvalue,mu\n";
    csv.precision(17);
    for (const auto& [lambda, m] : table) csv << lambda << "," << m << "\n";
  }
  return finish(c, j, true, "");
}

RunResult run_commutator(const RunConfig& c) {
  json j = report_skeleton(c);
  const auto q = potentials::parse_ball(c.q_spec.empty() ? "radial:const:0" : c.q_spec);
  const auto rule = harmonics::quadrature(harmonics::Domain::Ball, c.n, c.level);
  const auto assembled = perturbation::perturbative_dtn_matrix_checked(q, c.n, c.K, rule);
  const auto rep = perturbation::commutator_report(assembled.M);
  const double deficit = std::sqrt(perturbation::radial_deficit_sq(q, rule));

  json basis = json::array();
  for (const auto& idx : assembled.M.basis) basis.push_back({{"k", idx.k}, {"m", idx.m}});
  j["basis"] = basis;
  j["K"] = c.K;
  j["level"] = c.level;
  j["M"] = matrix_json(assembled.M.matrix);
  j["C"] = matrix_json(rep.C);
  j["h1_l2_norm"] = rep.h1_l2_norm;
  j["max_entry"] = rep.max_entry;
  j["radial_deficit"] = deficit;
  j["asymmetry"] = assembled.M.asymmetry();
  j["quadrature_converged"] = assembled.converged;
  j["refinement_shift"] = assembled.refinement_shift;
  return finish(c, j, assembled.M.asymmetry() <= 1e-10,
                "assembled matrix asymmetry flags quadrature failure");
}

RunResult run_moments(const RunConfig& c) {
  json j = report_skeleton(c);
  const auto q = potentials::parse_ball(c.q_spec.empty() ? "radial:well:1,1" : c.q_spec);
  const auto rule = harmonics::quadrature(harmonics::Domain::Ball, c.n, c.level);
  const auto basis = harmonics::basis_up_to(c.n, c.K);

  double max_off = 0.0, max_same = 0.0;
  Eigen::MatrixXd degree_max = Eigen::MatrixXd::Zero(c.K + 1, c.K + 1);
  std::ofstream csv;
  if (!c.csv_path.empty()) {
    csv.open(c.csv_path);
    if (!csv) throw std::runtime_error("cannot open " + c.csv_path);
    csv << "k,m,l,mp,value\n";
    csv.precision(17);
  }
  for (const auto& u : basis)
    for (const auto& v : basis) {
      const double val = perturbation::harmonic_moment(q, u, v, rule);
      degree_max(u.k, v.k) = std::max(degree_max(u.k, v.k), std::abs(val));
      if (u.k == v.k)
        max_same = std::max(max_same, std::abs(val));
      else
        max_off = std::max(max_off, std::abs(val));
      if (csv.is_open())
        csv << u.k << "," << u.m << "," << v.k << "," << v.m << "," << val << "\n";
    }
  j["degree_pair_max"] = matrix_json(degree_max);
  j["max_off_degree"] = max_off;
  j["max_same_degree"] = max_same;
  return finish(c, j, true, "");
}

RunResult run_radial_projection(const RunConfig& c) {
  json j = report_skeleton(c);
  const auto q = potentials::parse_ball(c.q_spec.empty() ? "monomial:0,0,1" : c.q_spec);
  const auto rule = harmonics::quadrature(harmonics::Domain::Ball, c.n, c.level);
  const auto p = perturbation::radial_projection(q, c.n, rule);
  const auto pp = perturbation::radial_projection(potentials::ball_from_radial(p), c.n, rule);

  json table = json::array();
  double idem = 0.0;
  for (int i = 0; i <= 64; ++i) {
    const double r = static_cast<double>(i) / 64;
    table.push_back({r, p(r)});
    idem = std::max(idem, std::abs(p(r) - pp(r)));
  }
  const double deficit_sq = perturbation::radial_deficit_sq(q, rule);
  const double avg =
      perturbation::rotation_average(q, c.n, c.rotation_samples, rule, c.seed);
  j["pq"] = table;
  j["idempotency_residual"] = idem;
  j["radial_deficit_sq"] = deficit_sq;
  j["rotation_average"] = avg;
  j["rotation_expected"] = 2.0 * deficit_sq;
  j["rotation_residual"] = std::abs(avg - 2.0 * deficit_sq);
  return finish(c, j, idem <= 1e-12, "radial projection failed idempotency");
}

json geometry_report(const surface::RevolutionSurface& s, double raw_area,
                     const RunConfig& c, bool& pass, std::string& why) {
  json g;
  g["raw_area"] = raw_area;
  g["area"] = s.area();
  const double gb_residual = std::abs(s.gauss_integral() - 4.0 * harmonics::kPi);
  g["gauss_bonnet_residual"] = gb_residual;

  double sup_ii = 0.0;
  try {
    sup_ii = surface::sup_grad_II_checked(s);
  } catch (const InternalConsistencyError& e) {
    pass = false;
    why = e.what();
    sup_ii = surface::sup_grad_II(s);
  }
  g["sup_grad_II"] = sup_ii;
  g["sup_grad_H"] = surface::sup_grad_H(s);
  const auto deficit = surface::umbilical_deficit(s);
  g["umbilical_deficit_sup"] = deficit.sup;
  g["umbilical_deficit_l2"] = deficit.l2;
  g["symbol_sup"] = surface::commutator_symbol_sup(s);

  const double diam = surface::intrinsic_diameter(s, c.mesh_resolution);
  const double bound = 32.0 / harmonics::kPi * s.abs_mean_integral();
  g["diameter"] = diam;
  g["topping_lhs"] = diam;
  g["topping_rhs"] = bound;
  const bool topping_ok = diam <= bound;
  g["topping_satisfied"] = topping_ok;
  g["nearly_umbilical_regime"] = 3.0 * sup_ii * diam < 0.5;

  if (s.closed() && gb_residual > 1e-6) {
    pass = false;
    why = "Gauss-Bonnet residual above 1e-6";
  }
  if (!topping_ok) {
    pass = false;
    why = "Topping inequality violated";
  }
  return g;
}

surface::RevolutionSurface build_surface(const RunConfig& c) {
  if (c.kind == "sphere") return surface::sphere_surface(c.resolution);
  if (c.kind == "ellipsoid") return surface::ellipsoid_surface(c.a, c.c, c.resolution);
  if (c.kind == "delaunay") {
    surface::CappedDelaunayParams p;
    p.eps = c.eps;
    p.blend_center = c.blend_center;
    p.blend_width = c.blend_width;
    p.periods = c.periods;
    p.resolution = c.resolution;
    return surface::capped_delaunay(p);
  }
  throw std::invalid_argument("surface: unknown kind '" + c.kind +
                              "' (sphere | ellipsoid | delaunay)");
}

RunResult run_surface(const RunConfig& c) {
  json j = report_skeleton(c);
  const auto raw = build_surface(c);
  const auto s = c.normalize ? surface::normalized_to_area(raw) : raw;
  bool pass = true;
  std::string why = "surface contract violation";
  json g = geometry_report(s, raw.area(), c, pass, why);
  if (c.kind == "delaunay") {
    g["stddev_H_delaunay"] = surface::stddev_H(s, surface::Region::Delaunay);
    double neck = 1e300;
    for (const auto& smp : s.profile.samples)
      if (smp.region == surface::Region::Delaunay) neck = std::min(neck, smp.rho);
    g["neck_rho_min"] = neck;
  }
  j["geometry"] = g;
  if (!c.obj_path.empty()) surface::write_obj(s, c.obj_path, c.mesh_resolution);
  if (!c.csv_path.empty()) surface::write_curvature_csv(s, c.csv_path);
  return finish(c, j, pass, why);
}

RunResult run_delaunay_sweep(const RunConfig& c) {
  json j = report_skeleton(c);
  json sweep = json::array();
  bool pass = true;
  std::string why = "delaunay sweep contract violation";
  double prev_grad_h = 1e300;
  bool decreasing = true;
  for (double eps : c.eps_list) {
    RunConfig ce = c;
    ce.kind = "delaunay";
    ce.eps = eps;
    const auto raw = build_surface(ce);
    const auto s = ce.normalize ? surface::normalized_to_area(raw) : raw;
    json g = geometry_report(s, raw.area(), ce, pass, why);
    g["eps"] = eps;
    g["stddev_H_delaunay"] = surface::stddev_H(s, surface::Region::Delaunay);
    double neck = 1e300;
    for (const auto& smp : s.profile.samples)
      if (smp.region == surface::Region::Delaunay) neck = std::min(neck, smp.rho);
    g["neck_rho_min"] = neck;
    const double gh = g["sup_grad_H"].get<double>();
    if (gh >= prev_grad_h) decreasing = false;
    prev_grad_h = gh;
    sweep.push_back(g);
  }
  j["sweep"] = sweep;
  j["sup_grad_H_decreasing"] = decreasing;
  return finish(c, j, pass, why);
}

gohberg::CircleSymbol parse_symbol(const std::string& spec) {
  // "branch+:c0,c1,...;branch-:c0,...;order:k" (cosine-series branches)
  std::vector<double> plus{1.0}, minus{1.0};
  int order = 0;
  std::size_t pos = 0;
  bool saw_any = false;
  while (pos < spec.size()) {
    const std::size_t next = spec.find(';', pos);
    const std::string part = spec.substr(pos, next == std::string::npos ? next : next - pos);
    pos = next == std::string::npos ? spec.size() : next + 1;
    if (part.empty()) continue;
    const auto colon = part.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("symbol spec: missing ':' in '" + part + "'");
    const std::string head = part.substr(0, colon);
    const std::string rest = part.substr(colon + 1);
    auto parse_list = [&](const std::string& s) {
      std::vector<double> out;
      std::size_t p = 0;
      while (p <= s.size()) {
        const std::size_t comma = s.find(',', p);
        const std::string tok = s.substr(p, comma == std::string::npos ? comma : comma - p);
        if (!tok.empty()) out.push_back(std::stod(tok));
        if (comma == std::string::npos) break;
        p = comma + 1;
      }
      if (out.empty()) throw std::invalid_argument("symbol spec: empty coefficient list");
      return out;
    };
    if (head == "branch+") {
      plus = parse_list(rest);
      saw_any = true;
    } else if (head == "branch-") {
      minus = parse_list(rest);
      saw_any = true;
    } else if (head == "order") {
      order = std::stoi(rest);
    } else {
      throw std::invalid_argument("symbol spec: unknown field '" + head + "'");
    }
  }
  if (!saw_any) throw std::invalid_argument("symbol spec: need branch+ or branch-");
  return gohberg::CircleSymbol::from_cosine_series(plus, minus, order);
}

RunResult run_gohberg(const RunConfig& c) {
  json j = report_skeleton(c);
  const auto a =
      parse_symbol(c.symbol_spec.empty() ? "branch+:2,1;branch-:1;order:0" : c.symbol_spec);
  bool pass = true;
  std::string why = "gohberg contract violation";

  if (a.order == 0) {
    const auto g = gohberg::gohberg_gap(a, c.N);
    j["sup_a"] = g.sup_a;
    j["op_norm"] = g.op_norm;
    j["gap"] = g.gap;
    j["gap_tolerance"] = gohberg::gap_tolerance(c.N);
    if (g.gap < -gohberg::gap_tolerance(c.N)) {
      pass = false;
      why = "Gohberg gap negative beyond tol(N)";
    }
    const std::vector<int> ms{2, 4, 8, 16, 32};
    const auto bounds = gohberg::essential_upper_bounds(a, c.N, ms);
    json jb = json::array();
    for (std::size_t i = 0; i < ms.size(); ++i) {
      jb.push_back({{"m", ms[i]}, {"bound", bounds[i]}});
      if (bounds[i] < g.sup_a - std::max(1e-6, gohberg::gap_tolerance(c.N))) {
        pass = false;
        why = "essential-norm upper bound dropped below the symbol sup";
      }
    }
    j["essential_bounds"] = jb;
    json jr = json::array();
    const auto f = gohberg::make_bump();
    for (int lambda : {16, 32, 64, 128})
      if (lambda <= c.N / 4)
        jr.push_back(
            {{"lambda", lambda},
             {"value", gohberg::oscillatory_residual(a, f, 1, lambda, c.N)}});
    j["residuals"] = jr;
  } else {
    const auto g = gohberg::order_k_gap(a, c.N);
    j["sup_a"] = g.sup_a;
    j["reduced_sup"] = g.reduced_sup;
    j["op_norm"] = g.op_norm;
    j["gap"] = g.gap;
    j["reduced_gap"] = g.reduced_gap;
    j["gap_tolerance"] = gohberg::order_gap_tolerance(c.N, a.order);
    if (g.gap > gohberg::order_gap_tolerance(c.N, a.order)) {
      pass = false;
      why = "order-k gap above tol(N, k)";
    }
  }
  return finish(c, j, pass, why);
}

}  // namespace

std::string version() { return "dtnlab 0.1.0"; }

std::string default_output_dir() {
  const char* env = std::getenv("DTNLAB_OUT");
  return env && *env ? env : ".";
}

RunResult run(const RunConfig& c) {
  try {
    if (c.subcommand == "ball-check") return run_ball_check(c);
    if (c.subcommand == "radial-dtn") return run_radial_dtn(c);
    if (c.subcommand == "commutator") return run_commutator(c);
    if (c.subcommand == "moments") return run_moments(c);
    if (c.subcommand == "radial-projection") return run_radial_projection(c);
    if (c.subcommand == "surface") return run_surface(c);
    if (c.subcommand == "delaunay-sweep") return run_delaunay_sweep(c);
    if (c.subcommand == "gohberg") return run_gohberg(c);
    return {2, "unknown subcommand '" + c.subcommand + "'"};
  } catch (const std::invalid_argument& e) {
    return {2, e.what()};
  } catch (const std::exception& e) {
    return {1, e.what()};
  }
}

}  // namespace dtn::cli
