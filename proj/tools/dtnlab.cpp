#include <CLI11.hpp>

#include <cstdio>

#include "dtn/run.hpp"

int main(int argc, char** argv) {
  dtn::cli::RunConfig config;
  CLI::App app{"dtnlab: Dirichlet-to-Neumann numerical laboratory"};
  app.set_version_flag("--version", dtn::cli::version());
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", config.out_path, "output JSON path (default <dir>/<cmd>.json)");
    sub->add_option("--csv", config.csv_path, "optional CSV export path");
  };

  auto* ball = app.add_subcommand("ball-check", "exact ball DtN identity residual");
  ball->add_option("--n", config.n, "ambient dimension (2 or 3)");
  ball->add_option("--K", config.K, "degree cutoff");
  add_common(ball);

  auto* rad = app.add_subcommand("radial-dtn", "Schrodinger DtN of a radial potential");
  rad->add_option("--q", config.q_spec,
                  "radial potential (const:c | well:a,p | bump:a,r0,w | tablefile:path)");
  rad->add_option("--n", config.n, "ambient dimension");
  rad->add_option("--K", config.K, "degree cutoff");
  rad->add_option("--ode-tol", config.ode_tol, "radial solver tolerance");
  add_common(rad);

  auto* comm = app.add_subcommand("commutator", "linearized DtN commutator diagnostics");
  comm->add_option("--q", config.q_spec,
                   "ball potential (radial:... | monomial:i,j,k[ x bump:r0,w] | sum:[...])");
  comm->add_option("--n", config.n, "ambient dimension");
  comm->add_option("--K", config.K, "degree cutoff");
  comm->add_option("--level", config.level, "ball quadrature level");
  add_common(comm);

  auto* mom = app.add_subcommand("moments", "solid-harmonic moments of a ball potential");
  mom->add_option("--q", config.q_spec, "ball potential");
  mom->add_option("--n", config.n, "ambient dimension");
  mom->add_option("--K", config.K, "degree cutoff");
  mom->add_option("--level", config.level, "ball quadrature level");
  add_common(mom);

  auto* proj = app.add_subcommand("radial-projection",
                                  "radial projection and the rotation-averaging identity");
  proj->add_option("--q", config.q_spec, "ball potential");
  proj->add_option("--n", config.n, "ambient dimension");
  proj->add_option("--level", config.level, "ball quadrature level");
  proj->add_option("--rotation-samples", config.rotation_samples, "Haar sample count");
  proj->add_option("--seed", config.seed, "rotation sampling seed");
  add_common(proj);

  auto* surf = app.add_subcommand("surface", "geometry report for one surface of revolution");
  surf->add_option("--kind", config.kind, "sphere | ellipsoid | delaunay");
  surf->add_option("--a", config.a, "ellipsoid: transverse semi-axis");
  surf->add_option("--c", config.c, "ellipsoid: axial semi-axis");
  surf->add_option("--eps", config.eps, "delaunay: rolled-ellipse minor axis");
  surf->add_option("--periods", config.periods, "delaunay: undulary periods");
  surf->add_option("--blend-center", config.blend_center, "delaunay: step window center");
  surf->add_option("--blend-width", config.blend_width, "delaunay: step window width");
  surf->add_option("--resolution", config.resolution, "profile resolution");
  surf->add_option("--mesh-resolution", config.mesh_resolution, "diameter mesh resolution");
  surf->add_flag_callback("--no-normalize", [&config] { config.normalize = false; },
                          "skip the area-4pi normalization");
  surf->add_option("--obj", config.obj_path, "optional OBJ export path");
  add_common(surf);

  auto* sweep = app.add_subcommand("delaunay-sweep", "capped Delaunay family sweep");
  sweep->add_option("--eps-list", config.eps_list, "minor-axis values");
  sweep->add_option("--periods", config.periods, "undulary periods");
  sweep->add_option("--blend-center", config.blend_center, "step window center");
  sweep->add_option("--blend-width", config.blend_width, "step window width");
  sweep->add_option("--resolution", config.resolution, "profile resolution");
  sweep->add_option("--mesh-resolution", config.mesh_resolution, "diameter mesh resolution");
  add_common(sweep);

  auto* goh = app.add_subcommand("gohberg", "circle-model symbol bounds");
  goh->add_option("--symbol", config.symbol_spec,
                  "branch+:c0,c1,...;branch-:c0,...;order:k (cosine series)");
  goh->add_option("--N", config.N, "grid size (power of two)");
  add_common(goh);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (auto* sub : app.get_subcommands()) config.subcommand = sub->get_name();

  const dtn::cli::RunResult result = dtn::cli::run(config);
  if (result.exit_code == 0)
    std::printf("%s: pass\n", config.subcommand.c_str());
  else
    std::fprintf(stderr, "%s: %s\n", config.subcommand.c_str(), result.message.c_str());
  return result.exit_code;
}
