#pragma once

#include <string>
#include <vector>

namespace dtn::cli {

/// Resolved configuration of one CLI run. Every numeric knob has a
/// default; the full struct is echoed into the output JSON so results are
/// reproducible from the file alone.
struct RunConfig {
  std::string subcommand;

  int n = 3;
  int K = 6;
  int level = 8;
  double ode_tol = 1e-12;
  int resolution = 256;
  int mesh_resolution = 192;
  unsigned long seed = 0;
  int rotation_samples = 400;

  std::string q_spec;       // radial-dtn / commutator / moments / radial-projection
  std::string symbol_spec;  // gohberg
  int N = 512;

  std::string kind = "sphere";  // surface: sphere | ellipsoid | delaunay
  double a = 1.0;
  double c = 1.2;
  double eps = 0.1;
  int periods = 3;
  double blend_center = 0.0;
  double blend_width = 1.0;
  std::vector<double> eps_list = {0.2, 0.1, 0.05};
  bool normalize = true;

  std::string out_path;  // resolved JSON output file
  std::string csv_path;  // optional CSV export
  std::string obj_path;  // optional OBJ export (surfaces)
};

struct RunResult {
  int exit_code = 0;       // 0 pass, 1 contract violation, 2 usage error
  std::string message;     // one-line diagnostic
};

/// Execute the subcommand, write its JSON (plus optional CSV/OBJ), and
/// report the contract outcome. Usage problems (unknown subcommand,
/// malformed specs) come back as exit code 2.
RunResult run(const RunConfig& config);

std::string version();

/// Default output directory: $DTNLAB_OUT or ".".
std::string default_output_dir();

}  // namespace dtn::cli
