#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "dtn/run.hpp"

using dtn::cli::RunConfig;
using dtn::cli::run;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int spawn(const std::string& args) {
  const std::string cmd = std::string(DTNLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("run dispatch and usage errors") {
  RunConfig c;
  c.subcommand = "no-such-thing";
  CHECK(run(c).exit_code == 2);

  c.subcommand = "radial-dtn";
  c.q_spec = "wobble:1";
  CHECK(run(c).exit_code == 2);

  c.subcommand = "gohberg";
  c.q_spec = "";
  c.symbol_spec = "branch+:1";
  c.N = 48;  // not a power of two
  CHECK(run(c).exit_code == 2);
}

TEST_CASE("reports carry the schema and the resolved config") {
  RunConfig c;
  c.subcommand = "ball-check";
  c.n = 3;
  c.K = 8;
  c.out_path = "cli_ball.json";
  const auto r = run(c);
  CHECK(r.exit_code == 0);
  const std::string text = slurp(c.out_path);
  CHECK(text.find("\"schema\": 1") != std::string::npos);
  CHECK(text.find("\"version\": \"dtnlab 0.1.0\"") != std::string::npos);
  CHECK(text.find("\"subcommand\": \"ball-check\"") != std::string::npos);
  CHECK(text.find("\"pass\": true") != std::string::npos);
  std::remove(c.out_path.c_str());
}

TEST_CASE("identical config and seed give byte-identical output") {
  RunConfig c;
  c.subcommand = "radial-projection";
  c.q_spec = "monomial:0,0,1";
  c.level = 4;
  c.rotation_samples = 40;
  c.seed = 7;
  c.out_path = "cli_rp_a.json";
  CHECK(run(c).exit_code == 0);
  const std::string first = slurp(c.out_path);
  c.out_path = "cli_rp_b.json";
  CHECK(run(c).exit_code == 0);
  CHECK(first == slurp(c.out_path));

  c.seed = 8;
  c.out_path = "cli_rp_c.json";
  CHECK(run(c).exit_code == 0);
  CHECK(first != slurp(c.out_path));
  std::remove("cli_rp_a.json");
  std::remove("cli_rp_b.json");
  std::remove("cli_rp_c.json");
}

TEST_CASE("default output directory comes from the environment") {
  REQUIRE(std::system("mkdir -p cli_out_dir") == 0);
  setenv("DTNLAB_OUT", "cli_out_dir", 1);
  CHECK(dtn::cli::default_output_dir() == "cli_out_dir");
  RunConfig c;
  c.subcommand = "ball-check";
  c.K = 4;
  CHECK(run(c).exit_code == 0);
  std::ifstream in("cli_out_dir/ball-check.json");
  CHECK(in.good());
  unsetenv("DTNLAB_OUT");
  std::system("rm -rf cli_out_dir");
}

TEST_CASE("executable exit codes") {
  CHECK(spawn("--help") == 0);
  CHECK(spawn("ball-check --n 3 --K 12 --out cli_spawn.json") == 0);
  CHECK(spawn("ball-check --bogus-flag") == 2);
  CHECK(spawn("") == 2);   // missing subcommand
  CHECK(spawn("moments --q radial:well:1,1 --K 2 --level 2 --csv /nonexistent-dir/m.csv "
              "--out cli_spawn.json") == 1);
  std::remove("cli_spawn.json");
}
