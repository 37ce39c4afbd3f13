#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stagfv/commands.hpp"
#include "stagfv/config.hpp"

using namespace stagfv;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing: defaults, comments and arrays") {
  const RunConfig c = parse_config_text(
      "# a Sod tube\n"
      "preset = sod\n"
      "nx = 50\n"
      "t_end = 0.1   # short run\n"
      "output_times = 0.05, 0.1\n"
      "interp_rho = muscl\n");
  CHECK(c.preset == "sod");
  CHECK(c.nx == 50);
  CHECK(c.dim == 1);
  CHECK(c.t_end == doctest::Approx(0.1));
  REQUIRE(c.output_times.size() == 2);
  CHECK(c.output_times[1] == doctest::Approx(0.1));
  CHECK(c.interp.rho == Interp::muscl);
  CHECK(c.interp.e == Interp::upwind);
  CHECK(c.uniform_dt);
}

TEST_CASE("config validation errors carry the key") {
  CHECK_THROWS_WITH_AS(parse_config_text("preset=sod\ngamma=0.9\n"),
                       doctest::Contains("gamma"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("preset=sod\nnx=0\n"), doctest::Contains("nx"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("preset=sod\nbogus=1\n"), doctest::Contains("bogus"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("preset=piecewise\ninterface=0.301\nnx=10\n"),
                       doctest::Contains("interface"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("preset=smooth2d\n"), doctest::Contains("smooth2d"),
                       ConfigError);
  CHECK_THROWS_AS(parse_config_text("preset=sod\ncfl=1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("no equals sign here\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_file("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("cmd_run writes field and audit files") {
  const auto dir = fresh_dir("stagfv_test_run");
  RunConfig c = parse_config_text("preset = sod\nnx = 50\nt_end = 0.05\naudit = true\n");
  c.output_dir = (dir / "out").string();
  std::ostringstream log;
  const int code = cmd_run(c, log);
  CHECK(code == 0);
  CHECK(std::filesystem::exists(dir / "out" / "fields_t0.05.csv"));
  CHECK(std::filesystem::exists(dir / "out" / "audit.csv"));
  const std::string fields = slurp(dir / "out" / "fields_t0.05.csv");
  CHECK(fields.find("# t=") != std::string::npos);
  CHECK(fields.find("x,rho,e,p") != std::string::npos);
  CHECK(fields.find("x,ux") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("identical configs reproduce bit-identical outputs") {
  const auto dir = fresh_dir("stagfv_test_repro");
  RunConfig c = parse_config_text("preset = sod\nnx = 64\nt_end = 0.05\naudit = true\n");
  std::ostringstream log;
  c.output_dir = (dir / "a").string();
  REQUIRE(cmd_run(c, log) == 0);
  c.output_dir = (dir / "b").string();
  REQUIRE(cmd_run(c, log) == 0);
  CHECK(slurp(dir / "a" / "fields_t0.05.csv") == slurp(dir / "b" / "fields_t0.05.csv"));
  CHECK(slurp(dir / "a" / "audit.csv") == slurp(dir / "b" / "audit.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("cmd_riemann prints the star state and writes a profile") {
  const auto dir = fresh_dir("stagfv_test_riemann");
  RunConfig c = parse_config_text("preset = sod\nriemann_time = 0.2\nriemann_samples = 101\n");
  c.output_dir = dir.string();
  std::ostringstream log;
  CHECK(cmd_riemann(c, log) == 0);
  CHECK(log.str().find("p*=0.30313") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "riemann.csv"));
  const std::string csv = slurp(dir / "riemann.csv");
  CHECK(csv.find("x,rho,u,p") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("uniform preset audit is quiet") {
  const auto dir = fresh_dir("stagfv_test_uniform");
  RunConfig c = parse_config_text(
      "preset = uniform\nrho0 = 1.0\ne0 = 1.0\nnx = 16\nt_end = 0.2\naudit = true\n");
  c.output_dir = dir.string();
  std::ostringstream log;
  CHECK(cmd_audit(c, log) == 0);
  CHECK(log.str().find("POSITIVITY LOST") == std::string::npos);
  std::filesystem::remove_all(dir);
}
