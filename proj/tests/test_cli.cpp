// Runs the simulate binary end to end.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("gatom_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(SIMULATE_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, BadConfigExitsTwoAndWritesNothing) {
  const fs::path dir = scratch("bad");
  const fs::path out = dir / "out";
  write(dir / "a.conf", "scenario = fig1c\ncircuit.omega0_ghz = -1\n");
  write(dir / "b.conf", "scenario = fig1c\nnot.a.key = 1\n");
  write(dir / "c.conf", "scenario = fig1c\ngrid.t_end_ns = ten\n");
  for (const char* name : {"a.conf", "b.conf", "c.conf"}) {
    EXPECT_EQ(run("--config " + (dir / name).string() + " --out " + out.string()), 2) << name;
    EXPECT_FALSE(fs::exists(out)) << name;
  }
  EXPECT_EQ(run("--config " + (dir / "missing.conf").string()), 2);
  EXPECT_EQ(run("--config " + (dir / "a.conf").string() + " --frame sideways"), 2);
  EXPECT_EQ(run(""), 2);
}

TEST(Cli, DriveResonantWithResonatorIsAConfigError) {
  const fs::path dir = scratch("resonant");
  write(dir / "r.conf", "scenario = fig1c\ndrive1.omega_d_ghz = 3.0\n");
  EXPECT_EQ(run("--config " + (dir / "r.conf").string() + " --out " + (dir / "out").string()), 2);
  EXPECT_FALSE(fs::exists(dir / "out"));
}

TEST(Cli, GeometryMapRunsAreBitIdentical) {
  const fs::path dir = scratch("geometry");
  write(dir / "g.conf", "scenario = geometry-map\ngeometry.resolution = 11\n");
  ASSERT_EQ(run("--config " + (dir / "g.conf").string() + " --out " + (dir / "one").string()), 0);
  ASSERT_EQ(run("--config " + (dir / "g.conf").string() + " --out " + (dir / "two").string()), 0);
  const std::string a = read(dir / "one" / "geometry_map.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, read(dir / "two" / "geometry_map.csv"));
}

TEST(Cli, FlagsOverrideConfig) {
  const fs::path dir = scratch("override");
  write(dir / "f.conf", "scenario = geometry-map\ngrid.t_end_ns = 20\n");
  ASSERT_EQ(run("--config " + (dir / "f.conf").string() + " --scenario fig1c --out " + (dir / "o").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "o" / "fig1c_out_of_phase.csv"));
  EXPECT_TRUE(fs::exists(dir / "o" / "fig1c_out_of_phase_summary.txt"));
  EXPECT_FALSE(fs::exists(dir / "o" / "geometry_map.csv"));
}
