#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(XTC_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Drops the wall-time line so that reports can be compared byte for byte.
std::string without_wall_time(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("\"wall_time_s\"") == std::string::npos) out += line + "\n";
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("xtc_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("exit codes") {
  TempDir dir;
  const fs::path report = dir.path / "r.json";
  CHECK(run("verify --suite stokes --geometry hemisphere --order 16 --out " + report.string()) == 0);
  CHECK(fs::exists(report));
  CHECK(read(report).find("stokes.hemisphere.e_z_total") != std::string::npos);

  const fs::path failed = dir.path / "f.json";
  CHECK(run("verify --suite curl --geometry plane_disk --tol curl.plane_disk.rotation=0 --out " + failed.string()) == 1);
  CHECK(fs::exists(failed));

  const fs::path none = dir.path / "none.json";
  CHECK(run("verify --geometry nowhere --out " + none.string()) == 2);
  CHECK(run("verify --suite nonsense --out " + none.string()) == 2);
  CHECK(run("verify --order 0 --out " + none.string()) == 2);
  CHECK(run("verify --geometry sphere --geom-params R=-1 --out " + none.string()) == 2);
  CHECK(run("verify --tol oops --out " + none.string()) == 2);
  CHECK(run("convergence --orders 8 --out " + none.string()) == 2);
  CHECK_FALSE(fs::exists(none));
}

TEST_CASE("curl example on the plane") {
  TempDir dir;
  const fs::path report = dir.path / "c.json";
  CHECK(run("verify --suite curl --geometry plane_disk --out " + report.string()) == 0);
  CHECK(read(report).find("\"curl.plane_disk.rotation\"") != std::string::npos);
}

TEST_CASE("same seed gives byte-identical reports") {
  TempDir dir;
  const fs::path a = dir.path / "a.json", b = dir.path / "b.json";
  REQUIRE(run("verify --suite tensor-algebra --seed 42 --out " + a.string()) == 0);
  REQUIRE(run("verify --suite tensor-algebra --seed 42 --out " + b.string()) == 0);
  CHECK(without_wall_time(read(a)) == without_wall_time(read(b)));
}

TEST_CASE("command-line flags override the config file") {
  TempDir dir;
  const fs::path cfg = dir.path / "run.cfg", report = dir.path / "r.json";
  std::ofstream(cfg) << "# verification settings\nsuite = curl\ngeometry = plane_disk\norder = 8\nseed = 5\n";
  REQUIRE(run("verify --config " + cfg.string() + " --order 12 --out " + report.string()) == 0);
  const std::string text = read(report);
  CHECK(text.find("\"suite\": \"curl\"") != std::string::npos);
  CHECK(text.find("\"order\": 12") != std::string::npos);
  CHECK(text.find("\"seed\": 5") != std::string::npos);

  std::ofstream(cfg) << "colour = blue\n";
  CHECK(run("verify --config " + cfg.string() + " --out " + report.string()) == 2);
}

TEST_CASE("convergence and list commands") {
  TempDir dir;
  const fs::path csv = dir.path / "c.csv";
  REQUIRE(run("convergence --orders 4,8,16 --hx 1e-4,1e-5 --out " + csv.string()) == 0);
  const std::string text = read(csv);
  CHECK(text.rfind("check,parameter,value,error,monotone", 0) == 0);
  CHECK(text.find("sphere.area,order,16") != std::string::npos);

  const fs::path list = dir.path / "list.txt";
  REQUIRE(std::system((std::string(XTC_BINARY) + " list geometries > " + list.string()).c_str()) == 0);
  CHECK(read(list).find("sphere") != std::string::npos);
  REQUIRE(std::system((std::string(XTC_BINARY) + " list suites > " + list.string()).c_str()) == 0);
  CHECK(read(list).find("evolving") != std::string::npos);
  CHECK(run("list shapes") == 2);
}
