#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "circumlab/cli.hpp"
#include "circumlab/mesh.hpp"

using namespace circumlab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("circumlab_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("exit code mapping") {
  CHECK(exit_code(ErrorClass::audit) == 1);
  CHECK(exit_code(ErrorClass::usage) == 2);
  CHECK(exit_code(ErrorClass::degenerate) == 3);
  CHECK(exit_code(ErrorClass::numerical) == 4);
}

TEST_CASE("triangle report") {
  const Run r = run({"triangle", "0,0", "1,0", "0,1"});
  REQUIRE(r.code == 0);
  const auto j = parse(r);
  CHECK(j["schema"] == "circumlab/1");
  CHECK(j["command"] == "triangle");
  CHECK(r.out.find("0.4915") != std::string::npos);
  CHECK(run({"triangle", "-1,0", "1,0", "0,1"}).code == 0);
  CHECK(run({"triangle", "0,0", "1,0", "2,0"}).code == 3);
  CHECK(run({"triangle", "0,0", "1,0"}).code == 2);
  CHECK(run({"triangle", "0,0", "1,0", "a,b"}).code == 2);
  CHECK(run({"triangle", "0,0", "1,0", "0,1", "--theta0", "2"}).code == 2);
}

TEST_CASE("needle study json and csv") {
  const Run j = run({"interp", "--needle-study", "1.5", "--levels", "4", "--field", "mono(2,0)"});
  REQUIRE(j.code == 0);
  CHECK(parse(j)["schema"] == "circumlab/1");

  const Run c = run({"--format", "csv", "interp", "--needle-study", "1.5", "--levels", "4"});
  REQUIRE(c.code == 0);
  std::istringstream lines(c.out);
  std::string header, line;
  std::getline(lines, header);
  CHECK(header.find("theta_max_rad") != std::string::npos);
  CHECK(header.find("bound_ok") != std::string::npos);
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"interp", "--needle-study", "1.5", "--field", "nope"}).code == 2);
  CHECK(run({"interp", "--needle-study", "1.0"}).code == 2);
  CHECK(run({"constants", "--estimate", "Q"}).code == 2);
  CHECK(run({"constants", "--estimate", "B", "--degree", "20"}).code == 2);
  CHECK(run({"mesh", "--family", "crisscross", "--n", "4", "--alpha", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("constants") {
  const Run ba = run({"constants", "--babuska-aziz"});
  REQUIRE(ba.code == 0);
  CHECK(ba.out.find("0.49291") != std::string::npos);

  const Run est = run({"constants", "--estimate", "D", "--degree", "8"});
  REQUIRE(est.code == 0);
  CHECK(parse(est)["schema"] == "circumlab/1");

  const Run audit = run({"constants", "--audit", "--degree", "6", "--right-count", "2", "--canonical-count", "3"});
  CHECK(audit.code == 0);
  // same seed, same report
  CHECK(run({"constants", "--audit", "--degree", "6", "--right-count", "2", "--canonical-count", "3"}).out ==
        audit.out);
}

TEST_CASE("mesh generation and stats") {
  const fs::path dir = fresh_dir("mesh");
  const Run g = run({"--out", dir.string(), "mesh", "--family", "crisscross", "--n", "4"});
  REQUIRE(g.code == 0);
  const fs::path file = dir / "mesh_crisscross_4.txt";
  REQUIRE(fs::exists(file));
  CHECK(read_mesh(slurp(file)).mesh.triangles.size() == 4 * 4 * 8);

  const Run s = run({"mesh", "--stats", file.string()});
  REQUIRE(s.code == 0);
  CHECK(s.out.find("max_R_K") != std::string::npos);

  const fs::path bad = dir / "bad.txt";
  std::ofstream(bad) << "vertices 3\n0 0 1\n1 0 1\n2 0 1\ntriangles 1\n0 1 2\n";
  CHECK(run({"mesh", "--stats", bad.string()}).code == 3);
  std::ofstream(bad) << "vertices x\n";
  CHECK(run({"mesh", "--stats", bad.string()}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("fem study writes reproducible files") {
  const fs::path dir = fresh_dir("fem");
  const std::vector<std::string> args{"--out", dir.string(), "--svg", "fem",   "--family",
                                      "crisscross", "--levels", "2",   "--n0", "4"};
  const Run a = run(args);
  REQUIRE(a.code == 0);
  const auto j = parse(a);
  CHECK(j["schema"] == "circumlab/1");
  for (const char* name : {"fem_crisscross.svg", "fem_crisscross.json", "fem_crisscross.csv"}) REQUIRE(fs::exists(dir / name));
  const std::string svg = slurp(dir / "fem_crisscross.svg"), json = slurp(dir / "fem_crisscross.json");
  CHECK(svg.find("<svg") != std::string::npos);

  const Run b = run(args);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);
  CHECK(slurp(dir / "fem_crisscross.svg") == svg);
  CHECK(slurp(dir / "fem_crisscross.json") == json);
  fs::remove_all(dir);
}
