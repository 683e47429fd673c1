#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* p = std::getenv("BIDISK_CLI");
  REQUIRE_MESSAGE(p != nullptr, "BIDISK_CLI must point at the binary");
  return p;
}

int run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path sandbox() {
  fs::path dir = fs::temp_directory_path() / "bidisk_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const char* kDiag =
    R"({"mode": "polynomial", "p": {"coeffs": [[[0,0],[-1,0]],[[1,0],[0,0]]]}})";
const char* kAnnulus =
    R"({"mode": "inner", "k": 0, "l": 0, "p": {"coeffs": [[[1,0],[0,0]],[[0,0],[-0.5,0]]]}})";

}  // namespace

TEST_CASE("happy path: analyze writes a report") {
  fs::path dir = sandbox();
  write_file(dir / "in.json", kDiag);
  CHECK(run("analyze --input " + (dir / "in.json").string() + " --out " +
            (dir / "out").string() + " --grid 121") == 0);
  std::string report = slurp(dir / "out" / "report.json");
  CHECK(report.find("\"components\"") != std::string::npos);
  CHECK(report.find("\"reducibility\"") != std::string::npos);
}

TEST_CASE("malformed input exits 2") {
  fs::path dir = sandbox();
  write_file(dir / "bad.json", "{not json");
  CHECK(run("analyze --input " + (dir / "bad.json").string() + " --out " +
            (dir / "out").string()) == 2);
  write_file(dir / "unknown.json",
             R"({"mode": "polynomial", "p": {"coeffs": [[[1,0]]]}, "bogus": 1})");
  CHECK(run("analyze --input " + (dir / "unknown.json").string() + " --out " +
            (dir / "out").string()) == 2);
  CHECK(run("analyze --out " + (dir / "out").string()) == 2);  // missing --input
}

TEST_CASE("semantic validation failure exits 3") {
  fs::path dir = sandbox();
  // p = 1 - 2 z w vanishes inside the bidisk: not a stable denominator
  write_file(dir / "unstable.json",
             R"({"mode": "inner", "p": {"coeffs": [[[1,0],[0,0]],[[0,0],[-2,0]]]}})");
  CHECK(run("analyze --input " + (dir / "unstable.json").string() + " --out " +
            (dir / "out").string()) == 3);
}

TEST_CASE("unreadable input or unwritable output exits 4") {
  fs::path dir = sandbox();
  CHECK(run("analyze --input " + (dir / "missing.json").string() + " --out " +
            (dir / "out").string()) == 4);
  write_file(dir / "in.json", kDiag);
  CHECK(run("spectrum-map --input " + (dir / "in.json").string() +
            " --out /proc/no_such_dir --grid 121") == 4);
}

TEST_CASE("spectrum-map output is deterministic and well-formed") {
  fs::path dir = sandbox();
  write_file(dir / "in.json", kAnnulus);
  std::string base = " --input " + (dir / "in.json").string() + " --grid 121";
  CHECK(run("spectrum-map" + base + " --out " + (dir / "a").string()) == 0);
  CHECK(run("spectrum-map" + base + " --out " + (dir / "b").string()) == 0);
  for (const char* name : {"grid.csv", "map.pgm", "map.json"}) {
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
  }
  std::string pgm = slurp(dir / "a" / "map.pgm");
  CHECK(pgm.substr(0, 2) == "P5");
  CHECK(pgm.find("121 121") != std::string::npos);
  std::ifstream csv(dir / "a" / "grid.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "re,im,verdict,index");
  int lines = 0;
  for (std::string line; std::getline(csv, line);) ++lines;
  CHECK(lines == 121 * 121);
}

TEST_CASE("curves CSV covers the essential circle") {
  fs::path dir = sandbox();
  write_file(dir / "in.json", kAnnulus);
  CHECK(run("curves --input " + (dir / "in.json").string() + " --out " +
            (dir / "out").string()) == 0);
  std::ifstream csv(dir / "out" / "curves.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "curve,t,re,im,uncertain");
  int lines = 0;
  double worst = 0.0;
  for (std::string line; std::getline(csv, line);) {
    ++lines;
    double t, re, im;
    int curve, unc;
    REQUIRE(std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%d", &curve, &t, &re,
                        &im, &unc) == 5);
    worst = std::max(worst, std::abs(std::hypot(re, im) - 0.5));
  }
  CHECK(lines == 1024);
  CHECK(worst < 1e-9);
}

TEST_CASE("quotient-lab emits the weight table for monomial pairs") {
  fs::path dir = sandbox();
  write_file(dir / "in.json", kDiag);
  CHECK(run("quotient-lab --input " + (dir / "in.json").string() + " --out " +
            (dir / "out").string() + " --degree 12") == 0);
  std::string rep = slurp(dir / "out" / "quotient.json");
  CHECK(rep.find("\"commutant_dim_estimate\": 1") != std::string::npos);
  CHECK(rep.find("\"weighted_shift\"") != std::string::npos);
  std::ifstream csv(dir / "out" / "weights.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "N,formula,matrix,abs_diff");
}

TEST_CASE("reduce-check reports a verdict") {
  fs::path dir = sandbox();
  write_file(dir / "in.json",
             R"({"mode": "polynomial", "p": {"coeffs": [[[0,0],[0,0],[-1,0]],[[0,0],[0,0],[0,0]],[[1,0],[0,0],[0,0]]]}})");
  CHECK(run("reduce-check --input " + (dir / "in.json").string() + " --out " +
            (dir / "out").string() + " --grid 121") == 0);
  std::string rep = slurp(dir / "out" / "reducibility.json");
  CHECK(rep.find("\"verdict\": \"Reducible\"") != std::string::npos);
}
