#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "bnqn/cli.hpp"
#include "bnqn/error.hpp"

using namespace bnqn;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Value of `key=` on its own line.
std::string field(const std::string& text, const std::string& key) {
  const std::string tag = key + "=";
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(tag, 0) == 0) return line.substr(tag.size());
  return {};
}

struct TempDir {
  std::filesystem::path path = std::filesystem::temp_directory_path() / "bnqn_test_cli";
  TempDir() { std::filesystem::create_directories(path); }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("solve") {
  const Result r = cli({"solve", "--poly", "-1,0,1", "--method", "bnqn", "--z0", "0.3,-1.7"});
  CHECK(r.code == 0);
  CHECK(field(r.out, "terminal").rfind("Root", 0) == 0);
  const std::string point = field(r.out, "point");
  CHECK(std::stod(point.substr(0, point.find(','))) == doctest::Approx(1.0));
  CHECK(field(r.out, "converged") == "true");

  // Negative leading values are accepted as option arguments.
  const Result neg = cli({"solve", "--z0", "-0.3,-1.7"});
  CHECK(neg.code == 0);
  CHECK(std::stod(field(neg.out, "point")) == doctest::Approx(-1.0));

  const Result hf = cli({"solve", "--poly", "1,0,-1", "--highest-first", "--z0", "0.3,-1.7"});
  CHECK(hf.out == r.out);

  for (const char* m : {"newton", "nqn", "btgd", "newton1d", "rrn1d"})
    CHECK(cli({"solve", "--method", m, "--z0", "1.2,0.3"}).code == 0);

  // 17 significant digits.
  const Result p = cli({"solve", "--method", "newton", "--z0", "2,0", "--max-iter", "1", "--tol", "0"});
  CHECK(field(p.out, "point").rfind("1.4545454545454546", 0) == 0);
}

TEST_CASE("solve writes a trace") {
  TempDir dir;
  const auto path = dir.path / "t.csv";
  CHECK(cli({"solve", "--z0", "2,0", "--trace", path.string()}).code == 0);
  const std::string csv = slurp(path);
  CHECK(csv.rfind("k,x,y,gamma,delta_index,grad_norm\n", 0) == 0);
  CHECK(csv.find("# terminal=Root(1)") != std::string::npos);
  CHECK(cli({"solve", "--trace", (dir.path / "no" / "t.csv").string()}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"solve", "--bogus"}).code == 1);
  CHECK(cli({"solve", "--method", "bfgs"}).code == 1);
  CHECK(cli({"solve", "--poly", "1,x"}).code == 1);
  CHECK(cli({"solve", "--poly", "3"}).code == 1);
  CHECK(cli({"solve", "--z0", "1"}).code == 1);
  CHECK(cli({"solve", "--deltas", "0,1,1"}).code == 1);
  CHECK(cli({"solve", "--deltas", "0,1"}).code == 1);
  CHECK(cli({"solve", "--tau", "0"}).code == 1);
  CHECK(cli({"solve", "--gamma0", "2"}).code == 1);
  CHECK(cli({"solve", "--max-iter", "0"}).code == 1);
  CHECK(cli({"basin", "--window", "2,-2,-2,2"}).code == 1);
  CHECK(cli({"basin", "--res", "0,4"}).code == 1);
  CHECK(cli({"invariance", "--c", "0"}).code == 1);
  const Result e = cli({"rrn", "--rho", "1.2"});
  CHECK(e.code == 1);
  CHECK(e.err.find("rho") != std::string::npos);
  CHECK(cli({"rrn", "--rho", "0.5"}).code == 1);
  CHECK(cli({"rrn", "--rho", "1"}).code == 1);
  CHECK(cli({"rrn", "--trials", "0"}).code == 1);
}

TEST_CASE("runtime failures") {
  const Result r = cli({"basin", "--res", "3,3", "--out", "", "--csv", "/nonexistent-dir/b.csv"});
  CHECK(r.code == 2);
  CHECK(r.err.find("/nonexistent-dir/b.csv") != std::string::npos);
  CHECK(cli({"basin", "--res", "3,3", "--out", "/nonexistent-dir/b.ppm"}).code == 2);
}

TEST_CASE("help documents defaults") {
  const Result top = cli({"--help"});
  CHECK(top.code == 0);
  for (const char* s : {"solve", "basin", "invariance", "rrn"}) CHECK(top.out.find(s) != std::string::npos);
  const Result h = cli({"solve", "--help"});
  CHECK(h.code == 0);
  for (const char* s : {"[0,1,-1]", "--tau FLOAT [1]", "--theta FLOAT [0]", "--gamma0 FLOAT [1]", "[1e-10]", "[10000]"})
    CHECK_MESSAGE(h.out.find(s) != std::string::npos, s);
  const Result b = cli({"basin", "--help"});
  CHECK(b.out.find("[400,400]") != std::string::npos);
  CHECK(b.out.find("[-2,2,-2,2]") != std::string::npos);
  const Result r = cli({"rrn", "--help"});
  CHECK(r.out.find("[0.7]") != std::string::npos);
  CHECK(r.out.find("[500]") != std::string::npos);
}

TEST_CASE("basin writes both files and is reproducible") {
  TempDir dir;
  const auto ppm = dir.path / "b.ppm", csv = dir.path / "b.csv";
  const std::vector<std::string> args{"basin", "--poly", "-1,0,1", "--method", "bnqn", "--window", "-2,2,-2,2",
                                      "--res", "101,101", "--out", ppm.string(), "--csv", csv.string()};
  const Result r = cli(args);
  CHECK(r.code == 0);
  CHECK(field(r.out, "CriticalNonRoot(0)") == "101");
  CHECK(field(r.out, "Root(0)") == "5050");
  CHECK(field(r.out, "Root(1)") == "5050");
  const std::string image = slurp(ppm), table = slurp(csv);
  CHECK(image.rfind("P6\n101 101\n255\n", 0) == 0);
  CHECK(image.size() == std::string("P6\n101 101\n255\n").size() + 101 * 101 * 3);
  CHECK(table.rfind("i,j,x,y,class,root_index,iterations\n", 0) == 0);

  const Result again = cli(args);
  CHECK(again.out == r.out);
  CHECK(slurp(ppm) == image);
  CHECK(slurp(csv) == table);

  const std::vector<std::string> rrn_args{"basin", "--poly", "-1,0,0,1", "--method", "rrn1d", "--res", "40,30",
                                          "--seed", "3", "--out", "", "--csv", csv.string()};
  CHECK(cli(rrn_args).code == 0);
  const std::string first = slurp(csv);
  CHECK(cli(rrn_args).code == 0);
  CHECK(slurp(csv) == first);
}

TEST_CASE("invariance") {
  const Result r = cli({"invariance", "--poly", "-1,0,1", "--c", "2", "--rotation", "0.7", "--z0", "0.4,1.1",
                        "--steps", "100"});
  CHECK(r.code == 0);
  CHECK(std::stod(field(r.out, "max_deviation")) <= 1e-8);
  const Result refl = cli({"invariance", "--c", "0.5", "--rotation", "2", "--reflect", "--tau", "1.5"});
  CHECK(refl.code == 0);
  CHECK(std::stod(field(refl.out, "max_deviation")) <= 1e-8);
  const Result n = cli({"invariance", "--newton", "--steps", "20"});
  CHECK(n.code == 0);
  CHECK(std::stod(field(n.out, "newton_deviation")) <= 1e-9);
  const Result s = cli({"invariance", "--shear", "--z0", "1,2"});
  CHECK(s.code == 0);
  CHECK(std::stod(field(s.out, "parallelism_defect")) > 0.01);
  CHECK(field(s.out, "mapped_w").rfind("-1,", 0) == 0);
}

TEST_CASE("rrn") {
  const Result r = cli({"rrn", "--poly", "-1,0,1", "--rho", "0.7", "--trials", "500", "--max-iter", "2000", "--seed",
                        "7"});
  CHECK(r.code == 0);
  CHECK(std::stod(field(r.out, "converged_fraction")) >= 0.99);
  CHECK(cli({"rrn", "--poly", "-1,0,1", "--seed", "7"}).out == r.out);
  // 0.99 lies inside the admissible range 0.5 < rho < 1.
  CHECK(cli({"rrn", "--rho", "0.99", "--trials", "20"}).code == 0);

  const RrnReport rep = run_rrn_experiment(Polynomial{-1.0, 0.0, 0.0, 1.0}, 0.7, 500, 2000, 1);
  REQUIRE(rep.per_root_counts.size() == 3);
  for (int c : rep.per_root_counts) CHECK(c > 0);
  CHECK(rep.converged_fraction >= 0.99);
  CHECK_THROWS_AS(run_rrn_experiment(Polynomial{-1.0, 0.0, 1.0}, 0.4, 10, 10, 1), InvalidArgument);
}
