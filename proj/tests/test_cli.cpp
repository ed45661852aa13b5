#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "zdcolor/cli.hpp"
#include "zdcolor/io.hpp"

using namespace zdcolor;

namespace {

struct Run {
  int code;
  std::string out, err;
  io::Json json() const { return io::Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "zdcolor-cli-test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("frozen gen prints the rule and an 8x8 picture") {
  auto r = run({"frozen", "gen", "--d", "2"});
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["manifest"]["command"] == "frozen gen");
  CHECK(j["manifest"]["params"]["d"] == 2);
  CHECK(j["manifest"]["version"] == cli::version());
  CHECK(j["result"]["rule"]["weights"] == io::Json::array({1, 2}));
  CHECK(j["result"]["proper"] == true);
  std::string ascii = j["result"]["ascii"];
  CHECK(std::count(ascii.begin(), ascii.end(), '\n') == 8);
  CHECK(ascii.substr(0, 9) == "02102102\n");

  auto a = run({"frozen", "gen", "--d", "2", "--format", "ascii"});
  CHECK(a.code == 0);
  CHECK(a.out.rfind("# {", 0) == 0);
  CHECK(a.out.find("02102102\n10210210\n") != std::string::npos);
}

TEST_CASE("non-extendable boundary round trip") {
  auto path = scratch("witness.json");
  auto w = run({"fill", "witness", "--d", "2", "--q", "3", "--n", "3", "--out", path.string()});
  REQUIRE(w.code == 0);
  CHECK(w.out.empty());
  auto f = run({"fill", "box", "--n", "3", "--d", "2", "--q", "3", "--boundary", path.string()});
  CHECK(f.code == 1);
  CHECK(f.json()["verdict"] == "unsat");
  CHECK(f.json()["result"]["extends"] == false);

  auto ok = run({"fill", "box", "--n", "6", "--d", "2", "--q", "4", "--boundary", path.string()});
  CHECK(ok.code == 2);  // palette of the file does not match
}

TEST_CASE("boundary files reach count, moves and sample") {
  // frozen 3-coloring around [2]^2
  io::Json partial = io::Json::array();
  for (Index i = 0; i <= 3; ++i)
    for (Index j = 0; j <= 3; ++j)
      if ((i == 0 || i == 3) != (j == 0 || j == 3)) partial.push_back(io::Json::array({{i, j}, (i + 2 * j) % 3}));
  auto path = scratch("frozen-ring.json");
  write(path, io::Json{{"d", 2}, {"q", 3}, {"low", {0, 0}}, {"high", {3, 3}}, {"partial", partial}}.dump());

  auto c = run({"census", "count", "--n", "2", "--d", "2", "--q", "3", "--boundary", path.string()});
  REQUIRE(c.code == 0);
  CHECK(c.json()["result"]["count"] == "1");
  CHECK(c.json()["result"]["boundary_sites"] == 8);

  auto m = run({"mixing", "moves", "--box", "2", "--d", "2", "--q", "3", "--boundary", path.string()});
  REQUIRE(m.code == 0);
  CHECK(m.json()["result"]["states"] == 1);

  auto s = run({"census", "sample", "--n", "2", "--d", "2", "--q", "3", "--steps", "5", "--seed", "1", "--boundary",
                path.string()});
  REQUIRE(s.code == 0);
  CHECK(s.json()["result"]["coloring"]["colors"] == io::Json::array({0, 2, 1, 0}));
}

TEST_CASE("witness cube") {
  auto r = run({"listcolor", "witness-cube", "--threads", "2"});
  REQUIRE(r.code == 0);
  auto j = r.json()["result"];
  CHECK(j["found"] == true);
  CHECK(j["verified_unsat"] == true);
  CHECK(j["lists"].size() == 8);
  CHECK(j["layered"]["unsat"] == true);
  CHECK(run({"listcolor", "witness-cube", "--d", "2"}).code == 1);
}

TEST_CASE("list solving from files and seeds") {
  auto r = run({"listcolor", "solve", "--n", "4", "--d", "2", "--random", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["result"]["respects_lists"] == true);

  auto cube = scratch("cube-lists.json");
  write(cube, run({"listcolor", "witness-cube"}).out);
  auto u = run({"listcolor", "solve", "--n", "2", "--d", "3", "--lists", cube.string()});
  CHECK(u.code == 1);
  CHECK(u.json()["verdict"] == "unsat");

  CHECK(run({"listcolor", "solve", "--n", "4", "--d", "2"}).code == 2);
  auto o = run({"listcolor", "orient", "--n", "2", "--d", "3"});
  CHECK(o.code == 1);
  CHECK(o.json()["result"]["hall_witness"].size() == 8);
  CHECK(run({"listcolor", "orient", "--n", "5", "--d", "3"}).code == 0);
  CHECK(run({"listcolor", "orient", "--n", "5", "--d", "2", "--perimeter", "--cap", "3"}).json()["result"]["respects_bounds"] == true);
}

TEST_CASE("frozenness checks from coloring files") {
  auto frozen = scratch("frozen.json");
  write(frozen, run({"frozen", "gen", "--d", "2", "--size", "9"}).out);
  auto yes = run({"frozen", "check", "--coloring", frozen.string(), "--F", "4,4;4,5;5,5", "--q", "3"});
  CHECK(yes.code == 0);
  CHECK(yes.json()["result"]["frozen"] == true);

  auto loose = scratch("loose.json");
  write(loose, io::to_json(testing::random_coloring(Box::cube(9, 2), 4, 1)).dump());
  auto no = run({"frozen", "check", "--coloring", loose.string(), "--F", "box:4,4:6,6", "--q", "4"});
  CHECK(no.code == 1);
  CHECK(no.json()["result"]["obstruction"] == true);
  CHECK(no.json()["result"].contains("alternative"));

  auto ob = run({"frozen", "obstruct", "--d", "2", "--F", "box:1,1:3,3", "--q", "4"});
  CHECK(ob.code == 0);
  CHECK(ob.json()["result"]["lhs"] == 27);
  CHECK(ob.json()["result"]["rhs"] == 24);
  CHECK(run({"frozen", "obstruct", "--d", "2", "--F", "box:1,1:2,2", "--q", "4"}).code == 1);
}

TEST_CASE("mixing commands") {
  auto t = run({"mixing", "tssm", "--d", "2", "--q", "4", "--radius", "6", "--exhaustive", "3"});
  CHECK(t.code == 0);
  CHECK(t.json()["result"]["gap"] == 5);
  CHECK(run({"mixing", "tssm", "--d", "2", "--q", "5"}).code == 2);
  CHECK(run({"mixing", "si", "--d", "2", "--q", "3", "--n", "2"}).json()["result"]["violated"] == true);
  auto m = run({"mixing", "moves", "--box", "2", "--d", "2", "--q", "3", "--kind", "kempe"});
  CHECK(m.code == 0);
  CHECK(m.json()["result"]["states"] == 18);
  CHECK(run({"mixing", "moves", "--box", "3", "--d", "2", "--q", "4", "--cap", "10"}).code == 2);
}

TEST_CASE("census outputs") {
  auto c = run({"census", "count", "--n", "2", "--d", "2", "--q", "3"});
  CHECK(c.json()["result"]["count"] == "18");
  auto csv = run({"census", "entropy", "--d", "1", "--q", "3", "--n-max", "3", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.find("n,count,log_count_per_site\n1,3,") != std::string::npos);
  CHECK(csv.out.find("\n3,12,") != std::string::npos);
  auto fr = run({"census", "count", "--n", "3", "--d", "2", "--q", "3", "--frozen"});
  CHECK(fr.json()["result"]["count"] == "1");
  auto pgm = run({"census", "sample", "--n", "3", "--d", "2", "--q", "5", "--steps", "5", "--seed", "1", "--format", "pgm"});
  CHECK(pgm.code == 0);
  CHECK(pgm.out.rfind("P2\n# {", 0) == 0);
}

TEST_CASE("reproducible output") {
  std::vector<std::string> args{"census", "sample", "--n", "5", "--d", "2", "--q", "5", "--steps", "100", "--seed", "12"};
  auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  args.back() = "13";
  CHECK(run(args).out != a.out);
}

TEST_CASE("usage errors exit with 2") {
  auto r = run({"frozen", "gen", "--d", "2", "--bogus"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
  CHECK(run({}).code == 2);
  CHECK(run({"frozen", "gen", "--d", "2", "--q", "5"}).code == 2);
  CHECK(run({"frozen", "gen", "--d", "2", "--format", "csv"}).code == 2);
  CHECK(run({"frozen", "gen", "--d", "2", "--format", "svg"}).code == 2);
  CHECK(run({"fill", "box", "--n", "3", "--d", "2", "--q", "3", "--boundary", "/nonexistent.json"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("thread count comes from the environment unless given") {
  setenv(cli::kThreadsEnv, "3", 1);
  CHECK(run({"frozen", "gen", "--d", "1"}).json()["manifest"]["params"]["threads"] == 3);
  CHECK(run({"--threads", "2", "frozen", "gen", "--d", "1"}).json()["manifest"]["params"]["threads"] == 2);
  CHECK(run({"frozen", "gen", "--d", "1", "--threads", "5"}).json()["manifest"]["params"]["threads"] == 5);
  unsetenv(cli::kThreadsEnv);
}
