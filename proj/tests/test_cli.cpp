#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qineq/cli.hpp"
#include "qineq/format.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qineq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = qineq::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

const std::string kSalaries = QINEQ_TEST_DATA "/Salaries.csv";

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qineq_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("exact indices") {
  const auto r = run({"exact", "--dist", "dagum:sigma=1,a=2,b=1", "--dist", "dagum:a=4,b=0.5"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 5);
  CHECK(l[0] == "dist,kind,value");
  CHECK(l[1] == "\"dagum:sigma=1,a=2,b=1\",qZI,0.734404");
  CHECK(l[2] == "\"dagum:sigma=1,a=2,b=1\",qDI,0.613706");
  CHECK(l[3] == "\"dagum:sigma=1,a=4,b=0.5\",qZI,0.597335");
  CHECK(l[4] == "\"dagum:sigma=1,a=4,b=0.5\",qDI,0.510535");

  const auto j = run({"exact", "--dist", "pareto:alpha=2", "--kind", "GI,qZI", "--format", "json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc[0]["dist"] == "pareto:xm=1,alpha=2");
  REQUIRE(doc[0]["indices"].size() == 2);
  CHECK(doc[0]["indices"][0]["kind"] == "GI");
  CHECK(doc[0]["indices"][0]["value"].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-6));
  CHECK(doc[0]["indices"][1]["kind"] == "qZI");
}

TEST_CASE("full precision prints round-trip digits") {
  const auto r = run({"exact", "--dist", "dagum:a=2,b=1", "--kind", "qZI", "--full-precision"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  const std::string v = l[1].substr(l[1].rfind(',') + 1);
  CHECK(v.size() > 12);
  CHECK(std::stod(v) == doctest::Approx(0.734404).epsilon(1e-6));
}

TEST_CASE("index on grouped data") {
  const auto r = run({"index", "--data", kSalaries, "--column", "salary", "--group-by", "rank"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  CHECK(l[0] == "group,n,zero_count,kind,scheme,method,value");
  CHECK(r.out.find("All,397,0,qZI,HF,closed_form,0.345661") != std::string::npos);
  CHECK(r.out.find("All,397,0,qDI,HF,closed_form,0.318546") != std::string::npos);
  CHECK(r.out.find("AsstProf,67,0,qZI,HF,closed_form,0.158008") != std::string::npos);

  const auto q = run({"index", "--data", kSalaries, "--column", "salary", "--method", "quadrature"});
  REQUIRE(q.code == 0);
  CHECK(q.out.find("All,397,0,qZI,HF,quadrature,0.345661") != std::string::npos);

  const auto j = run({"index", "--data", kSalaries, "--column", "salary", "--group-by", "rank",
                      "--scheme", "E", "--scheme", "WG", "--format", "json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["groups"].size() == 4);
  CHECK(doc["groups"].back()["name"] == "All");
  CHECK(doc["groups"][0]["estimates"].size() == 4);
}

TEST_CASE("constant column gives zero") {
  const auto dir = temp_dir("constant");
  write_file(dir / "c.csv", "x\n5\n5\n5\n5\n");
  const auto r = run({"index", "--data", (dir / "c.csv").string(), "--column", "x"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("All,4,0,qZI,HF,closed_form,0\n") != std::string::npos);
  CHECK(r.out.find("All,4,0,qDI,HF,closed_form,0\n") != std::string::npos);
}

TEST_CASE("curve tabulation") {
  const auto one = run({"curve", "--dist", "dagum:a=2,b=1", "--grid", "1"});
  REQUIRE(one.code == 0);
  CHECK(lines(one.out) == std::vector<std::string>{"p,value", "0.5,0.666667"});

  // The midpoint mean of a fine grid recovers the index.
  const auto fine = run({"curve", "--data", kSalaries, "--column", "salary", "--kind", "qD",
                         "--grid", "9999", "--full-precision"});
  REQUIRE(fine.code == 0);
  const auto l = lines(fine.out);
  REQUIRE(l.size() == 10000);
  double sum = 0.0;
  for (std::size_t i = 1; i < l.size(); ++i) sum += std::stod(l[i].substr(l[i].find(',') + 1));
  CHECK(std::abs(sum / 9999 - 0.318546) < 1e-5);

  const auto j = run({"curve", "--dist", "pareto:alpha=3", "--kind", "qZ", "--grid", "4", "--format", "json"});
  REQUIRE(j.code == 0);
  const auto pairs = nlohmann::json::parse(j.out);
  REQUIRE(pairs.size() == 4);
  CHECK(pairs[0][0].get<double>() == 0.125);
  CHECK(pairs[3][1].get<double>() > pairs[0][1].get<double>());
}

TEST_CASE("variance") {
  const auto r = run({"variance", "--dist", "dagum:a=2,b=1"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  CHECK(l[0] == "kind,dist,value");
  CHECK(l[1] == "sigma2_Z,\"dagum:sigma=1,a=2,b=1\",0.0888966");

  const auto d = run({"variance", "--a-sweep", "1:2:0.5", "--kind", "D", "--threads", "1"});
  REQUIRE(d.code == 0);
  CHECK(lines(d.out).size() == 4);
  CHECK(d.out.find("sigma2_D,\"dagum:sigma=1,a=2,b=1\",0.0781879") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"index", "--bogus"}).code == 2);
  CHECK(run({"exact", "--dist", "dagum:a=-1,b=1"}).code == 2);
  CHECK(run({"exact", "--dist", "weibull:k=1"}).code == 2);
  CHECK(run({"exact", "--dist", "pareto:alpha=0.5", "--kind", "GI"}).code == 2);
  CHECK(run({"index", "--data", "/nonexistent.csv", "--column", "x"}).code == 2);
  CHECK(run({"exact", "--dist", "dagum:a=2,b=1", "--format", "xml"}).code == 2);

  const auto dir = temp_dir("codes");
  write_file(dir / "neg.csv", "x\n1\n-2\n3\n");
  const auto neg = run({"index", "--data", (dir / "neg.csv").string(), "--column", "x"});
  CHECK(neg.code == 2);
  CHECK(neg.err.find("neg.csv:3") != std::string::npos);

  // Dagum quantiles underflow for very small shapes.
  const auto nf = run({"variance", "--dist", "dagum:a=0.05,b=0.05"});
  CHECK(nf.code == 3);
  CHECK(nf.err.find("underflows") != std::string::npos);
}

TEST_CASE("simulate") {
  const auto dir = temp_dir("simulate");
  write_file(dir / "small.ini",
             "replications = 20\nsample_sizes = 20, 40\nmise_grid = 32\nkeep_raw = true\n"
             "[b1_a2]\ndist = dagum:sigma=1,a=2,b=1\n[b1_a4]\ndist = dagum:sigma=1,a=4,b=1\n");
  const std::string cfg = (dir / "small.ini").string();

  const auto no_seed = run({"simulate", "--config", cfg});
  CHECK(no_seed.code == 2);
  CHECK(no_seed.err.find("seed") != std::string::npos);

  const auto a = run({"simulate", "--config", cfg, "--seed", "5"});
  const auto b = run({"simulate", "--config", cfg, "--seed", "5", "--serial"});
  const auto c = run({"simulate", "--config", cfg, "--seed", "6"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(lines(a.out)[0] == "n,row,qZ:E,qZ:H,qZ:WG,qZ:HF,qD:E,qD:H,qD:WG,qD:HF");

  const auto j = run({"simulate", "--config", cfg, "--seed", "5", "--experiment", "b1_a4",
                      "--replications", "5", "--format", "json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["name"] == "b1_a4");
  CHECK(doc[0]["replications"] == 5);
  CHECK(doc[0]["cells"].size() == 16);

  const fs::path out = dir / "out";
  const auto w = run({"simulate", "--config", cfg, "--seed", "5", "--out", out.string()});
  REQUIRE(w.code == 0);
  for (const char* f : {"summary.json", "b1_a2.cells.csv", "b1_a2.raw.csv", "b1_a4.cells.csv",
                        "mise_n20.csv", "mise_n20.txt", "mise_n40.csv", "mise_n40.txt"})
    CHECK(fs::exists(out / f));
  std::ifstream raw(out / "b1_a2.raw.csv");
  std::string header;
  std::getline(raw, header);
  CHECK(header == "n,replicate,kind,scheme,value");
  std::size_t rows = 0;
  for (std::string l; std::getline(raw, l);) ++rows;
  CHECK(rows == 2 * 20 * 2 * 4);

  CHECK(run({"simulate", "--config", cfg, "--seed", "5", "--experiment", "missing"}).code == 2);
}

TEST_CASE("reruns are byte-identical") {
  const std::vector<std::string> args = {"index", "--data", kSalaries, "--column", "salary",
                                         "--group-by", "rank", "--scheme", "E,H,WG,HF",
                                         "--full-precision", "--format", "json"};
  CHECK(run(args).out == run(args).out);
}
