#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

using bcast::cli::run;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

// Field `col` of the last line before any "total" row.
std::string field(const std::string& tsv, int line, int col) {
  std::istringstream in(tsv);
  std::string row;
  for (int i = 0; i <= line; ++i) std::getline(in, row);
  std::istringstream cells(row);
  std::string cell;
  for (int i = 0; i <= col; ++i) std::getline(cells, cell, '\t');
  return cell;
}

}  // namespace

TEST_CASE("epsilon parsing") {
  CHECK(bcast::cli::parse_epsilon("1/4").den == 4);
  CHECK(bcast::cli::parse_epsilon("2/8").num == 1);
  CHECK(bcast::cli::parse_epsilon("0.5").den == 2);
  CHECK_THROWS(bcast::cli::parse_epsilon("4/1"));
  CHECK_THROWS(bcast::cli::parse_epsilon("abc"));
}

TEST_CASE("demo-lp-fifo reports n against n/2 + 1") {
  const Run r = call({"demo-lp-fifo", "--n", "12"});
  REQUIRE(r.code == 0);
  CHECK(field(r.out, 1, 1) == "12");
  CHECK(field(r.out, 1, 2) == "7");
  CHECK(call({"demo-lp-fifo", "--n", "7"}).code == 1);
}

TEST_CASE("solve-maxflow on a single request") {
  const std::string path = temp_file("bcast_one.txt", "pages 1\nreq 0 0 0\n");
  const Run r = call({"solve-maxflow", "--instance", path});
  REQUIRE(r.code == 0);
  CHECK(field(r.out, 1, 4) == "1");
  CHECK(field(r.out, 1, 5) == "1");
}

TEST_CASE("solve-throughput and oracle run on generated input") {
  const std::string gen = "n=3,m=5,span=6,throughput=1,wmin=1,wmax=8";
  const Run t = call({"solve-throughput", "--gen", gen, "--seed", "2", "--eps",
                      "1/2", "--H", "4", "--trials", "20"});
  CHECK(t.code == 0);
  CHECK(t.err.find("warning") != std::string::npos);
  const Run o = call({"oracle", "--gen", gen, "--seed", "2", "--objective",
                      "throughput"});
  CHECK(o.code == 0);
  CHECK(o.out.rfind("instance\tobjective", 0) == 0);
}

TEST_CASE("bench is deterministic") {
  const std::vector<std::string> args = {"bench", "--objective", "maxflow",
                                         "--gen", "n=3,m=6,span=8", "--seed",
                                         "7", "--count", "4"};
  const Run a = call(args);
  const Run b = call(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\ntotal\t") != std::string::npos);
}

TEST_CASE("generate round trips through solve") {
  const auto path =
      (std::filesystem::temp_directory_path() / "bcast_gen.txt").string();
  REQUIRE(call({"generate", "--gen", "n=2,m=4,span=5", "--seed", "3", "--out",
                path})
              .code == 0);
  CHECK(call({"solve-maxflow", "--instance", path}).code == 0);
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == 1);
  CHECK(call({"no-such-command"}).code == 1);
  CHECK(call({"solve-maxflow"}).code == 1);
  CHECK(call({"solve-maxflow", "--instance", "/nonexistent/file"}).code == 1);
  const std::string bad = temp_file("bcast_bad.txt", "pages 1\nreq 0 0 5\n");
  CHECK(call({"solve-maxflow", "--instance", bad}).code == 1);
  CHECK(call({"solve-maxflow", "--gen", "n=2,m=3", "--eps", "2/5"}).code == 1);
}
