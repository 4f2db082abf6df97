#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "masterfield/cli.hpp"
#include "masterfield/corpus.hpp"
#include "masterfield/error.hpp"

using namespace mf;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "masterfield");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p.string();
}

}  // namespace

TEST_CASE("eval") {
  auto r = run({"eval", "--loop", "NESW", "--k", "1", "--field", "free"});
  CHECK(r.code == 0);
  CHECK(r.out == "loop,k,value,method\nNESW,1,0.606530659712633,exact\n");
  r = run({"eval", "--loop", "NESW", "--k", "2", "--field", "free", "--t-scale", "1.0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("NESW,2,") != std::string::npos);
  r = run({"eval", "--constant", "--k", "4"});
  CHECK(r.out == "loop,k,value,method\n,4,1,exact\n");
  r = run({"eval", "--loop", "ENWSSWNE", "--tie-break", "wsen"});
  CHECK(r.out == "loop,k,value,method\nENWSSWNE,1,0.367879441171442,exact\n");
}

TEST_CASE("eval errors") {
  auto r = run({"eval", "--loop", ""});
  CHECK(r.code == 1);
  CHECK(r.err.find("not a loop: empty word allowed only as explicit constant") != std::string::npos);
  r = run({"eval", "--loop", "ENW"});
  CHECK(r.code == 1);
  CHECK(r.err.find("not a loop") != std::string::npos);
  r = run({"eval", "--loop", "ENWS", "--n", "2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("use mc") != std::string::npos);
  r = run({"eval", "--loop", "ENWS", "--k", "x"});
  CHECK(r.code == 2);
  r = run({"frobnicate"});
  CHECK(r.code == 2);
  r = run({"eval", "--loop", "ENWS", "--field", "cartesian"});
  CHECK(r.code == 1);
}

TEST_CASE("moments") {
  const auto r = run({"moments", "--t", "1", "--kmax", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("k,m_k\n1,0.606530659712633\n2,", 0) == 0);
  CHECK(r.out.find("3,-0.111565080074215\n") != std::string::npos);
  CHECK(run({"moments", "--t", "1", "--kmax", "30"}).code == 1);
}

TEST_CASE("check") {
  for (const char* which : {"area", "divisibility", "gauge", "levy"}) {
    const auto r = run({"check", which});
    CAPTURE(which);
    CHECK(r.code == 0);
    CHECK(r.out.rfind("check,case,lhs,rhs,diff,pass\n", 0) == 0);
    CHECK(r.out.find(",false\n") == std::string::npos);
  }
  const auto file = temp_file("mf_braid_corpus.txt", "# two loops\nENWSSWNE\nEENWWS  # rectangle\n");
  auto r = run({"check", "braid", "--corpus", file, "--max-length", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ENWSSWNE") != std::string::npos);
  r = run({"check", "basis", "--corpus", file});
  CHECK(r.code == 0);
  r = run({"check", "unknown"});
  CHECK(r.code == 1);
  r = run({"check", "braid", "--corpus", "/nonexistent/corpus"});
  CHECK(r.code == 1);
  CHECK(r.err.find("cannot open") != std::string::npos);
  std::filesystem::remove(file);
}

TEST_CASE("mc") {
  const auto file = temp_file("mf_mc_loops.txt", "ENWS\nENWSSWNE\n");
  const auto r = run({"mc", "--loops", file, "--N", "8", "--samples", "6", "--k", "1", "--workers", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("word,mean_re,mean_im,stderr\nENWS,", 0) == 0);
  const auto again = run({"mc", "--loops", file, "--N", "8", "--samples", "6", "--k", "1", "--workers", "1"});
  CHECK(again.out == r.out);
  CHECK(run({"mc", "--loops", file, "--N", "1"}).code == 1);
  std::filesystem::remove(file);
}

TEST_CASE("corpus files") {
  std::istringstream in("ENWS, NESW # comment\n\n# only a comment\nEENWWS\n");
  const auto rows = corpus::parse_lines(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].size() == 2);
  CHECK(rows[1][0].str() == "EENWWS");
  std::istringstream bad("ENWS\nENX\n");
  CHECK_THROWS_WITH_AS(corpus::parse_lines(bad), doctest::Contains("line 2"), Error);
  const auto pairs = temp_file("mf_pairs.txt", "ENWS EENWSW\nENWS\n");
  CHECK_THROWS_WITH_AS(corpus::load_pairs(pairs), doctest::Contains("exactly two"), Error);
  std::filesystem::remove(pairs);
  CHECK(corpus::load_loops("default").size() == 10);
  for (const auto& l : corpus::default_loops()) CHECK(l.is_reduced());
}
