#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "golden.hpp"
#include "hkr/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = hkr::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string td(const std::string& name) { return golden::path(name); }

// Runs the installed binary and returns stdout.
std::string run_binary(const std::string& args, int& code) {
  std::string cmd = std::string(HKR_CLI) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
  int status = pclose(f);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

}  // namespace

TEST_CASE("trace-elements lists four rays with verdicts") {
  Result r = run({"trace-elements", "--p", "5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("rays 4\n", 0) == 0);
  for (const char* name : {"[P_0]", "[1]", "[Lambda]", "z_RT"}) CHECK(r.out.find(std::string("\n") + name + " ") != std::string::npos);
  size_t n_tz = 0, pos = 0;
  while ((pos = r.out.find("T_Z yes", pos)) != std::string::npos) ++n_tz, ++pos;
  CHECK(n_tz == 4);
  CHECK(r.out.find("T3 yes X_z 1 C+ 1 C- 1") != std::string::npos);
}

TEST_CASE("invariant of the unknot matches the golden value") {
  auto g = golden::load("golden/lambda_zrt.txt");
  for (int p : {5, 7}) {
    Result r = run({"invariant", "--p", std::to_string(p), "--z", "zrt", "--diagram", td("unknot0.kbl")});
    CHECK(r.code == 0);
    CHECK(r.out == g.at(p).at(0) + "\n");
  }
  Result lam = run({"invariant", "--p", "5", "--z", "lambda", "--diagram", td("s1xd3.kbl"), "--rational-only"});
  CHECK(lam.code == 0);
  CHECK(lam.out == "1\n");
}

TEST_CASE("rational-only rejects irrational results") {
  Result r = run({"invariant", "--p", "5", "--z", "zrt", "--diagram", td("unknot0.kbl"), "--rational-only"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("not rational") != std::string::npos);
}

TEST_CASE("hom-count") {
  Result r = run({"hom-count", "--group", td("z2.cayley"), "--pres", td("xsq.pres")});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");
  Result s = run({"hom-count", "--group", td("s3.cayley"), "--pres", td("commutator.pres")});
  CHECK(s.code == 0);
  CHECK(s.out == "18\n");
}

TEST_CASE("table-hrt product checks") {
  Result r = run({"table-hrt", "--p", "5", "--nmax", "3"});
  CHECK(r.code == 0);
  size_t ok = 0, pos = 0;
  while ((pos = r.out.find("product check ok", pos)) != std::string::npos) ++ok, ++pos;
  CHECK(ok == 4);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("moves-check") {
  Result r = run({"moves-check", "--p", "5", "--diagram", td("hopf.kbl"), "--random", "3", "--seed", "1", "--z", "lambda"});
  CHECK(r.code == 0);
  CHECK(r.out.find("all moves preserve the invariant") != std::string::npos);
}

TEST_CASE("errors exit with code 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({"center", "--p", "4"}).code == 1);
  CHECK(run({"center", "--p", "9"}).code == 1);
  CHECK(run({"invariant", "--p", "5", "--nope"}).code == 1);
  CHECK(run({"invariant", "--p", "5", "--z", "zrt", "--diagram", td("no_such_file.kbl")}).code == 1);
  CHECK(run({"invariant", "--p", "5", "--z", "nonsense", "--diagram", td("unknot0.kbl")}).code == 1);
  CHECK(run({"invariant", "--p", "5", "--z", "one", "--diagram", td("unknot0.kbl"), "--boundary"}).code == 0);
}

TEST_CASE("binary output is byte-identical across runs and job counts") {
  for (const std::string& args :
       {std::string("table-hrt --p 5 --nmax 2"), std::string("invariant --p 5 --z p0 --diagram ") + td("trefoil.kbl"),
        std::string("trace-elements --p 5")}) {
    CAPTURE(args);
    int c1 = -1, c2 = -1, c3 = -1;
    std::string a = run_binary(args + " --jobs 1", c1);
    std::string b = run_binary(args + " --jobs 3", c2);
    std::string c = run_binary(args + " --jobs 3", c3);
    CHECK(c1 == 0);
    CHECK(c2 == 0);
    CHECK(c3 == 0);
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(b == c);
  }
  int code = -1;
  run_binary("center --p 4", code);
  CHECK(code == 1);
}
