#include "commands.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace stabpair::cli;

namespace {

struct Outcome {
  int status;
  std::string out, err;
  Json doc() const { return Json::parse(out); }
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "stabpair");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

const std::string kLine =
    R"({"schema":"v1","shape":{"kind":"vector","rows":1,"cols":2},"degree":1,"terms":[{"exp":[1,0],"re":"1"}]})";
const std::string kSquare =
    R"({"schema":"v1","shape":{"kind":"vector","rows":1,"cols":2},"degree":2,"terms":[{"exp":[2,0],"re":"1"}]})";
const std::string kZ0Squared =
    R"({"schema":"v1","shape":{"kind":"vector","rows":1,"cols":3},"degree":2,"terms":[{"exp":[2,0,0],"re":"1"}]})";

std::string pair_of(const std::string& v, const std::string& w) {
  auto j = Json{{"schema", "v1"}, {"norm", "l2"}, {"v", Json::parse(v)}, {"w", Json::parse(w)}};
  return j.dump();
}

}  // namespace

TEST_CASE("every module operation is reachable from exactly one command") {
  std::multiset<std::string> reached;
  std::set<std::string> names;
  for (const auto& c : command_table()) {
    names.insert(c.name);
    for (const auto& op : c.operations) reached.insert(op);
  }
  CHECK(names.size() == command_table().size());
  CHECK(command_table().size() == 18);
  std::size_t total = 0;
  for (const auto& [module, ops] : module_operations())
    for (const auto& op : ops) {
      ++total;
      CHECK_MESSAGE(reached.count(op) == 1, module << "." << op);
    }
  CHECK(reached.size() == total);
}

TEST_CASE("(x, x^2) fails the torus test with witness (1, -1)") {
  auto r = call({"pair-check", "--pair", pair_of(kLine, kSquare)});
  REQUIRE(r.status == 0);
  auto d = r.doc();
  CHECK(d["result"]["verdict"] == "torus-fail");
  CHECK(d["result"]["witness"] == Json::array({1, -1}));
}

TEST_CASE("(x^2, x^2) passes the torus test") {
  auto r = call({"pair-check", "--pair", pair_of(kSquare, kSquare), "--k", "3"});
  REQUIRE(r.status == 0);
  CHECK(r.doc()["result"]["verdict"] == "torus-pass");
}

TEST_CASE("Mahler norm of z0^2 on P^2") {
  // E log|z0|^2 on the unit sphere of C^3 is psi(1) - psi(3) = -(1 + 1/2).
  auto r = call({"mahler", kZ0Squared, "--mode", "float"});
  REQUIRE(r.status == 0);
  auto e = r.doc()["result"]["estimate"];
  const double value = e["log_value"].get<double>(), se = e["stderr"].get<double>();
  CHECK(std::abs(value + 1.5) < 5 * se);
  CHECK(e["samples"] == 200000);
}

TEST_CASE("same seed gives byte-identical output") {
  const std::vector<std::string> args = {"mahler", kZ0Squared, "--mode", "float", "--samples", "20000", "--seed", "7"};
  auto a = call(args), b = call(args);
  CHECK(a.out == b.out);
  auto c = call({"mahler", kZ0Squared, "--mode", "float", "--samples", "20000", "--seed", "8"});
  CHECK(a.out != c.out);
}

TEST_CASE("weight of z0^2 against (2,-1,-1)") {
  auto r = call({"weight", kZ0Squared, "--lambda", "2,-1,-1"});
  REQUIRE(r.status == 0);
  CHECK(r.doc()["result"]["weight"] == 4);
}

TEST_CASE("exit codes") {
  SUBCASE("schema errors exit 2") {
    auto r = call({"weight", R"({"schema":"v2"})", "--lambda", "1,-1"});
    CHECK(r.status == 2);
    CHECK(r.doc()["error"]["kind"] == "schema");
    CHECK(!r.err.empty());
    CHECK(call({"weight", kZ0Squared}).status == 2);
    CHECK(call({"no-such-command"}).status == 2);
    CHECK(call({"mahler", kZ0Squared, "--p", "abc"}).status == 2);
  }
  SUBCASE("precondition and dimension errors exit 3") {
    CHECK(call({"weight", kZ0Squared, "--lambda", "1,1,1"}).status == 3);
    CHECK(call({"weight", kZ0Squared, "--lambda", "1,-1"}).status == 3);
    CHECK(call({"verify", "nonexistent"}).status == 3);
  }
}

TEST_CASE("text output is aligned key/value lines") {
  auto r = call({"pair-check", "--pair", pair_of(kLine, kSquare), "--text"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("result.verdict") != std::string::npos);
  CHECK(r.out.find("torus-fail") != std::string::npos);
  CHECK(r.out.find('{') == std::string::npos);
}

TEST_CASE("discriminant reports its normalization") {
  auto r = call({"hurwitz", "--poly",
                 R"({"schema":"v1","shape":{"kind":"vector","rows":1,"cols":2},"degree":2,)"
                 R"("terms":[{"exp":[2,0],"re":"1"},{"exp":[0,2],"re":"-1"}]})"});
  REQUIRE(r.status == 0);
  auto d = r.doc()["result"];
  // Res(2s, -2t) / 1 = -4 = -(b1^2 - 4 b0 b2).
  CHECK(d["discriminant"]["re"] == "-4");
  CHECK(d["divisor"] == "1");
}
