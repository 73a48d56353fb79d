#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "vermasig/cli.hpp"

using nlohmann::json;
using vermasig::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

json call_json(std::vector<std::string> args) {
  args.push_back("--json");
  const auto r = call(args);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("decompose") {
  const auto doc = call_json({"decompose", "--weights", "-1/2,-1/2", "--max-level", "3"});
  std::vector<int> sgn;
  for (const auto &row : doc["rows"]) sgn.push_back(row["sgn"].get<int>());
  CHECK(sgn == std::vector<int>{1, -1, 1, -1});
  CHECK(doc["config"]["weights"] == json::array({"-1/2", "-1/2"}));
  CHECK(doc["version"] == vermasig::cli::version());

  const auto two = call_json({"decompose", "--weights", "5/2,-7/10", "--max-level", "5"});
  for (const auto &row : two["rows"]) CHECK(std::abs(row["sgn"].get<int>()) == 1);

  CHECK(call({"decompose", "--weights", "1/x"}).code == 2);
  CHECK(call({"decompose", "--weights", "1/2,3/2"}).code == 2);  // total 2 is not generic
  CHECK(call({"decompose"}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
}

TEST_CASE("classify") {
  const auto doc = call_json({"classify", "--type", "1,0,0,-1"});
  CHECK(doc["rows"] == json::parse(R"([{"level":0,"sign":"+"},{"level":2,"sign":"-"}])"));

  const auto r = call({"classify", "--type", "4,1,1,1,1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("{0:+,1:+,2:+,4:+}") != std::string::npos);

  const auto v = call_json({"classify", "--type", "4,1,1,1,1", "--verify"});
  CHECK(v["verification"]["agrees"] == true);
  const auto w = call_json({"classify", "--weights", "23/10,17/10,-2/5", "--verify"});
  CHECK(w["config"]["type"] == "<3,2,1,-1>");
  CHECK(w["verification"]["agrees"] == true);

  CHECK(call({"classify", "--type", "9,0,0"}).code == 2);
  CHECK(call({"classify"}).code == 2);
}

TEST_CASE("quantum") {
  const auto doc = call_json({"quantum", "--a", "2,2", "--t", "1/23", "--all-levels"});
  CHECK(doc["rows"].size() == 3);
  for (const auto &row : doc["rows"]) CHECK(row["dim"] == 1);

  CHECK(call({"quantum", "--a", "3/2,1", "--t", "1/23", "--m", "1"}).code == 2);
  CHECK(call({"quantum", "--a", "7,7", "--t", "1/7", "--m", "3"}).code == 2);

  const auto q1 = call_json({"quantum", "--q1", "--weights", "23/10,17/10,-2/5", "--max-level", "8"});
  CHECK(q1["all_match"] == true);
  const auto dec = call_json({"decompose", "--weights", "23/10,17/10,-2/5", "--max-level", "8"});
  for (std::size_t m = 0; m <= 8; ++m) CHECK(q1["rows"][m]["sgn"] == dec["rows"][m]["sgn"]);
}

TEST_CASE("bethe") {
  const auto two = call_json({"bethe", "--weights", "1/3,-5/7", "--z", "0,1", "--m", "2"});
  CHECK(two["rows"][0]["N_spectrum"] == 1);

  const auto neg = call_json({"bethe", "--weights", "-1/2,-3/2,-1/3", "--z", "0,1,3", "--m", "2"});
  CHECK(neg["rows"][0]["N_spectrum"] == 3);
  CHECK(neg["rows"][0]["tight"] == true);

  const auto sweep = call({"bethe", "--weights", "23/10,17/10,-2/5", "--z", "0,1,3", "--sweep", "m=1..3", "--csv"});
  CHECK(sweep.code == 0);
  CHECK(sweep.out.rfind("m,dim,sgn,abs_sgn,N_spectrum,N_roots,found,bound,tight\n", 0) == 0);
  CHECK(std::count(sweep.out.begin(), sweep.out.end(), '\n') == 4);

  CHECK(call({"bethe", "--weights", "1/3,-5/7", "--z", "0,0", "--m", "1"}).code == 2);
  CHECK(call({"bethe", "--weights", "1/3,-5/7", "--z", "0,1", "--sweep", "3..1"}).code == 2);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  const std::vector<std::string> args{"bethe", "--weights", "5/3,-7/4,9/5", "--z", "0,1,3", "--sweep", "1..3",
                                      "--seed", "42", "--json"};
  const auto a = call(args), b = call(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto with_threads = args;
  with_threads.insert(with_threads.end(), {"--threads", "3"});
  CHECK(call(with_threads).out == a.out);
}

TEST_CASE("help and version") {
  CHECK(call({"--version"}).code == 0);
  CHECK(call({"--help"}).code == 0);
}
