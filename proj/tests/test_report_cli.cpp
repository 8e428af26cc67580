#include <sstream>

#include "doctest.h"
#include "geofreq/cli.hpp"
#include "geofreq/report.hpp"

using namespace geofreq;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("empty report serializes to the fixed envelope") {
  Report r;
  CHECK(to_json(r) == "{\"rows\":[],\"metadata\":{}}\n");
}

TEST_CASE("json keys are sorted and numbers use 12 significant digits") {
  Report r;
  r.rows.push_back({{"b", 1.0 / 3.0}, {"a", std::int64_t{2}}, {"c", std::string("x\"y")}, {"d", true}});
  r.metadata["z"] = std::monostate{};
  CHECK(to_json(r) == "{\"rows\":[{\"a\":2,\"b\":0.333333333333,\"c\":\"x\\\"y\",\"d\":true}],\"metadata\":{\"z\":null}}\n");
  CHECK(to_json(r) == to_json(r));
}

TEST_CASE("csv has a header and LF-terminated rows") {
  Report r;
  r.rows.push_back({{"value", 2.5}, {"name", std::string("a,b")}});
  CHECK(to_csv(r) == "name,value\n\"a,b\",2.5\n");
}

TEST_CASE("resonance command") {
  const Run r = run({"resonance", "--n", "3", "--L", "6.2831853", "--max-degree", "100"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"alpha_bar\":0.636619773095") != std::string::npos);
  CHECK(r.out.find("\"max_deviation\":3") != std::string::npos);
  CHECK(r.out.find("wall_time") == std::string::npos);
  CHECK(run({"resonance", "--n", "3", "--L", "6.2831853", "--max-degree", "100"}).out == r.out);
  CHECK(run({"--timing", "resonance", "--n", "3"}).out.find("wall_time_s") != std::string::npos);
}

TEST_CASE("frequency command on an ellipsoid") {
  const Run r = run({"frequency", "--model", R"({"kind":"ellipsoid","axes":[1,1.2,1.5]})", "--ellipse", "0,1",
                     "--periods", "50", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("alpha_bar,", 0) == 0);
  CHECK(r.out.find(",true,") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"frequency", "--model", "{\"kind\":\"banana\"}"}).code == kExitInvalid);
  CHECK(run({"frequency", "--model", "/nonexistent/model.json"}).code == kExitInvalid);
  CHECK(run({"resonance", "--n", "3", "--unknown-flag"}).code == kExitInvalid);
  CHECK(run({"nonsense"}).code == kExitInvalid);
  CHECK(run({"ring", "--n", "3", "--x", "W"}).code == kExitInvalid);
  CHECK(run({"verify", "sturm", "--trials", "20", "--seed", "7"}).code == kExitPass);
  // A negative tolerance makes the monotonicity arm fail on an elliptic base.
  CHECK(run({"perturb", "--K", "1", "--grid", "0,0.1", "--tolerance", "-1"}).code == kExitVerdictFailure);
  // Curvature this large drives the step size below the underflow guard.
  CHECK(run({"perturb", "--K", "1e30", "--grid", "0,0.1"}).code == kExitNumerical);
}

TEST_CASE("ring command") {
  const Run r = run({"ring", "--n", "3", "--op", "bracket", "--x", "A", "--y", "U^3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"result\":\"-3*U^2\"") != std::string::npos);
  const Run d = run({"ring", "--n", "4", "--coefficients", "Z", "--x", "W*Theta^2"});
  CHECK(d.out.find("(2*k + 1)*Theta^2") != std::string::npos);
}

TEST_CASE("monomial parsing") {
  const RingSpec r = RingSpec::sphere(4, CoefficientSpec::integers());
  CHECK(parse_monomial(r, "W*Theta^3") == Monomial{0, 1, 3});
  CHECK(parse_monomial(r, "E") == Monomial{0, 0, 0});
  CHECK_THROWS(parse_monomial(r, "U"));
  CHECK_THROWS(parse_monomial(r, "A*W"));
  CHECK(parse_coefficients("7").p == 7);
  CHECK_THROWS(parse_coefficients("8"));
}
