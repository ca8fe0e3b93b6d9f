#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "heiskern/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "heiskern");
  std::ostringstream out, err;
  const int code = heiskern::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> record(const std::string& line) {
  std::map<std::string, std::string> kv;
  std::istringstream in(line);
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return kv;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), {}};
}

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / ("heiskern_test_" + name); }

}  // namespace

TEST_CASE("eval folland closed") {
  const auto r = cli({"eval", "folland", "--n", "1", "--z", "1:0", "--tau", "0", "--method", "closed"});
  CHECK(r.code == 0);
  const auto kv = record(r.out);
  CHECK(std::stod(kv.at("value")) == doctest::Approx(0.6366197724).epsilon(1e-10));
  CHECK(kv.at("method") == "closed");
  CHECK(kv.count("error_estimate") == 1);
  CHECK(kv.count("evaluations") == 1);
}

TEST_CASE("eval folland integral and z = 0 fallback") {
  const auto r = cli({"eval", "folland", "--n", "2", "--z", "1:0;0:0", "--tau", "1", "--method", "integral"});
  CHECK(r.code == 0);
  CHECK(std::stod(record(r.out).at("value")) == doctest::Approx(0.0645030688).epsilon(1e-9));

  const auto f = cli({"eval", "folland", "--n", "1", "--z", "0:0", "--tau", "2", "--method", "integral"});
  CHECK(f.code == 0);
  CHECK(std::stod(record(f.out).at("value")) == doctest::Approx(0.3183098862).epsilon(1e-10));
  CHECK(f.out.find("note=\"closed-form fallback (z=0)\"") != std::string::npos);

  const auto g = cli({"eval", "folland", "--n", "1", "--z", "1:0", "--tau", "0", "--method", "green"});
  CHECK(g.code == 0);
  CHECK(std::stod(record(g.out).at("value")) == doctest::Approx(0.5641895835).epsilon(1e-9));
}

TEST_CASE("printed numbers round-trip") {
  const auto r = cli({"eval", "folland", "--n", "3", "--z", "0.3:0.1;0:0;0.2:-0.4", "--tau", "0.7", "--method",
                      "closed"});
  const std::string v = record(r.out).at("value");
  const double parsed = std::stod(v);
  const auto again = cli({"eval", "folland", "--n", "3", "--z", "0.3:0.1;0:0;0.2:-0.4", "--tau", "0.7", "--method",
                          "closed"});
  CHECK(record(again.out).at("value") == v);
  CHECK(std::stod(record(again.out).at("value")) == parsed);
}

TEST_CASE("eval resolvent") {
  const auto r = cli({"eval", "resolvent", "--n", "1", "--zeta", "-1:0", "--z", "1:0", "--tau", "0"});
  CHECK(r.code == 0);
  const auto kv = record(r.out);
  CHECK(std::stod(kv.at("value_re")) == doctest::Approx(-0.117807091871325394).epsilon(1e-10));
  CHECK(std::stod(kv.at("value_im")) == 0.0);

  const auto sym1 = cli({"eval", "resolvent", "--n", "1", "--zeta", "-0.5:0", "--z", "1:0", "--tau", "0.5", "--w",
                         "0:1", "--s", "-0.2"});
  const auto sym2 = cli({"eval", "resolvent", "--n", "1", "--zeta", "-0.5:0", "--z", "0:1", "--tau", "-0.2", "--w",
                         "1:0", "--s", "0.5"});
  CHECK(std::stod(record(sym1.out).at("value_re")) ==
        doctest::Approx(std::stod(record(sym2.out).at("value_re"))).epsilon(1e-9));
}

TEST_CASE("usage errors exit 2 with one line") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"bogus"},
           {"eval", "folland", "--n", "1", "--tau", "0"},
           {"eval", "folland", "--n", "2", "--z", "1:0", "--tau", "0"},
           {"eval", "folland", "--n", "1", "--z", "x:0", "--tau", "0"},
           {"eval", "folland", "--n", "1", "--z", "1:0", "--tau", "0", "--method", "magic"},
           {"eval", "resolvent", "--n", "1", "--zeta", "1:0", "--z", "1:0", "--tau", "0"},
           {"verify", "--suite", "nope"},
           {"sweep", "--n", "1,x", "--zmag", "1", "--tau", "0", "--out", "/dev/null"},
           {"sweep", "--n", "1", "--zmag", "-1", "--tau", "0", "--out", "/dev/null"},
       }) {
    const auto r = cli(args);
    CAPTURE(r.err);
    CHECK(r.code == 2);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }
}

TEST_CASE("evaluation failures exit 1") {
  const auto r = cli({"eval", "folland", "--n", "1", "--z", "0.01:0", "--tau", "2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("resolution budget") != std::string::npos);
  const auto c = cli({"eval", "folland", "--n", "1", "--z", "0:0", "--tau", "0", "--method", "closed"});
  CHECK(c.code == 1);
}

TEST_CASE("help exits 0") {
  const auto r = cli({"eval", "folland", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("--method") != std::string::npos);
}

TEST_CASE("verify chain: exit 0 and byte-identical CSV per seed") {
  const auto a = temp_path("chain_a.csv"), b = temp_path("chain_b.csv"), t = temp_path("chain.txt");
  const auto r1 = cli({"verify", "--suite", "chain", "--seed", "42", "--out", a.string(), "--text", t.string()});
  const auto r2 = cli({"verify", "--suite", "chain", "--seed", "42", "--out", b.string()});
  CHECK(r1.code == 0);
  CHECK(r2.code == 0);
  CHECK(r1.out.find("result=PASS") != std::string::npos);
  const std::string csv = slurp(a);
  CHECK(csv == slurp(b));
  CHECK(csv.rfind("identity_id,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,tolerance,pass\n", 0) ==
        0);
  CHECK(slurp(t).find("identity_id: laplace_cosine") != std::string::npos);
  fs::remove(a);
  fs::remove(b);
  fs::remove(t);
}

TEST_CASE("sweep writes the grid in input order") {
  const auto p = temp_path("sweep.csv"), q = temp_path("sweep2.csv");
  const auto r =
      cli({"sweep", "--n", "2,1", "--zmag", "1,0.5", "--tau", "0,1", "--out", p.string(), "--no-timing"});
  CHECK(r.code == 0);
  cli({"sweep", "--n", "2,1", "--zmag", "1,0.5", "--tau", "0,1", "--out", q.string(), "--no-timing"});
  const std::string csv = slurp(p);
  CHECK(csv == slurp(q));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,zmag,tau,closed,integral,abs_err,rel_err,evaluations,seconds");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].rfind("2,1,0,", 0) == 0);
  CHECK(rows[1].rfind("2,1,1,", 0) == 0);
  CHECK(rows[7].rfind("1,0.5,1,", 0) == 0);
  for (const auto& row : rows) {
    std::vector<std::string> cols;
    std::istringstream cs(row);
    std::string c;
    while (std::getline(cs, c, ',')) cols.push_back(c);
    REQUIRE(cols.size() == 9);
    CHECK(std::stod(cols[6]) < 1e-6);
    CHECK(cols[8] == "0");
  }
  fs::remove(p);
  fs::remove(q);
}

TEST_CASE("log level from the environment") {
  ::setenv("HEISKERN_LOG", "quiet", 1);
  const auto p = temp_path("quiet.csv");
  auto r = cli({"sweep", "--n", "1", "--zmag", "1", "--tau", "0", "--out", p.string()});
  CHECK(r.err.empty());
  ::setenv("HEISKERN_LOG", "info", 1);
  r = cli({"sweep", "--n", "1", "--zmag", "1", "--tau", "0", "--out", p.string()});
  CHECK(r.err.find("[info]") != std::string::npos);
  ::setenv("HEISKERN_LOG", "loud", 1);
  r = cli({"sweep", "--n", "1", "--zmag", "1", "--tau", "0", "--out", p.string()});
  CHECK(r.err.find("warning") != std::string::npos);
  ::unsetenv("HEISKERN_LOG");
  fs::remove(p);
}
