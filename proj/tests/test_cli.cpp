#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(GROUPFAIR_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  auto dir = fs::temp_directory_path() / "groupfair_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  auto p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string corpus_file(const std::string& name) {
  return (fs::path(GROUPFAIR_CORPUS_DIR) / (name + ".json")).string();
}

const char* kTwoOne = R"({"m":4,"agents":[
  {"id":0,"kind":"additive","values":[3,1,1,1]},
  {"id":1,"kind":"additive","values":[1,3,1,1]},
  {"id":2,"kind":"additive","values":[3,3,1,1]}],
  "groups":{"fixed":[[0,1],[2]]}})";

}  // namespace

TEST_CASE("search on the (6,1) corpus file certifies exhaustion with exit 2") {
  auto r = run("search --instance " + corpus_file("ef1-6-1"));
  CHECK(r.code == 2);
  auto doc = Json::parse(r.out);
  CHECK(doc["result"]["outcome"] == "exhausted");
  CHECK(doc["result"]["examined"] == 16);
}

TEST_CASE("search flags override and find") {
  auto inst = write("two_one.json", kTwoOne);
  auto r = run("search --instance " + inst + " --notion ef1 --balanced-goods --jobs 2");
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["result"]["outcome"] == "found");
  auto efx = run("search --instance " + inst + " --notion efx");
  CHECK(efx.code == 2);
  auto serial = run("search --serial --instance " + inst + " --notion efx0");
  CHECK(serial.code == 2);
}

TEST_CASE("corpus --run-all passes") {
  auto r = run("--format table corpus --run-all");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("ef1-6-1") != std::string::npos);
  auto j = run("corpus --run-all");
  CHECK(Json::parse(j.out)["all_pass"] == true);
}

TEST_CASE("check: a group holding every good is EF1 for its agents") {
  auto inst = write("two_one.json", kTwoOne);
  auto alloc = write("all_first.json", R"({"bundles":[[0,1,2,3],[]]})");
  auto r = run("check --instance " + inst + " --allocation " + alloc);
  CHECK(r.code == 0);
  auto doc = Json::parse(r.out);
  CHECK(doc["result"]["fairness"]["agents"][0]["fair"] == true);
  CHECK(doc["result"]["fairness"]["agents"][1]["fair"] == true);
  CHECK(doc["result"]["fairness"]["agents"][2]["fair"] == false);
}

TEST_CASE("solve emits verified allocations") {
  auto inst = write("two_one.json", kTwoOne);
  auto r = run("solve --instance " + inst + " --algo ef1-21");
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["result"]["fairness"]["overall"] == true);
  auto variable = write("six.json", R"({"m":3,"agents":[
    {"kind":"additive","values":[3,1,1]},{"kind":"additive","values":[3,1,1]},
    {"kind":"additive","values":[1,3,1]},{"kind":"additive","values":[1,3,1]},
    {"kind":"additive","values":[1,1,3]},{"kind":"additive","values":[1,1,3]}],
    "groups":{"variable":[3,3]}})");
  for (const char* algo : {"knife", "cutchoose", "prop", "roundrobin"}) {
    CAPTURE(algo);
    auto s = run("solve --instance " + variable + " --algo " + algo);
    CHECK(s.code == 0);
    CHECK(Json::parse(s.out)["result"].contains("bundles"));
  }
  auto e1 = write("pair.json", R"({"m":4,"agents":[{"kind":"additive","values":[4,3,2,1]},
    {"kind":"additive","values":[4,3,2,1]}],"groups":{"fixed":[[0],[1]]}})");
  auto s = run("solve --instance " + e1 + " --algo exact1");
  CHECK(s.code == 0);
  CHECK(Json::parse(s.out)["result"]["bundles"] == Json::parse("[[0,2],[1,3]]"));
}

TEST_CASE("solve --algo binary") {
  auto r = run("solve --algo binary --trace --instance " + corpus_file("balanced-ef1-5-1"));
  CHECK(r.code == 0);
  auto doc = Json::parse(r.out);
  CHECK(doc.contains("trace"));
  CHECK(doc["result"]["fairness"]["overall"] == true);
  auto none = run("solve --algo binary --instance " + corpus_file("ef1-4-2"));
  CHECK(none.code == 2);
}

TEST_CASE("kneser subcommand") {
  auto r = run("kneser --b 4 --r 2 --s 2 --chi exact");
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["chromatic"]["upper"] == 6);
  auto out = (scratch() / "tight.json").string();
  auto dimacs = (scratch() / "k422.col").string();
  auto t = run("kneser --b 4 --r 2 --s 2 --tightness --split 6,0 --out " + out + " --dimacs " + dimacs);
  CHECK(t.code == 0);
  CHECK(Json::parse(t.out)["tightness"]["balanced_ef1_exists"] == false);
  CHECK(fs::exists(out));
  CHECK(fs::exists(dimacs));
  auto back = run("search --balanced-goods --instance " + out);
  CHECK(back.code == 2);
  CHECK(run("kneser --b 9 --r 4 --s 2 --chi exact").code == 1);
  CHECK(run("kneser --b 9 --r 4 --s 2 --chi bounds").code == 0);
}

TEST_CASE("reduce subcommand") {
  auto cnf = write("f.cnf", "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n");
  auto out = (scratch() / "f.json").string();
  CHECK(run("reduce --formula " + cnf + " --out " + out).code == 0);
  CHECK(run("search --instance " + out).code == 0);
  auto bad = write("bad.cnf", "p cnf 3 1\n1 -2 3 0\n");
  CHECK(run("reduce --formula " + bad).code == 1);
}

TEST_CASE("fuzz subcommand") {
  auto r = run("fuzz --suite exact1 --count 200 --seed 9");
  CHECK(r.code == 0);
  auto doc = Json::parse(r.out);
  CHECK(doc["suites"][0]["seed"] == 9);
  CHECK(doc["suites"][0]["passed"] == 200);
  CHECK(run("fuzz --suite nope").code == 1);
}

TEST_CASE("usage and data errors exit 1") {
  CHECK(run("").code == 1);
  CHECK(run("search").code == 1);
  CHECK(run("search --instance /nonexistent.json").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("search --bogus-flag --instance " + corpus_file("ef1-6-1")).code == 1);
  auto broken = write("broken.json", "{ not json");
  CHECK(run("search --instance " + broken).code == 1);
  auto invalid = write("invalid.json", R"({"m":1,"agents":[{"kind":"binary","values":[2]}],"groups":{"fixed":[[0]]}})");
  CHECK(run("search --instance " + invalid).code == 1);
  auto big = write("big.json", R"({"m":27,"agents":[],"groups":{"fixed":[[],[]]}})");
  CHECK(run("search --instance " + big).code == 1);
  CHECK(run("--format xml corpus --run-all").code == 1);
}
