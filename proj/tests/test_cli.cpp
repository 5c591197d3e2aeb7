#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "artin/cli.hpp"

using namespace artin;
using cli::run_capture;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/artin_cli_test_") + name;
}

void write(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("validate") {
  std::string good = temp_path("good.json");
  write(good, R"({"generators":["s","t","u"],"edges":[{"a":"s","b":"t","m":3},{"a":"t","b":"u","m":3}]})");
  auto r = run_capture({"validate", good});
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["two_dimensional"]["two_dimensional"] == true);
  CHECK(j["hyperbolic_type"]["hyperbolic"] == true);
  CHECK(j["spherical_parabolics"]["type1"] == 3);

  std::string bad = temp_path("bad.json");
  write(bad, R"({"generators":["s","t"],"edges":[{"a":"s","b":"t","m":1}]})");
  CHECK(run_capture({"validate", bad}).exit_code == 2);

  std::string spherical = temp_path("spherical.json");
  write(spherical,
        R"({"generators":["a","b","c"],"edges":[{"a":"a","b":"b","m":2},{"a":"b","b":"c","m":3},{"a":"a","b":"c","m":5}]})");
  CHECK(run_capture({"validate", spherical}).exit_code == 1);
}

TEST_CASE("nf, eq, classify") {
  auto nf = run_capture({"nf", "--m", "3", "s t s^-1"});
  CHECK(nf.exit_code == 0);
  auto j = nlohmann::json::parse(nf.out);
  CHECK(j["atoms"] == nlohmann::json::array({"st", "ts"}));
  CHECK(j["delta"] == -1);

  auto ab = run_capture({"nf", "--m", "2", "s t s"});
  CHECK(nlohmann::json::parse(ab.out)["p"] == 2);

  auto eq = run_capture({"eq", "--m", "3", "s t s", "t s t"});
  CHECK(eq.exit_code == 0);
  CHECK(nlohmann::json::parse(eq.out)["equal"] == true);
  auto neq = run_capture({"eq", "--m", "3", "s t", "t s"});
  CHECK(nlohmann::json::parse(neq.out)["equal"] == false);

  auto cls = run_capture({"classify", "--m", "3", "t s^2 t^-1"});
  auto cj = nlohmann::json::parse(cls.out);
  CHECK(cj["class"] == "tree-elliptic");
  CHECK(cj["power"] == 2);
  auto vcls = run_capture({"classify", "--m", "3", "s t"});
  CHECK(nlohmann::json::parse(vcls.out)["class"] == "vertex-elliptic");
  CHECK(run_capture({"classify", "--m", "3", "s s^-1"}).exit_code == 2);
}

TEST_CASE("link exports") {
  std::string dot = temp_path("link.dot");
  auto r = run_capture({"link", "--m", "3", "--radius", "1/2 pi", "--window", "2",
                        "--dot", dot});
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["center"]["m"] == 3);
  for (const auto& e : j["edges"]) {
    CHECK(e["len"]["num"] == 1);
    CHECK(e["len"]["den"] == 6);
  }
  std::ifstream in(dot);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("len=\"1/6 pi\"") != std::string::npos);

  auto q = run_capture({"link", "--m", "3", "--quotient", "--depth", "2"});
  CHECK(q.exit_code == 0);
  CHECK(nlohmann::json::parse(q.out)["m"] == 3);

  // Type-1 center.
  std::string g = temp_path("path.json");
  write(g, R"({"generators":["a","b","c"],"edges":[{"a":"a","b":"b","m":2},{"a":"b","b":"c","m":2}]})");
  auto t1 = run_capture({"link", "--graph", g, "--generator", "b", "--radius", "pi"});
  CHECK(t1.exit_code == 0);
  auto tj = nlohmann::json::parse(t1.out);
  CHECK(tj["center"]["generator"] == "b");
}

TEST_CASE("quasitree and augmented") {
  auto qt = run_capture({"quasitree", "--m", "3", "--depth", "2"});
  CHECK(qt.exit_code == 0);
  auto j = nlohmann::json::parse(qt.out);
  CHECK(j["vertices"].size() == 13);
  CHECK(j["structure"]["ok"] == true);

  auto aug = run_capture({"augmented", "--m", "3", "--depth", "2", "--quotient"});
  CHECK(aug.exit_code == 0);
  CHECK(nlohmann::json::parse(aug.out)["quotiented"] == true);
}

TEST_CASE("certify and check") {
  std::string g = temp_path("certgraph.json");
  write(g, R"({"generators":["a","b","c"],"edges":[{"a":"a","b":"b","m":2},{"a":"b","b":"c","m":2}]})");
  std::string a = temp_path("a.json");
  write(a, R"({"kind":"tree-elliptic","conjugator":"","generator":"a","power":1})");
  std::string b = temp_path("b.json");
  write(b, R"({"kind":"tree-elliptic","conjugator":"","generator":"c","power":1})");
  std::string out = temp_path("cert.json");

  auto r = run_capture({"certify", "--graph", g, "--a", a, "--b", b, "--out", out});
  REQUIRE(r.exit_code == 0);
  auto rj = nlohmann::json::parse(r.out);
  CHECK(rj["mode"] == "exact");
  CHECK(rj["n"] == 1);

  auto chk = run_capture({"check", out});
  CHECK(chk.exit_code == 0);
  CHECK(nlohmann::json::parse(chk.out)["ok"] == true);

  // Tamper with a recorded distance: the checker must reject.
  auto cert = nlohmann::json::parse(cli::read_file(out));
  cert["endpoints"][0]["k_distances"][0]["distance"]["num"] = 2;
  std::string tampered = temp_path("tampered.json");
  write(tampered, cert.dump(2));
  auto bad = run_capture({"check", tampered});
  CHECK(bad.exit_code == 1);
  CHECK(nlohmann::json::parse(bad.out)["ok"] == false);

  // Determinism: identical invocations produce identical bytes.
  std::string out2 = temp_path("cert2.json");
  auto r2 = run_capture({"certify", "--graph", g, "--a", a, "--b", b, "--out", out2});
  CHECK(r2.exit_code == 0);
  CHECK(cli::read_file(out) == cli::read_file(out2));

  // Adjacent generators are refused.
  std::string badb = temp_path("badb.json");
  write(badb, R"({"kind":"tree-elliptic","conjugator":"","generator":"b","power":1})");
  auto refuse = run_capture({"certify", "--graph", g, "--a", a, "--b", badb, "--out", out2});
  CHECK(refuse.exit_code == 1);
}

TEST_CASE("pingpong and oracle sweep") {
  auto pp = run_capture({"pingpong", "--n", "1", "--depth", "2"});
  CHECK(pp.exit_code == 0);
  CHECK(nlohmann::json::parse(pp.out)["edges"] == 16);

  auto sw = run_capture({"oracle-sweep", "--m", "4", "--len", "4"});
  CHECK(sw.exit_code == 0);
  auto sj = nlohmann::json::parse(sw.out);
  CHECK(sj["disagreements"] == 0);
  CHECK(sj["words"] == 1 + 4 + 16 + 64 + 256);
}

TEST_CASE("usage errors and help") {
  CHECK(run_capture({"nope"}).exit_code == 2);
  CHECK(run_capture({"nf", "--m", "3"}).exit_code == 2);
  CHECK(run_capture({"validate", "/nonexistent/file.json"}).exit_code == 2);

  auto help = run_capture({"eq", "--help-json"});
  CHECK(help.exit_code == 0);
  auto j = nlohmann::json::parse(help.out);
  CHECK(j["name"] == "eq");
  bool has_m = false;
  for (const auto& opt : j["options"])
    if (opt["name"] == "--m") has_m = true;
  CHECK(has_m);
}
