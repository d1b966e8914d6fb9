#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code;
  std::string out;
};

// Runs the installed binary with stderr folded into stdout.
RunResult run(const std::string& args) {
  const char* bin = std::getenv("FROBREW_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), out};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// Fixture files shared by the cases below, written once per process.
struct Files {
  fs::path dir;
  std::string unary_sig, unary_rules, gf_rules, dup_rules, two_sig, graph, cospan,
      broken_sig;

  Files() {
    dir = fs::temp_directory_path() / "frobrew_cli_fixtures";
    fs::create_directories(dir);
    unary_sig = put("unary.sig",
                    "colour x\n"
                    "op f : x -> x\n"
                    "op g : x -> x\n"
                    "op h : x -> x\n");
    unary_rules = put("unary.rules",
                      "rule gf : g => f\n"
                      "rule gh : g => h\n");
    gf_rules = put("gf.rules", "rule gf : g => f\n");
    dup_rules = put("dup.rules",
                    "rule dup : f => f ; f\n"
                    "rule fg : f => g\n");
    two_sig = put("two.sig",
                  "colour c\n"
                  "colour d\n"
                  "op o1 : c -> c d\n"
                  "op o2 : d d -> c\n");
    graph = put("g.hg",
                "node n0 : c\n"
                "node n1 : d\n"
                "edge e0 : o1 (n0) -> (n0 n1)\n");
    cospan = put("f.csp",
                 "node n0 : c\n"
                 "left: n0\n"
                 "right: n0 n0\n");
    broken_sig = put("broken.sig", "colour\n");
  }

  std::string put(const std::string& name, const std::string& text) {
    fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

const Files& files() {
  static Files f;
  return f;
}

}  // namespace

TEST_CASE("check types a term") {
  const auto& f = files();
  auto ok = run("check -s " + f.two_sig + " 'o2 ; o1'");
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "dd -> cd"));

  auto unit = run("check -s " + f.two_sig + " 'empty'");
  CHECK(unit.code == 0);
  CHECK(contains(unit.out, "\xce\xb5 -> \xce\xb5"));

  auto bad = run("check -s " + f.two_sig + " 'o1 ; o1'");
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "error"));
}

TEST_CASE("translate prints the cospan") {
  const auto& f = files();
  auto text = run("translate -s " + f.two_sig + " 'o1'");
  CHECK(text.code == 0);
  CHECK(contains(text.out, "left:"));
  CHECK(contains(text.out, "right:"));
  CHECK(contains(text.out, "edge e0"));

  auto dot = run("translate -s " + f.two_sig + " --format dot 'o1'");
  CHECK(dot.code == 0);
  CHECK(contains(dot.out, "digraph"));
}

TEST_CASE("equal decides the equational theory") {
  const auto& f = files();
  auto same = run("equal -s " + f.two_sig + " 'comult[c] ; mult[c]' 'id[c]'");
  CHECK(same.code == 0);
  CHECK(contains(same.out, "EQUAL"));
  CHECK(contains(same.out, "witness:"));

  auto differ = run("equal -s " + f.two_sig + " 'id[c] + id[c]' 'sym[c, c]'");
  CHECK(differ.code == 2);
  CHECK(contains(differ.out, "DIFFERENT"));
}

TEST_CASE("rewrite performs single steps by default") {
  const auto& f = files();
  auto step = run("rewrite -s " + f.unary_sig + " -r " + f.unary_rules + " 'g'");
  CHECK(step.code == 0);
  CHECK(contains(step.out, "2 result(s)"));
  CHECK(contains(step.out, "result 0:"));

  auto none = run("rewrite -s " + f.unary_sig + " -r " + f.unary_rules + " 'f'");
  CHECK(none.code == 0);
  CHECK(contains(none.out, "0 result(s)"));
}

TEST_CASE("rewrite --normalize needs a termination story") {
  const auto& f = files();
  auto bare =
      run("rewrite -s " + f.unary_sig + " -r " + f.unary_rules + " --normalize 'g'");
  CHECK(bare.code == 1);

  auto closed = run("rewrite -s " + f.unary_sig + " -r " + f.unary_rules +
                    " --normalize --assert-terminating 'g'");
  CHECK(closed.code == 0);
  CHECK(contains(closed.out, "2 normal form(s)"));

  auto cut = run("rewrite -s " + f.unary_sig + " -r " + f.dup_rules +
                 " --normalize --bound 1 'f'");
  CHECK(cut.code == 3);
  CHECK(contains(cut.out, "bound exhausted"));
}

TEST_CASE("cps counts critical pairs") {
  const auto& f = files();
  auto overlapping = run("cps -s " + f.unary_sig + " -r " + f.unary_rules);
  CHECK(overlapping.code == 0);
  CHECK(contains(overlapping.out, "52 critical pair(s)"));
  CHECK(contains(overlapping.out, "pair 0: gf / gf"));
  CHECK(contains(overlapping.out, "overlap:"));
  CHECK_FALSE(contains(overlapping.out, "(disjoint)"));

  auto all = run("cps -s " + f.unary_sig + " -r " + f.unary_rules + " --keep-disjoint");
  CHECK(all.code == 0);
  CHECK(contains(all.out, "68 critical pair(s)"));
  CHECK(contains(all.out, "(disjoint)"));
}

TEST_CASE("confluence verdicts and exit codes") {
  const auto& f = files();
  auto bad = run("confluence -s " + f.unary_sig + " -r " + f.unary_rules +
                 " --assert-terminating");
  CHECK(bad.code == 2);
  CHECK(contains(bad.out, "NOT_CONFLUENT"));
  CHECK(contains(bad.out, "failing pair: gf / gh"));

  auto good =
      run("confluence -s " + f.unary_sig + " -r " + f.gf_rules + " --assert-terminating");
  CHECK(good.code == 0);
  CHECK(contains(good.out, "CONFLUENT"));

  auto open = run("confluence -s " + f.unary_sig + " -r " + f.dup_rules + " --bound 2");
  CHECK(open.code == 3);
  CHECK(contains(open.out, "INCONCLUSIVE"));

  auto bare = run("confluence -s " + f.unary_sig + " -r " + f.gf_rules);
  CHECK(bare.code == 1);

  auto traced = run("confluence -s " + f.unary_sig + " -r " + f.gf_rules +
                    " --assert-terminating --trace");
  CHECK(traced.code == 0);
  CHECK(contains(traced.out, "pair 0: gf / gf joinable"));
}

TEST_CASE("confluence writes certificate files") {
  const auto& f = files();
  fs::path certs = f.dir / "certs";
  fs::remove_all(certs);
  auto res = run("confluence -s " + f.unary_sig + " -r " + f.gf_rules +
                 " --assert-terminating --certificates " + certs.string());
  CHECK(res.code == 0);
  REQUIRE(fs::exists(certs / "pair0.txt"));
  std::ifstream in(certs / "pair0.txt");
  std::string body((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(contains(body, "overlap:"));
  CHECK(contains(body, "meet:"));
}

TEST_CASE("render emits DOT from terms, graphs and cospans") {
  const auto& f = files();
  auto term = run("render -s " + f.two_sig + " 'o1 ; (id[c] + counit[d])'");
  CHECK(term.code == 0);
  CHECK(contains(term.out, "digraph"));

  auto graph = run("render -s " + f.two_sig + " --graph " + f.graph);
  CHECK(graph.code == 0);
  CHECK(contains(graph.out, "digraph"));

  auto cospan = run("render -s " + f.two_sig + " --cospan " + f.cospan);
  CHECK(cospan.code == 0);
  CHECK(contains(cospan.out, "digraph"));

  auto nothing = run("render -s " + f.two_sig);
  CHECK(nothing.code == 1);
}

TEST_CASE("usage and parse failures exit with 1") {
  const auto& f = files();
  CHECK(run("translate 'o1'").code == 1);
  CHECK(run("check -s " + f.broken_sig + " 'id[c]'").code == 1);
  auto unknown = run("check -s " + f.two_sig + " 'nope'");
  CHECK(unknown.code == 1);
  CHECK(contains(unknown.out, "error"));
}
