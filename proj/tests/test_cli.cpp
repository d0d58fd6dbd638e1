#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "common.hpp"
#include "json.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
};

Run sqa(const std::string& args) {
  std::string cmd = std::string(SQA_BINARY) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf{};
  while (auto n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fx(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".sqa"; }

nlohmann::json json_of(const std::string& args) {
  auto r = sqa(args + " --json");
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("cli classify and stable rank") {
  auto c = json_of("classify " + fx("fig2_right"));
  CHECK(c["domestic"] == false);
  CHECK(c["meta_torsion_free"] == true);
  CHECK(json_of("stable-rank " + fx("fig2_mid"))["value"] == "omega_plus_one");
}

TEST_CASE("cli exit codes") {
  CHECK(sqa("validate " + fx("lambda2")).code == 0);
  CHECK(sqa("stable-rank " + fx("lambda2")).code == 2);
  CHECK(sqa("strings " + fx("lambda2") + " --max-len x").code == 1);
  CHECK(sqa("hammock " + fx("lambda2") + " succ 'c b'").code == 1);
  CHECK(sqa("validate /nonexistent.sqa").code == 1);
}

TEST_CASE("cli bands and quiver") {
  auto b = json_of("bands " + fx("lambda2"));
  CHECK(b["count"] == 4);
  auto p = json_of("prime-bands " + fx("gp23") + " --check \"a b' b' a b'\"");
  CHECK(p["band"] == true);
  CHECK(p["prime"] == false);
  auto dot = sqa("bridge-quiver " + fx("gp23") + " --extended --weak --dot");
  CHECK(dot.out.find("style=dashed") != std::string::npos);
}

TEST_CASE("cli operators and generation") {
  auto e = json_of("expand " + fx("lambda2") + " a --op l");
  CHECK(e["iterates"][0] == "e c a b' a");
  auto g = json_of("generate-path " + fx("lambda2") + " \"e c a b'\"");
  CHECK(g["round_trip"] == true);
  auto r = json_of("rank " + fx("gp23") + " recursive \"b'\"");
  CHECK(r["witness"]["mu"] == "lbar_1 lbar");
  CHECK(r["witness"]["T"] == "l l_1 l");
}

TEST_CASE("cli output is deterministic") {
  auto a = sqa("bridge-quiver " + fx("fig2_left") + " --extended --json");
  auto b = sqa("bridge-quiver " + fx("fig2_left") + " --extended --json");
  CHECK(a.out == b.out);
}
