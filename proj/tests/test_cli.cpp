#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string command = env + " " + DECISIVE_CLI + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) r.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string model(const std::string& name) { return std::string(DECISIVE_MODELS) + "/" + name; }

// Enough of the DOT grammar for our output: one digraph, balanced
// brackets and quotes, every statement line terminated by a semicolon.
bool plausible_dot(const std::string& dot) {
  if (dot.rfind("digraph ", 0) != 0) return false;
  int braces = 0;
  int brackets = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < dot.size(); ++i) {
    const char c = dot[i];
    if (c == '"' && (i == 0 || dot[i - 1] != '\\')) quoted = !quoted;
    if (quoted) continue;
    if (c == '{') ++braces;
    if (c == '}') --braces;
    if (c == '[') ++brackets;
    if (c == ']') --brackets;
    if (braces < 0 || brackets < 0) return false;
  }
  if (quoted || braces != 0 || brackets != 0) return false;
  std::size_t start = 0;
  while (start < dot.size()) {
    const auto end = dot.find('\n', start);
    const std::string line = dot.substr(start, end - start);
    start = end == std::string::npos ? dot.size() : end + 1;
    if (line.empty() || line.back() == '{' || line == "}") continue;
    if (line.back() != ';') return false;
  }
  return true;
}

}  // namespace

TEST_CASE("every subcommand emits JSON that re-parses") {
  const std::string coin = " --model " + model("coin.json");
  const std::vector<std::string> commands{
      "product" + coin + " --dma " + model("gf_b.json"),
      "avoid-set" + coin + " --target t",
      "attractor-graph" + coin + " --dma " + model("gf_b.json"),
      "check-qualitative" + coin + " --target t",
      "approx-reach --model " + model("three_state.json") + " --target s0 --exact",
      "approx-until" + coin + " --allowed s,u --target t --exact",
      "approx-repeated" + coin + " --target v --exact",
      "approx-omega" + coin + " --dma " + model("gf_b.json") + " --exact",
      "check-abstraction --model " + model("walk.json") + " --abstract " + model("three_state.json") +
          " --map walk-to-Tf --depth 20",
      "witness-unsound --model " + model("walk.json") + " --p 2/3 --abstract " + model("three_state.json") +
          " --map walk-to-Tf --mc --samples 5000 --tail walk --depth 20",
      "sta-thick-graph --model " + model("pacman.json"),
      "sta-check --model " + model("reactive.json") + " --dma " + model("gf_done.json"),
      "sta-approx --model " + model("one_clock.json") + " --dma " + model("gf_served.json") +
          " --mc --samples 2000 --eps 0.1",
      "sta-time-bounded --model " + model("exp_jump.json") + " --locations l1 --window 0,1 --mc --samples 2000 --eps 0.1",
  };
  for (const auto& c : commands) {
    CAPTURE(c);
    const Run r = run(c + " --out json");
    CHECK(r.exit_code == 0);
    CHECK(nlohmann::json::accept(r.out));
  }
}

TEST_CASE("gambler's ruin from the command line") {
  const Run r = run("approx-reach --model " + model("walk.json") +
                    " --p 1/3 --init 1:1 --target 0 --attractor 0 --eps 1e-3 --out json");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(std::stod(doc["interval"][0].get<std::string>()) >= 0.999);
  CHECK(doc["interval"][1] == "1");
  CHECK(doc["status"] == "converged");
}

TEST_CASE("a stalled scheme exits with 3 and reports the residual gap") {
  const Run r = run("approx-reach --model " + model("walk.json") + " --p 2/3 --target 0 --eps 1e-3 --out json");
  CHECK(r.exit_code == 3);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(std::stod(doc["interval"][0].get<std::string>()) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(doc["tainted"] == true);
}

TEST_CASE("refusals exit with 2 and quote the violated hypothesis") {
  const Run r = run("sta-check --model " + model("pacman.json") + " --dma " + model("gf_b.json"));
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("thick graph unsound: STA class General") != std::string::npos);
}

TEST_CASE("input errors exit with 1") {
  CHECK(run("approx-reach --model " + model("missing.json") + " --target 0").exit_code == 1);
  const std::string bad = "/tmp/decisive_cli_bad.json";
  std::ofstream(bad) << "{\n  \"states\": [\"a\",\n  ]\n}\n";
  const Run r = run("avoid-set --model " + bad + " --target a");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("decisive_cli_bad.json:3:") != std::string::npos);
  CHECK(run("frobnicate").exit_code != 0);
}

TEST_CASE("DOT output is well formed") {
  for (const auto& m : {"pacman.json", "reactive.json", "one_clock.json"}) {
    const Run r = run(std::string("sta-thick-graph --model ") + model(m) + " --out dot");
    CHECK(r.exit_code == 0);
    CHECK(plausible_dot(r.out));
  }
  const Run g = run("attractor-graph --model " + model("coin.json") + " --dma " + model("gf_b.json") + " --out dot");
  CHECK(plausible_dot(g.out));
}

TEST_CASE("same seed, same bytes") {
  const std::string c = "sta-time-bounded --model " + model("exp_jump.json") +
                        " --locations l1 --window 0,1 --mc --samples 4000 --eps 0.1 --out json";
  const Run a = run(c + " --seed 17");
  const Run b = run(c + " --seed 17");
  CHECK(a.out == b.out);
  CHECK(run(c, "DECISIVE_SEED=17").out == a.out);
  CHECK(run(c + " --seed 18").out != a.out);
  const Run t1 = run(c + " --seed 17 --threads 2");
  CHECK(t1.out == run(c + " --seed 17 --threads 2").out);
  CHECK(run(c + " --seed 17", "DECISIVE_THREADS=2").out == t1.out);
}

TEST_CASE("reports can be written to a file") {
  const std::string path = "/tmp/decisive_cli_report.json";
  std::remove(path.c_str());
  const Run r = run("avoid-set --model " + model("coin.json") + " --target t --out json --output " + path);
  CHECK(r.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  CHECK(nlohmann::json::accept(in));
}
