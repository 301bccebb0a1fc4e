#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "srn/cli.hpp"

using nlohmann::json;

namespace {

std::string net(const std::string& name) { return std::string(SRN_NETWORK_DIR) + "/" + name; }

struct Run {
  int code;
  json report;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = srn::run_cli(args, out, err);
  json report;
  if (!out.str().empty()) report = json::parse(out.str());
  return {code, report};
}

std::int64_t line_index(const json& line, const std::vector<std::int64_t>& x) {
  const auto base = line["base"].get<std::vector<std::int64_t>>();
  const auto step = line["step"].get<std::vector<std::int64_t>>();
  for (std::size_t j = 0; j < step.size(); ++j)
    if (step[j] != 0) return (x[j] - base[j]) / step[j];
  return 0;
}

bool in_interval(const json& interval, std::int64_t k) {
  return k >= interval["from_index"].get<std::int64_t>() && k < interval["to_index"].get<std::int64_t>();
}

// Label the analyzer assigns to index k of the line.
std::string predicted(const json& g, std::int64_t k) {
  if (in_interval(g["N"], k)) return "neutral";
  if (in_interval(g["T"], k)) return "trapping";
  if (in_interval(g["E"], k)) return "escaping";
  for (const auto& p : g["progressions"]) {
    const auto first = p["first_index"].get<std::int64_t>();
    const auto stride = p["stride"].get<std::int64_t>();
    if (k >= first && (k - first) % stride == 0) return p["label"].get<std::string>();
  }
  return "none";
}

}  // namespace

TEST_CASE("envelope fields and exit codes") {
  auto r = run({"parse", net("ecoli.srn")});
  CHECK(r.code == 0);
  CHECK(r.report["schema_version"] == "1");
  CHECK(r.report["tool"]["name"] == "srn");
  CHECK(r.report["status"] == "ok");
  CHECK(r.report["network"]["species"].size() == 5);
  CHECK(r.report["command"]["argv"][0] == "parse");

  r = run({"parse", net("no_such_file.srn")});
  CHECK(r.code == 2);
  CHECK(r.report["status"] == "input-error");
  CHECK(r.report.contains("error"));

  r = run({"bogus"});
  CHECK(r.code == 2);
  CHECK(r.report.is_null());
}

TEST_CASE("syntax errors report a span") {
  const auto path = std::filesystem::temp_directory_path() / "srn_cli_bad.srn";
  {
    std::ofstream f(path);
    f << "S -> 2 S @ 1\nS -> -> S\n";
  }
  const auto r = run({"parse", path.string()});
  CHECK(r.code == 2);
  CHECK(r.report["error"]["kind"] == "syntax");
  CHECK(r.report["error"]["detail"]["line"] == 2);
  CHECK(r.report["error"]["detail"]["column"] == 6);
  std::filesystem::remove(path);
}

TEST_CASE("parse keeps parameter names and reports the bound form") {
  auto r = run({"parse", net("three_cycle.srn")});
  CHECK(r.code == 0);
  CHECK(r.report["payload"]["canonical"] == "S -> 2 S @ k1\n2 S -> 3 S @ k2\n3 S -> S @ k3\n");
  CHECK(r.report["network"].is_null());
  r = run({"parse", net("three_cycle.srn"), "--kappa", "k1=1/2", "--kappa", "k2=1", "--kappa", "k3=2"});
  CHECK(r.code == 0);
  CHECK(r.report["payload"]["bound"] == "S -> 2 S @ 1/2\n2 S -> 3 S @ 1\n3 S -> S @ 2\n");
  CHECK(r.report["network"]["reactions"][0]["rate"] == "1/2");
}

TEST_CASE("kappa bindings are validated") {
  CHECK(run({"analyze1d", net("cubic_modified.srn"), "--kappa", "k=0"}).code == 2);
  CHECK(run({"analyze1d", net("cubic_modified.srn"), "--kappa", "k=abc"}).code == 2);
  CHECK(run({"analyze1d", net("cubic_modified.srn")}).code == 2);
  const auto r = run({"analyze1d", net("cubic_modified.srn"), "--kappa", "k=2", "--kappa", "q=1"});
  CHECK(r.code == 0);
  CHECK(r.report["warnings"].size() == 1);
}

TEST_CASE("analyze1d reports exact parameters and verdicts") {
  auto r = run({"analyze1d", net("explosive_a.srn")});
  REQUIRE(r.code == 0);
  const auto& a = r.report["payload"];
  CHECK(a["params"]["R"] == 4);
  CHECK(a["params"]["alpha"] == "0");
  CHECK(a["params"]["beta"] == "1");
  CHECK(a["verdict"]["explosive"]["value"] == "yes");
  CHECK(a["verdict"]["explosive"]["clause"] == "R>2 & alpha=0 & beta>0");

  r = run({"analyze1d", net("cubic_modified.srn"), "--kappa", "k=1/2"});
  REQUIRE(r.code == 0);
  CHECK(r.report["payload"]["params"]["beta"] == "1/2");
  CHECK(r.report["payload"]["verdict"]["explosive"]["value"] == "yes");

  r = run({"analyze1d", net("null_candidate.srn")});
  CHECK(r.code == 1);
  CHECK(r.report["status"] == "verdict-limited");
  CHECK(r.report["payload"]["verdict"]["recurrence"]["value"] == "recurrent-positivity-undetermined");

  r = run({"analyze1d", net("ecoli.srn")});
  CHECK(r.code == 2);
  CHECK(r.report["error"]["kind"] == "hypothesis");

  r = run({"analyze1d", net("conservative.srn"), "--c", "6,0"});
  CHECK(r.code == 2);
  CHECK(r.report["error"]["kind"] == "hypothesis");
  CHECK_FALSE(r.report["payload"]["profile"]["h4"].get<bool>());
  CHECK_FALSE(r.report["payload"].contains("verdict"));

  r = run({"analyze1d", net("inflow.srn")});
  CHECK(r.code == 1);
  CHECK(r.report["payload"]["geometry"].is_null());
}

TEST_CASE("two-species threshold through the command line") {
  for (int k = 0; k <= 8; ++k) {
    const auto r = run({"analyze1d", net("two_species.srn"), "--kappa", "k1=1", "--kappa", "k2=1", "--c",
                        "0," + std::to_string(k)});
    REQUIRE(r.code == 0);
    CHECK(r.report["payload"]["params"]["beta"] == std::to_string(4 * (k - 3)));
    CHECK(r.report["payload"]["verdict"]["explosive"]["value"] == (k > 3 ? "yes" : "no"));
  }
}

TEST_CASE("classify and core payloads") {
  auto r = run({"classify", net("inflow.srn"), "--window", "9"});
  REQUIRE(r.code == 0);
  CHECK(r.report["payload"]["trap_set_empty"] == true);
  CHECK(r.report["payload"]["window_counts"]["states"] == 10);
  CHECK(r.report["payload"]["window_counts"]["N"] == 0);
  CHECK(r.report["payload"]["window_counts"]["T"] == 0);

  r = run({"core", net("two_cores.srn")});
  REQUIRE(r.code == 0);
  CHECK(r.report["payload"]["cores"].size() == 2);
  CHECK(r.report["payload"]["union_is_core"] == "yes");

  r = run({"core", net("ecoli.srn")});
  REQUIRE(r.code == 0);
  CHECK(r.report["payload"]["cores"].size() == 1);
  CHECK(r.report["payload"]["cores"][0]["reactions"] == json::array({0, 1, 2, 3, 5}));
}

TEST_CASE("simulate is reproducible by seed") {
  const std::vector<std::string> args = {"simulate", "traj", net("immigration_death.srn"), "--kappa", "l=3",
                                         "--kappa", "m=1", "--time", "20", "--seed", "77"};
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.report["payload"]["outcome"] == b.report["payload"]["outcome"]);
  CHECK(a.report["payload"]["outcome"]["kind"] == "censored");
}

TEST_CASE("oracle on the empty network labels every state neutral") {
  const auto path = std::filesystem::temp_directory_path() / "srn_cli_empty.srn";
  {
    std::ofstream f(path);
    f << "species: A, B\n";
  }
  const auto r = run({"oracle", path.string(), "--window", "3"});
  CHECK(r.code == 0);
  CHECK(r.report["payload"]["label_counts"] == json({{"neutral", 16}}));
  std::filesystem::remove(path);
}

TEST_CASE("analyze1d and oracle agree on every labeled state of the corpus") {
  constexpr std::int64_t kWindow = 40;
  struct Case {
    std::string file;
    std::vector<std::string> kappa;
    std::vector<std::string> cs;
  };
  const std::vector<Case> corpus = {
      {"explosive_a.srn", {}, {"0"}},
      {"explosive_b.srn", {}, {"0"}},
      {"cubic_original.srn", {}, {"0"}},
      {"cubic_modified.srn", {"k=2"}, {"0"}},
      {"cubic_modified.srn", {"k=1/2"}, {"0"}},
      {"bd_original.srn", {}, {"0"}},
      {"bd_modified.srn", {"k=1"}, {"0"}},
      {"immigration_death.srn", {"l=2", "m=1"}, {"0"}},
      {"null_candidate.srn", {}, {"0"}},
      {"subcritical.srn", {"p=1/2"}, {"0"}},
      {"three_cycle.srn", {"k1=1", "k2=1", "k3=1"}, {"0"}},
      {"two_species.srn", {"k1=1", "k2=1"}, {"0,0", "0,3", "0,5", "1,0", "2,7", "0,8"}},
  };
  int compared = 0;
  for (const auto& c : corpus) {
    for (const auto& rep : c.cs) {
      std::vector<std::string> args = {"analyze1d", net(c.file), "--c", rep};
      std::vector<std::string> oargs = {"oracle", net(c.file), "--c", rep, "--window", std::to_string(kWindow)};
      for (const auto& k : c.kappa) {
        for (auto* v : {&args, &oargs}) {
          v->push_back("--kappa");
          v->push_back(k);
        }
      }
      const auto a = run(args);
      const auto o = run(oargs);
      CAPTURE(c.file);
      CAPTURE(rep);
      REQUIRE(a.code <= 1);
      REQUIRE(o.code <= 1);
      const auto& g = a.report["payload"]["geometry"];
      REQUIRE(g.is_object());
      for (const auto& s : o.report["payload"]["restricted"]["states"]) {
        const auto x = s["state"].get<std::vector<std::int64_t>>();
        const auto k = line_index(g["line"], x);
        CAPTURE(k);
        const auto label = s["label"].get<std::string>();
        if (label != "boundary-uncertain") CHECK(predicted(g, k) == label);
        // provisional labels are exact away from the window's upper faces
        if (std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v <= kWindow / 2; })) {
          CHECK(predicted(g, k) == s["provisional"].get<std::string>());
          ++compared;
        }
      }
    }
  }
  CHECK(compared > 150);
}
