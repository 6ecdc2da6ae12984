#include <catch2/catch.hpp>

#include <json.hpp>

#include "util.hpp"

namespace {

const std::string cli = MOVEMINE_CLI_PATH;

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

const char* kSmallCsv =
    "player_id,match_id,position,t,velocity,acceleration,turning_angle\n"
    "p1,m1,hooker,0.0,1.0,0.5,5\n"
    "p1,m1,hooker,0.1,1.2,0.3,20\n"
    "p1,m1,hooker,0.2,1.3,0.0,30\n"
    "p1,m1,hooker,0.3,1.1,0.1,2\n"
    "p2,m1,winger,0.0,5.5,1.0,5\n"
    "p2,m1,winger,0.1,5.5,1.0,5\n"
    "p2,m1,winger,0.2,5.5,1.0,20\n"
    "p3,m1,hooker,0.0,1.0,0.5,5\n"
    "p3,m1,hooker,0.1,1.2,0.3,20\n"
    "p3,m1,hooker,0.2,1.3,0.0,30\n"
    "p3,m1,hooker,0.3,1.1,0.1,2\n"
    "p4,m1,winger,0.0,5.5,1.0,5\n"
    "p4,m1,winger,0.1,5.5,1.0,5\n"
    "p4,m1,winger,0.2,5.5,1.0,20\n";

}  // namespace

TEST_CASE("version and help") {
  auto version = testutil::run_command(cli + " --version");
  CHECK(version.exit_code == 0);
  CHECK(version.output.find("movemine 0.1.0") != std::string::npos);

  auto help = testutil::run_command(cli + " --help");
  CHECK(help.exit_code == 0);
  for (const char* sub : {"discretize", "mine", "compare", "featurize",
                          "classify", "synth", "pipeline"})
    CHECK(help.output.find(sub) != std::string::npos);

  auto unknown = testutil::run_command(cli + " mine --bogus-flag 1");
  CHECK(unknown.exit_code != 0);

  auto no_sub = testutil::run_command(cli);
  CHECK(no_sub.exit_code != 0);
}

TEST_CASE("discretize then mine each algorithm") {
  testutil::TempDir dir("cli_mine");
  testutil::write_file(dir / "gps.csv", kSmallCsv);

  auto d = testutil::run_command(cli + " discretize --input " + q(dir / "gps.csv") +
                                 " --output " + q(dir / "obs.jsonl"));
  REQUIRE(d.exit_code == 0);
  auto jsonl = testutil::read_file(dir / "obs.jsonl");
  CHECK(jsonl.find("\"ijfe\"") != std::string::npos);  // p1's walk bout
  CHECK(jsonl.find("\"SST\"") != std::string::npos);   // p2's sprint bout

  for (const char* algo : {"lccspm", "aprioriclose", "smp-lcs"}) {
    auto m = testutil::run_command(
        cli + " mine --algo " + algo + " --input " + q(dir / "obs.jsonl") +
        " --output " + q(dir / (std::string(algo) + ".csv")) + " --support 0.5");
    REQUIRE(m.exit_code == 0);
    auto csv = testutil::read_file(dir / (std::string(algo) + ".csv"));
    CHECK(csv.rfind("observation_id,kind,pattern,support_count,support_fraction",
                    0) == 0);
    CHECK(csv.find("p1:m1") != std::string::npos);
  }

  auto itemsets = testutil::read_file(dir / "aprioriclose.csv");
  CHECK(itemsets.find("itemset") != std::string::npos);
  CHECK(itemsets.find(",efij,") != std::string::npos);  // distinct symbols of ijfe

  auto bogus = testutil::run_command(cli + " mine --algo bogus --input " +
                                     q(dir / "obs.jsonl") + " --output " +
                                     q(dir / "x.csv"));
  CHECK(bogus.exit_code != 0);
  CHECK(bogus.output.find("unknown algorithm") != std::string::npos);
}

TEST_CASE("discretize honors a custom thresholds file") {
  testutil::TempDir dir("cli_thresholds");
  testutil::write_file(dir / "gps.csv", kSmallCsv);
  // walking band widened to 6 m/s: p2's 5.5 m/s sprint re-bands as a walk
  testutil::write_file(dir / "bands.json",
                       R"({"velocity": [6.0, 7.0, 8.0],
                           "acceleration": [-0.2, 0.2],
                           "turning": [10, 45, 90]})");
  auto d = testutil::run_command(cli + " discretize --input " + q(dir / "gps.csv") +
                                 " --output " + q(dir / "obs.jsonl") +
                                 " --thresholds " + q(dir / "bands.json"));
  REQUIRE(d.exit_code == 0);
  auto jsonl = testutil::read_file(dir / "obs.jsonl");
  CHECK(jsonl.find("\"SST\"") == std::string::npos);
  CHECK(jsonl.find("\"iij\"") != std::string::npos);  // Walk-Accel at 5.5 m/s

  testutil::write_file(dir / "bad.json", R"({"velocity": [3, 2, 1]})");
  auto bad = testutil::run_command(cli + " discretize --input " + q(dir / "gps.csv") +
                                   " --output " + q(dir / "o2.jsonl") +
                                   " --thresholds " + q(dir / "bad.json"));
  CHECK(bad.exit_code != 0);
  CHECK(bad.output.find("ascending") != std::string::npos);
}

TEST_CASE("compare, featurize and classify round trip") {
  testutil::TempDir dir("cli_pipeline_steps");
  testutil::write_file(dir / "gps.csv", kSmallCsv);
  REQUIRE(testutil::run_command(cli + " discretize --input " + q(dir / "gps.csv") +
                                " --output " + q(dir / "obs.jsonl"))
              .exit_code == 0);
  REQUIRE(testutil::run_command(cli + " mine --algo lccspm --input " +
                                q(dir / "obs.jsonl") + " --output " +
                                q(dir / "a.csv") + " --support 0.5")
              .exit_code == 0);
  REQUIRE(testutil::run_command(cli + " mine --algo smp-lcs --input " +
                                q(dir / "obs.jsonl") + " --output " +
                                q(dir / "b.csv"))
              .exit_code == 0);

  auto c = testutil::run_command(
      cli + " compare --a " + q(dir / "a.csv") + " --b " + q(dir / "b.csv") +
      " --top 50 --output " + q(dir / "cmp.json") + " --sequences " +
      q(dir / "obs.jsonl") + " --plot-csv " + q(dir / "plot.csv"));
  REQUIRE(c.exit_code == 0);
  auto report = nlohmann::json::parse(testutil::read_file(dir / "cmp.json"));
  CHECK(report.contains("jaccard"));
  CHECK(report["jaccard"].get<double>() >= 0.0);
  CHECK(report["overlap"].contains("most"));
  CHECK(report["positions"]["a"].contains("shared"));
  auto plot = testutil::read_file(dir / "plot.csv");
  CHECK(plot.rfind("end,pattern,freq_a,freq_b", 0) == 0);

  auto f = testutil::run_command(cli + " featurize --patterns " + q(dir / "a.csv") +
                                 " --sequences " + q(dir / "obs.jsonl") +
                                 " --output " + q(dir / "matrix.csv"));
  REQUIRE(f.exit_code == 0);
  auto matrix = testutil::read_file(dir / "matrix.csv");
  CHECK(matrix.rfind("observation_id,label,", 0) == 0);

  // rows alternate labels, so two unshuffled folds each train on both classes
  auto cl = testutil::run_command(cli + " classify --matrix " +
                                  q(dir / "matrix.csv") +
                                  " --model gnb --folds 2 --no-shuffle --report " +
                                  q(dir / "report.json"));
  REQUIRE(cl.exit_code == 0);
  auto rj = nlohmann::json::parse(testutil::read_file(dir / "report.json"));
  CHECK(rj["model"] == "gnb");
  CHECK(rj["folds"].size() == 2);
  CHECK(rj["mean"].contains("accuracy"));

  auto bad = testutil::run_command(cli + " classify --matrix " +
                                   q(dir / "matrix.csv") +
                                   " --model rf --folds 2 --importance 5 "
                                   "--report " +
                                   q(dir / "r2.json"));
  CHECK(bad.exit_code != 0);
  CHECK(bad.output.find("logreg") != std::string::npos);
}

TEST_CASE("synth writes identical outputs for identical seeds") {
  testutil::TempDir dir("cli_synth");
  nlohmann::json cfg = {
      {"players_per_position", 2},
      {"matches_per_player", 1},
      {"seed", 9},
      {"sequence_length_range", {12, 24}},
      {"sequences_per_observation_range", {2, 3}},
      {"motifs", {{"hooker", {{{"pattern", "GGSS"}, {"rate_per_100", 4.0}}}}}},
  };
  testutil::write_file(dir / "synth.json", cfg.dump());

  auto run = [&](const std::string& tag) {
    return testutil::run_command(cli + " synth --config " + q(dir / "synth.json") +
                                 " --out-sequences " + q(dir / (tag + ".jsonl")) +
                                 " --out-gps " + q(dir / (tag + ".csv")));
  };
  REQUIRE(run("one").exit_code == 0);
  REQUIRE(run("two").exit_code == 0);
  CHECK(testutil::read_file(dir / "one.jsonl") ==
        testutil::read_file(dir / "two.jsonl"));
  CHECK(testutil::read_file(dir / "one.csv") ==
        testutil::read_file(dir / "two.csv"));

  auto other = testutil::run_command(
      cli + " synth --config " + q(dir / "synth.json") + " --out-sequences " +
      q(dir / "three.jsonl") + " --seed 10");
  REQUIRE(other.exit_code == 0);
  CHECK(testutil::read_file(dir / "three.jsonl") !=
        testutil::read_file(dir / "one.jsonl"));

  // generated gps discretizes back to the generated sequences
  testutil::TempDir dir2("cli_synth_roundtrip");
  auto rt = testutil::run_command(cli + " discretize --input " + q(dir / "one.csv") +
                                  " --output " + q(dir2 / "back.jsonl"));
  REQUIRE(rt.exit_code == 0);
  CHECK(testutil::read_file(dir2 / "back.jsonl") ==
        testutil::read_file(dir / "one.jsonl"));
}

TEST_CASE("pipeline produces the full artifact set deterministically") {
  testutil::TempDir dir("cli_pipeline");
  nlohmann::json cfg = {
      {"seed", 10},
      {"output_dir", "out"},
      {"synth",
       {{"players_per_position", 3},
        {"matches_per_player", 2},
        {"active_symbols", "abefijquv"},
        {"sequence_length_range", {20, 40}},
        {"sequences_per_observation_range", {3, 5}},
        {"motifs",
         {{"hooker", {{{"pattern", "GGGGSS"}, {"rate_per_100", 6.0}}}},
          {"winger", {{{"pattern", "TSST"}, {"rate_per_100", 6.0}}}}}}}},
      {"mine", {{"support", 0.4}, {"maxlen", 20}, {"clusters", 10}}},
      {"classify", {{"folds", 3}, {"seed", 10}, {"mlp_epochs", 40},
                    {"mlp_hidden", 8}, {"rf_trees", 20}}},
  };
  testutil::write_file(dir / "pipeline.json", cfg.dump());

  auto run = [&](const std::string& out_dir, const std::string& extra) {
    return testutil::run_command(cli + " pipeline --config " +
                                 q(dir / "pipeline.json") + " --output-dir " +
                                 q(dir / out_dir) + extra);
  };
  REQUIRE(run("out1", " --threads 1").exit_code == 0);

  for (const char* artifact :
       {"gps.csv", "observations.jsonl", "patterns_lccspm.csv",
        "patterns_aprioriclose.csv", "patterns_smp-lcs.csv", "matrix_lccspm.csv",
        "matrix_aprioriclose.csv", "matrix_smp-lcs.csv", "summary.json",
        "report_lccspm_logreg.json", "report_smp-lcs_mlp.json",
        "report_aprioriclose_rf.json"})
    CHECK(std::filesystem::exists(dir / "out1" / artifact));

  auto summary =
      nlohmann::json::parse(testutil::read_file(dir / "out1" / "summary.json"));
  CHECK(summary["observations"] == 12);
  CHECK(summary["classification"].size() == 15);
  CHECK(summary["jaccard"].size() == 3);
  CHECK(summary["importance"].size() == 3);
  CHECK(summary["positions"]["hooker"] == 6);

  REQUIRE(run("out2", " --threads 2").exit_code == 0);
  CHECK(testutil::read_file(dir / "out1" / "summary.json") ==
        testutil::read_file(dir / "out2" / "summary.json"));
}

TEST_CASE("pipeline runs from recorded tracking data") {
  testutil::TempDir dir("cli_pipeline_csv");
  testutil::write_file(dir / "gps.csv", kSmallCsv);
  nlohmann::json cfg = {
      {"input_csv", "gps.csv"},
      {"mine", {{"support", 0.5}}},
      {"classify", {{"folds", 2}, {"shuffle", false}, {"mlp_epochs", 20},
                    {"mlp_hidden", 4}, {"rf_trees", 10}}},
  };
  testutil::write_file(dir / "pipeline.json", cfg.dump());

  // output dir via the environment variable instead of --output-dir
  auto r = testutil::run_command("MOVEMINE_OUT='" + (dir / "out").string() +
                                 "' " + cli + " pipeline --config " +
                                 q(dir / "pipeline.json"));
  REQUIRE(r.exit_code == 0);
  CHECK_FALSE(std::filesystem::exists(dir / "out" / "gps.csv"));  // not synthesized
  CHECK(std::filesystem::exists(dir / "out" / "observations.jsonl"));
  auto summary =
      nlohmann::json::parse(testutil::read_file(dir / "out" / "summary.json"));
  CHECK(summary["observations"] == 4);
  CHECK(summary["classification"].size() == 15);
}

TEST_CASE("pipeline fails cleanly on an empty input file") {
  testutil::TempDir dir("cli_pipeline_empty");
  testutil::write_file(dir / "empty.csv", "");
  nlohmann::json cfg = {{"input_csv", "empty.csv"}, {"output_dir", "out"}};
  testutil::write_file(dir / "pipeline.json", cfg.dump());
  auto r = testutil::run_command(cli + " pipeline --config " +
                                 q(dir / "pipeline.json"));
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("input") != std::string::npos);
}
