// movemine: discretize 10 Hz tracking data into movement-unit sequences,
// mine frequent movement patterns three ways, compare the pattern sets and
// cross-validate position classifiers on them.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "movemine/analysis.hpp"
#include "movemine/classify.hpp"
#include "movemine/config.hpp"
#include "movemine/discretize.hpp"
#include "movemine/featurize.hpp"
#include "movemine/io.hpp"
#include "movemine/pipeline.hpp"
#include "movemine/synth.hpp"
#include "movemine/version.hpp"

namespace fs = std::filesystem;
using namespace movemine;

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("io", "cannot open input file " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) fail("io", "cannot open output file " + path);
  return out;
}

nlohmann::json load_json(const std::string& path) {
  auto in = open_input(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail("config", path + ": " + e.what());
  }
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

// ---------------------------------------------------------------------- //

struct DiscretizeArgs {
  std::string input, output, thresholds_json;
  InactiveConfig inactive;
};

void run_discretize(const DiscretizeArgs& a) {
  BandThresholds bt;
  if (!a.thresholds_json.empty())
    bt = thresholds_from_json(load_json(a.thresholds_json));
  auto in = open_input(a.input);
  auto streams = read_tracking_csv(in);

  std::vector<ObservationSet> observations;
  std::vector<std::string> warnings;
  for (const auto& stream : streams) {
    ObservationSet obs = build_sequences(stream, bt, a.inactive, &warnings);
    if (!obs.sequences.empty()) observations.push_back(std::move(obs));
  }
  print_warnings(warnings);
  if (observations.empty())
    fail("empty-input", "no observation has active sequences");
  auto out = open_output(a.output);
  write_observations_jsonl(out, observations);
  std::cerr << "wrote " << observations.size() << " observations to " << a.output
            << '\n';
}

struct MineArgs {
  std::string algo = "lccspm";
  std::string input, output;
  MinerConfig miner;
  ClusteringConfig clustering;
  unsigned threads = 0;
};

void run_mine(const MineArgs& a) {
  PatternKind kind = kind_for_algorithm(a.algo);
  a.miner.validate();
  auto in = open_input(a.input);
  auto cohort = read_observations_jsonl(in);
  auto mined = mine_cohort(cohort, kind, a.miner, a.clustering, a.threads);

  std::vector<PatternRow> rows;
  for (const auto& m : mined)
    for (const auto& p : m.patterns) rows.push_back({m.observation_id, p});
  auto out = open_output(a.output);
  write_patterns_csv(out, rows);
  std::cerr << "mined " << rows.size() << " pattern rows over " << cohort.size()
            << " observations\n";
}

struct CompareArgs {
  std::string a_csv, b_csv, output, sequences, plot_csv;
  int top = 50;
};

void run_compare(const CompareArgs& a) {
  auto in_a = open_input(a.a_csv);
  auto in_b = open_input(a.b_csv);
  auto rows_a = read_patterns_csv(in_a);
  auto rows_b = read_patterns_csv(in_b);
  auto mined_a = group_pattern_rows(rows_a);
  auto mined_b = group_pattern_rows(rows_b);
  UniquePatternSet ua = union_patterns(mined_a);
  UniquePatternSet ub = union_patterns(mined_b);

  nlohmann::json report;
  report["a"] = {{"algorithm", ua.algorithm()}, {"unique", ua.frequency.size()}};
  report["b"] = {{"algorithm", ub.algorithm()}, {"unique", ub.frequency.size()}};
  report["jaccard"] = jaccard(ua.pattern_set(), ub.pattern_set());

  auto most = overlap_topk(ua, ub, a.top, FrequencyEnd::Most);
  auto least = overlap_topk(ua, ub, a.top, FrequencyEnd::Least);
  report["overlap"]["most"] = detail::overlap_json(most);
  report["overlap"]["least"] = detail::overlap_json(least);

  if (!a.sequences.empty()) {
    auto seq_in = open_input(a.sequences);
    auto observations = read_observations_jsonl(seq_in);
    join_positions(mined_a, observations);
    join_positions(mined_b, observations);
    for (auto [name, mined] :
         {std::pair{"a", &mined_a}, std::pair{"b", &mined_b}}) {
      PositionOverlap po = position_overlap(*mined);
      report["positions"][name] = {{"position_a", po.position_a},
                                   {"position_b", po.position_b},
                                   {"only_a", po.only_a.size()},
                                   {"only_b", po.only_b.size()},
                                   {"shared", po.shared.size()}};
    }
  }

  auto out = open_output(a.output);
  out << report.dump(2) << '\n';

  if (!a.plot_csv.empty()) {
    auto plot = open_output(a.plot_csv);
    write_csv_row(plot, {"end", "pattern", "freq_a", "freq_b"});
    for (const auto& e : most)
      write_csv_row(plot, {"most", e.pattern, std::to_string(e.freq_a),
                           std::to_string(e.freq_b)});
    for (const auto& e : least)
      write_csv_row(plot, {"least", e.pattern, std::to_string(e.freq_a),
                           std::to_string(e.freq_b)});
  }
}

struct FeaturizeArgs {
  std::string patterns, sequences, output;
};

void run_featurize(const FeaturizeArgs& a) {
  auto pat_in = open_input(a.patterns);
  auto grouped = group_pattern_rows(read_patterns_csv(pat_in));
  if (grouped.empty()) fail("empty-input", "pattern CSV has no rows");
  auto seq_in = open_input(a.sequences);
  auto observations = read_observations_jsonl(seq_in);

  // one matrix row per observation in the sequence data, in its order;
  // observations that mined nothing become all-zero rows
  std::map<std::string, size_t> by_id;
  for (size_t i = 0; i < grouped.size(); ++i)
    by_id[grouped[i].observation_id] = i;
  std::vector<MinedObservation> mined;
  mined.reserve(observations.size());
  size_t matched = 0;
  for (const auto& obs : observations) {
    auto it = by_id.find(obs.id());
    if (it != by_id.end()) {
      ++matched;
      mined.push_back(grouped[it->second]);
    } else {
      MinedObservation empty;
      empty.observation_id = obs.id();
      empty.kind = grouped.front().kind;
      mined.push_back(std::move(empty));
    }
  }
  if (matched < grouped.size())
    fail("missing-class",
         "pattern CSV holds observations absent from the sequence data");
  join_positions(mined, observations);
  FeatureMatrix m = featurize(union_patterns(mined), mined);
  auto out = open_output(a.output);
  write_matrix_csv(out, m);
  std::cerr << "wrote " << m.rows() << " x " << m.cols() << " matrix\n";
}

struct ClassifyArgs {
  std::string matrix, model = "logreg", report, algo_name;
  CvConfig cv;
  int importance = 0;
  unsigned threads = 0;
  ModelParams params;
};

void run_classify(const ClassifyArgs& a) {
  if (a.importance > 0 && a.model != "logreg")
    fail("config", "--importance requires --model logreg");
  auto in = open_input(a.matrix);
  FeatureMatrix m = read_matrix_csv(in);
  std::vector<std::string> label_names;
  Dataset data = dataset_from_matrix(m, &label_names);

  std::string algo = a.algo_name.empty() ? fs::path(a.matrix).stem().string()
                                         : a.algo_name;
  CvReport report = cross_validate(a.model, algo, make_factory(a.model, a.params),
                                   data, a.cv, model_base_seed(a.model, a.params),
                                   a.threads);
  nlohmann::json rj = detail::report_json(report);
  rj["labels"] = label_names;

  if (a.importance > 0) {
    LogisticRegressionL1 full(a.params.logreg);
    full.fit(data);
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : top_k_importance(full, m.columns, a.importance))
      entries.push_back({{"pattern", e.pattern}, {"score", e.score}});
    rj["importance"] = entries;
  }

  auto out = open_output(a.report);
  out << rj.dump(2) << '\n';
  std::cerr << a.model << " on " << algo << ": mean accuracy "
            << report.mean.accuracy << "%\n";
}

struct SynthArgs {
  std::string config, out_sequences, out_gps;
  std::optional<uint64_t> seed;
};

void run_synth(const SynthArgs& a) {
  SynthConfig cfg = synth_config_from_json(load_json(a.config));
  if (a.seed) cfg.seed = *a.seed;
  auto cohort = generate_cohort(cfg);
  auto out = open_output(a.out_sequences);
  write_observations_jsonl(out, cohort);
  if (!a.out_gps.empty()) {
    auto gps = open_output(a.out_gps);
    write_tracking_csv(gps, realize_streams(cohort));
  }
  std::cerr << "generated " << cohort.size() << " observations\n";
}

struct PipelineArgs {
  std::string config;
  std::string output_dir;
  unsigned threads = 0;
  bool threads_set = false;
};

void run_pipeline_cmd(const PipelineArgs& a) {
  nlohmann::json j = load_json(a.config);
  PipelineConfig cfg =
      pipeline_config_from_json(j, fs::path(a.config).parent_path());
  if (!a.output_dir.empty()) cfg.output_dir = a.output_dir;
  if (a.threads_set) cfg.threads = a.threads;
  nlohmann::json summary = run_pipeline(cfg);
  std::cout << "pipeline complete: " << (cfg.output_dir / "summary.json").string()
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"movement pattern mining and positional classification"};
  app.set_version_flag("--version", std::string("movemine ") + kVersion);
  app.require_subcommand(1);

  DiscretizeArgs da;
  auto* discretize = app.add_subcommand(
      "discretize", "tracking CSV -> movement sequence JSONL");
  discretize->add_option("--input", da.input, "tracking CSV")->required();
  discretize->add_option("--output", da.output, "observations JSONL")->required();
  discretize->add_option("--inactive-vel", da.inactive.v_min,
                         "inactive velocity threshold, m/s");
  discretize->add_option("--inactive-dur", da.inactive.min_dur,
                         "minimum inactive duration, s");
  discretize->add_option("--min-seq-len", da.inactive.min_seq_len,
                         "minimum sequence length, symbols");
  discretize->add_option("--thresholds", da.thresholds_json,
                         "band thresholds JSON file");

  MineArgs ma;
  auto* mine = app.add_subcommand("mine", "mine one observation set per row");
  mine->add_option("--algo", ma.algo, "lccspm | aprioriclose | smp-lcs")
      ->required();
  mine->add_option("--input", ma.input, "observations JSONL")->required();
  mine->add_option("--output", ma.output, "pattern CSV")->required();
  mine->add_option("--support", ma.miner.min_support, "minimum support fraction");
  mine->add_option("--maxlen", ma.miner.max_len, "maximum pattern length");
  mine->add_option("--clusters", ma.clustering.k, "cluster count (smp-lcs)");
  mine->add_option("--threads", ma.threads, "worker cap (0 = hardware)");

  CompareArgs ca;
  auto* compare = app.add_subcommand("compare", "compare two pattern CSVs");
  compare->add_option("--a", ca.a_csv, "first pattern CSV")->required();
  compare->add_option("--b", ca.b_csv, "second pattern CSV")->required();
  compare->add_option("--top", ca.top, "top/bottom k for overlap lists");
  compare->add_option("--output", ca.output, "report JSON")->required();
  compare->add_option("--sequences", ca.sequences,
                      "observations JSONL for per-position breakdowns");
  compare->add_option("--plot-csv", ca.plot_csv, "plot-ready overlap CSV");

  FeaturizeArgs fa;
  auto* featurize = app.add_subcommand(
      "featurize", "pattern CSV + observations JSONL -> binary matrix CSV");
  featurize->add_option("--patterns", fa.patterns, "pattern CSV")->required();
  featurize->add_option("--sequences", fa.sequences, "observations JSONL")
      ->required();
  featurize->add_option("--output", fa.output, "matrix CSV")->required();

  ClassifyArgs cla;
  auto* classify = app.add_subcommand("classify", "cross-validate one model");
  classify->add_option("--matrix", cla.matrix, "matrix CSV")->required();
  classify->add_option("--model", cla.model, "logreg | gnb | cart | rf | mlp")
      ->required();
  classify->add_option("--folds", cla.cv.n_splits, "fold count");
  classify->add_option("--seed", cla.cv.seed, "shuffle seed");
  classify->add_flag("--no-shuffle", [&cla](int64_t) { cla.cv.shuffle = false; },
                     "keep row order when folding");
  classify->add_option("--report", cla.report, "report JSON")->required();
  classify->add_option("--importance", cla.importance,
                       "top-k importance (logreg only)");
  classify->add_option("--algo-name", cla.algo_name,
                       "algorithm label for the report");
  classify->add_option("--l1", cla.params.logreg.l1_penalty,
                       "logreg L1 penalty");
  classify->add_option("--threads", cla.threads, "worker cap (0 = hardware)");

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "generate a synthetic cohort");
  synth->add_option("--config", sa.config, "synth config JSON")->required();
  synth->add_option("--out-sequences", sa.out_sequences, "observations JSONL")
      ->required();
  synth->add_option("--out-gps", sa.out_gps, "raw tracking CSV");
  uint64_t seed_value = 0;
  auto* seed_opt = synth->add_option("--seed", seed_value, "override config seed");

  PipelineArgs pa;
  auto* pipeline = app.add_subcommand("pipeline", "run the whole pipeline");
  pipeline->add_option("--config", pa.config, "pipeline config JSON")->required();
  pipeline
      ->add_option("--output-dir", pa.output_dir, "artifact directory")
      ->envname("MOVEMINE_OUT");
  auto* threads_opt =
      pipeline->add_option("--threads", pa.threads, "worker cap (0 = hardware)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*discretize) run_discretize(da);
    if (*mine) run_mine(ma);
    if (*compare) run_compare(ca);
    if (*featurize) run_featurize(fa);
    if (*classify) run_classify(cla);
    if (*synth) {
      if (*seed_opt) sa.seed = seed_value;
      run_synth(sa);
    }
    if (*pipeline) {
      pa.threads_set = bool(*threads_opt);
      run_pipeline_cmd(pa);
    }
  } catch (const movemine::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
