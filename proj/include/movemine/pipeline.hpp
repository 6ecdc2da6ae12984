#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "movemine/analysis.hpp"
#include "movemine/classify.hpp"
#include "movemine/config.hpp"
#include "movemine/discretize.hpp"
#include "movemine/featurize.hpp"
#include "movemine/io.hpp"
#include "movemine/mine_contiguous.hpp"
#include "movemine/mine_itemset.hpp"
#include "movemine/mine_smp.hpp"
#include "movemine/parallel.hpp"
#include "movemine/synth.hpp"

namespace movemine {

struct PipelineConfig {
  std::filesystem::path output_dir = "out";
  uint64_t seed = 10;
  std::optional<SynthConfig> synth;             // either this ...
  std::optional<std::filesystem::path> input_csv;  // ... or raw tracking data
  BandThresholds thresholds;
  InactiveConfig inactive;
  MinerConfig miner;
  ClusteringConfig clustering;
  int compare_top = 50;
  CvConfig cv;
  int importance_k = 20;
  ModelParams models;
  unsigned threads = 0;  // 0 = hardware concurrency
};

inline PipelineConfig pipeline_config_from_json(
    const nlohmann::json& j, const std::filesystem::path& base_dir = {}) {
  PipelineConfig cfg;
  if (j.contains("output_dir"))
    cfg.output_dir = base_dir / j.at("output_dir").get<std::string>();
  if (j.contains("seed")) {
    cfg.seed = j.at("seed").get<uint64_t>();
    cfg.cv.seed = cfg.seed;
  }
  if (j.contains("synth")) {
    auto synth = synth_config_from_json(j.at("synth"));
    if (!j.at("synth").contains("seed")) synth.seed = cfg.seed;
    cfg.synth = synth;
  }
  if (j.contains("input_csv"))
    cfg.input_csv = base_dir / j.at("input_csv").get<std::string>();
  if (!cfg.synth && !cfg.input_csv)
    fail("config", "pipeline needs either a synth block or input_csv");
  if (cfg.synth && cfg.input_csv)
    fail("config", "pipeline takes either synth or input_csv, not both");

  if (j.contains("discretize")) {
    const auto& d = j.at("discretize");
    detail::read_field(d, "inactive_vel", cfg.inactive.v_min);
    detail::read_field(d, "inactive_dur", cfg.inactive.min_dur);
    detail::read_field(d, "min_seq_len", cfg.inactive.min_seq_len);
    if (d.contains("thresholds"))
      cfg.thresholds = thresholds_from_json(d.at("thresholds"));
  }
  if (j.contains("mine")) {
    const auto& m = j.at("mine");
    detail::read_field(m, "support", cfg.miner.min_support);
    detail::read_field(m, "maxlen", cfg.miner.max_len);
    detail::read_field(m, "clusters", cfg.clustering.k);
    cfg.miner.validate();
    cfg.clustering.validate();
  }
  if (j.contains("compare"))
    detail::read_field(j.at("compare"), "top", cfg.compare_top);
  if (j.contains("classify")) {
    const auto& c = j.at("classify");
    detail::read_field(c, "folds", cfg.cv.n_splits);
    detail::read_field(c, "seed", cfg.cv.seed);
    detail::read_field(c, "shuffle", cfg.cv.shuffle);
    detail::read_field(c, "importance", cfg.importance_k);
    detail::read_field(c, "l1_penalty", cfg.models.logreg.l1_penalty);
    detail::read_field(c, "rf_trees", cfg.models.forest.n_trees);
    detail::read_field(c, "mlp_epochs", cfg.models.mlp.max_epochs);
    detail::read_field(c, "mlp_hidden", cfg.models.mlp.hidden);
  }
  detail::read_field(j, "threads", cfg.threads);
  return cfg;
}

namespace detail {

inline nlohmann::json metrics_json(const FoldMetrics& m) {
  return {{"accuracy", m.accuracy},
          {"precision", m.precision},
          {"recall", m.recall},
          {"f1", m.f1}};
}

inline nlohmann::json report_json(const CvReport& r) {
  nlohmann::json folds = nlohmann::json::array();
  for (const auto& f : r.folds) folds.push_back(metrics_json(f));
  return {{"model", r.model},
          {"algorithm", r.algorithm},
          {"folds", folds},
          {"mean", metrics_json(r.mean)},
          {"warnings", r.warnings}};
}

inline nlohmann::json overlap_json(const std::vector<OverlapEntry>& entries) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : entries)
    out.push_back({{"pattern", e.pattern}, {"freq_a", e.freq_a}, {"freq_b", e.freq_b}});
  return out;
}

template <class Fn>
auto run_stage(const std::string& stage, Fn&& fn) {
  try {
    return fn();
  } catch (const error& e) {
    fail(e.tag(), "[stage " + stage + "] " + e.what());
  }
}

}  // namespace detail

// Mines one observation's sequence set with one algorithm.
inline std::vector<Pattern> mine_observation(const std::vector<std::string>& sequences,
                                             PatternKind kind,
                                             const MinerConfig& miner,
                                             const ClusteringConfig& clustering) {
  switch (kind) {
    case PatternKind::Contiguous:
      return mine_closed_contiguous(sequences, miner);
    case PatternKind::Itemset:
      return mine_closed_itemsets(to_transactions(sequences), miner);
    case PatternKind::Subsequence:
      return smp_extract(sequences, clustering, miner.max_len);
  }
  fail("config", "unknown pattern kind");
}

struct ObservationPatterns {
  std::string observation_id;
  std::string position;
  PatternKind kind = PatternKind::Contiguous;
  std::vector<Pattern> patterns;
};

// Per-observation mining across a cohort; observation order in == order out
// regardless of thread count.
inline std::vector<ObservationPatterns> mine_cohort(
    const std::vector<ObservationSet>& cohort, PatternKind kind,
    const MinerConfig& miner, const ClusteringConfig& clustering,
    unsigned threads) {
  std::vector<ObservationPatterns> mined(cohort.size());
  parallel_for(cohort.size(), threads, [&](size_t i) {
    const auto& obs = cohort[i];
    mined[i] = {obs.id(), obs.position, kind,
                mine_observation(obs.sequence_strings(), kind, miner, clustering)};
  });
  return mined;
}

inline std::vector<MinedObservation> to_mined_observations(
    const std::vector<ObservationPatterns>& mined) {
  std::vector<MinedObservation> out;
  out.reserve(mined.size());
  for (const auto& m : mined) {
    MinedObservation o;
    o.observation_id = m.observation_id;
    o.position = m.position;
    o.kind = m.kind;
    for (const auto& p : m.patterns) o.patterns.insert(p.symbols);
    out.push_back(std::move(o));
  }
  return out;
}

// discretize -> mine (three algorithms) -> union/jaccard/overlap ->
// featurize -> classify (five models). Writes per-stage artifacts plus
// summary.json into output_dir and returns the summary. Identical config and
// seed give a byte-identical summary regardless of thread count.
inline nlohmann::json run_pipeline(const PipelineConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  const unsigned threads = cfg.threads;

  // Stage 1: tracking data (synthesized or loaded), then discretization.
  std::vector<TrackingStream> streams = detail::run_stage("input", [&] {
    if (cfg.synth) {
      auto cohort = generate_cohort(*cfg.synth);
      auto generated = realize_streams(cohort);
      std::ofstream gps(cfg.output_dir / "gps.csv");
      write_tracking_csv(gps, generated);
      return generated;
    }
    std::ifstream in(*cfg.input_csv);
    if (!in) fail("io", "cannot open " + cfg.input_csv->string());
    return read_tracking_csv(in);
  });

  std::vector<ObservationSet> cohort = detail::run_stage("discretize", [&] {
    std::vector<ObservationSet> out;
    std::vector<std::string> warnings;
    for (const auto& stream : streams) {
      ObservationSet obs =
          build_sequences(stream, cfg.thresholds, cfg.inactive, &warnings);
      if (!obs.sequences.empty()) out.push_back(std::move(obs));
    }
    if (out.empty()) fail("empty-input", "no observation has active sequences");
    std::ofstream jsonl(cfg.output_dir / "observations.jsonl");
    write_observations_jsonl(jsonl, out);
    return out;
  });

  nlohmann::json summary;
  summary["observations"] = cohort.size();
  {
    std::map<std::string, int> position_counts;
    for (const auto& o : cohort) ++position_counts[o.position];
    summary["positions"] = position_counts;
  }

  // Stage 2: mining, one pattern CSV per algorithm.
  const std::vector<PatternKind> kinds = {
      PatternKind::Contiguous, PatternKind::Itemset, PatternKind::Subsequence};
  std::map<std::string, std::vector<MinedObservation>> mined_by_algo;
  for (PatternKind kind : kinds) {
    const std::string algo = algorithm_name(kind);
    auto mined = detail::run_stage("mine/" + algo, [&] {
      auto result = mine_cohort(cohort, kind, cfg.miner, cfg.clustering, threads);
      std::vector<PatternRow> rows;
      for (const auto& m : result)
        for (const auto& p : m.patterns)
          rows.push_back({m.observation_id, p});
      std::ofstream csv(cfg.output_dir / ("patterns_" + algo + ".csv"));
      write_patterns_csv(csv, rows);
      return to_mined_observations(result);
    });
    mined_by_algo[algo] = std::move(mined);
  }

  // Stage 3: unions, Jaccard, overlaps.
  std::map<std::string, UniquePatternSet> unions;
  detail::run_stage("compare", [&] {
    for (const auto& [algo, mined] : mined_by_algo) {
      unions[algo] = union_patterns(mined);
      summary["patterns"][algo]["unique"] = unions[algo].frequency.size();
    }
    for (size_t a = 0; a < kinds.size(); ++a) {
      for (size_t b = a + 1; b < kinds.size(); ++b) {
        std::string na = algorithm_name(kinds[a]), nb = algorithm_name(kinds[b]);
        std::string key = na + "_vs_" + nb;
        const auto& ua = unions[na];
        const auto& ub = unions[nb];
        summary["jaccard"][key] = jaccard(ua.pattern_set(), ub.pattern_set());
        summary["overlap"][key]["most"] = detail::overlap_json(
            overlap_topk(ua, ub, cfg.compare_top, FrequencyEnd::Most));
        summary["overlap"][key]["least"] = detail::overlap_json(
            overlap_topk(ua, ub, cfg.compare_top, FrequencyEnd::Least));
      }
    }
    for (const auto& [algo, mined] : mined_by_algo) {
      PositionOverlap po = position_overlap(mined);
      summary["position_overlap"][algo] = {
          {"position_a", po.position_a},
          {"position_b", po.position_b},
          {"only_a", po.only_a.size()},
          {"only_b", po.only_b.size()},
          {"shared", po.shared.size()}};
    }
    return 0;
  });

  // Stage 4: feature matrices.
  std::map<std::string, FeatureMatrix> matrices;
  for (const auto& [algo, mined] : mined_by_algo) {
    matrices[algo] = detail::run_stage("featurize/" + algo, [&] {
      FeatureMatrix m = featurize(unions[algo], mined);
      std::ofstream csv(cfg.output_dir / ("matrix_" + algo + ".csv"));
      write_matrix_csv(csv, m);
      return m;
    });
  }

  // Stage 5: cross-validated models, one report per (algorithm, model).
  summary["classification"] = nlohmann::json::array();
  for (PatternKind kind : kinds) {
    const std::string algo = algorithm_name(kind);
    const FeatureMatrix& matrix = matrices[algo];
    std::vector<std::string> label_names;
    Dataset data = detail::run_stage("classify/" + algo, [&] {
      std::set<std::string> labels(matrix.labels.begin(), matrix.labels.end());
      if (labels.size() != 2)
        fail("missing-class", "classification needs exactly two positions, got " +
                                  std::to_string(labels.size()));
      return dataset_from_matrix(matrix, &label_names);
    });
    for (const auto& model : model_names()) {
      CvReport report = detail::run_stage("classify/" + algo + "/" + model, [&] {
        return cross_validate(model, algo, make_factory(model, cfg.models), data,
                              cfg.cv, model_base_seed(model, cfg.models), threads);
      });
      nlohmann::json rj = detail::report_json(report);
      rj["labels"] = label_names;
      std::ofstream out(cfg.output_dir / ("report_" + algo + "_" + model + ".json"));
      out << rj.dump(2) << '\n';
      summary["classification"].push_back(rj);
    }
    detail::run_stage("importance/" + algo, [&] {
      LogisticRegressionL1 full(cfg.models.logreg);
      full.fit(data);
      nlohmann::json entries = nlohmann::json::array();
      for (const auto& e : top_k_importance(full, matrix.columns, cfg.importance_k))
        entries.push_back({{"pattern", e.pattern}, {"score", e.score}});
      summary["importance"][algo] = entries;
      return 0;
    });
  }

  std::ofstream out(cfg.output_dir / "summary.json");
  out << summary.dump(2) << '\n';
  return summary;
}

}  // namespace movemine
