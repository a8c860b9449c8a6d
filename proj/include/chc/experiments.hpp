#pragma once

// Experiment drivers behind the `chc` command line tool, and their CSV/JSON
// serializations. Column orders are fixed:
//
//   accuracy rows:   dataset,class_pair,repetition,seed,train_accuracy,test_accuracy,mode,shots
//   survey rows:     dataset,m,M,repetition,seed,measure,q_htc,q_chc,delta
//   survey summary:  dataset,m,M,measure,count,mean,std,min,25%,50%,75%,max
//   plot data:       experiment,dataset,group,repetition,metric,value

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chc/classifiers.hpp"
#include "chc/dataset.hpp"
#include "chc/entanglement.hpp"
#include "chc/resources.hpp"

namespace chc {

inline constexpr const char* kAccuracyCsvHeader =
    "dataset,class_pair,repetition,seed,train_accuracy,test_accuracy,mode,shots";
inline constexpr const char* kSurveyCsvHeader = "dataset,m,M,repetition,seed,measure,q_htc,q_chc,delta";
inline constexpr const char* kSurveySummaryCsvHeader = "dataset,m,M,measure,count,mean,std,min,25%,50%,75%,max";
inline constexpr const char* kPlotDataCsvHeader = "experiment,dataset,group,repetition,metric,value";

struct ExperimentConfig {
  std::string dataset = "iris";  // iris | wine | CSV path
  std::vector<std::pair<std::string, std::string>> class_pairs;  // empty: 1&2, 1&3, 2&3 (table1) or 1&2 (survey)
  int repetitions = 30;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> shots;
  std::optional<double> phi;
  std::vector<EntanglementMeasure> measures{EntanglementMeasure::meyer_wallach};
  std::vector<int> m_values{0, 1, 2, 3, 4, 5};

  // table1
  double train_fraction = 0.8;
  std::size_t n_combos = 40;
  std::optional<PipelineOptions> pipeline;  // default: canonical_pipeline(dataset)

  // survey
  SurveyOptions survey;
};

struct AccuracyRow {
  std::string dataset;
  std::string class_pair;  // "1&2"
  int repetition = 0;
  std::uint64_t seed = 0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::string mode;  // exact | sampled
  std::int64_t shots = 0;
};

struct AccuracySummary {
  std::string dataset;
  std::string class_pair;
  std::string mode;
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
};

struct AccuracyReport {
  std::vector<AccuracyRow> rows;  // ordered by class pair, repetition, mode
  std::vector<AccuracySummary> summaries;
};

/// Recomputes per-(class pair, mode) summaries from rows.
std::vector<AccuracySummary> summarize_accuracy(const std::vector<AccuracyRow>& rows);

AccuracyReport run_table1(const ExperimentConfig& config);

/// One SurveyResult per configured measure and class pair, records pooled.
SurveyResult run_entanglement_survey(const ExperimentConfig& config);

nlohmann::json run_resources(const std::vector<std::int64_t>& training_sizes, std::int64_t feature_dim, double alpha);

/// Model file: {"pairs": [{"plus": [...], "minus": [...]}, ...], "weights": [...], "phi": x}.
/// Either side of a pair may be omitted; raw vectors are normalized as registers.
EncodedPairSet pair_set_from_json(const nlohmann::json& model);
ClassifierOutcome run_classify(const nlohmann::json& model, const RealVector& test, const EvaluationMode& mode,
                               std::optional<double> phi = std::nullopt);

nlohmann::json to_json(const ClassifierOutcome& outcome);
nlohmann::json to_json(const AccuracyReport& report);
nlohmann::json to_json(const SurveyResult& result);

void write_accuracy_csv(std::ostream& out, const AccuracyReport& report);
void write_accuracy_summary_csv(std::ostream& out, const AccuracyReport& report);
void write_survey_csv(std::ostream& out, const SurveyResult& result);
void write_survey_summary_csv(std::ostream& out, const SurveyResult& result);
void write_plot_data(std::ostream& out, const AccuracyReport& report);
void write_plot_data(std::ostream& out, const SurveyResult& result);

/// Shortest round-trip decimal form; output files depend on nothing else.
std::string format_double(double v);

}  // namespace chc
