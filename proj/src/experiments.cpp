#include "chc/experiments.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

#include "chc/parallel.hpp"

namespace chc {

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string pair_name(const std::pair<std::string, std::string>& p) { return p.first + "&" + p.second; }

double accuracy(const LabeledDataset& data, const EncodedPairSet& pairs, const ClassifierConfig& base,
                std::uint64_t sample_seed) {
  std::size_t correct = 0;
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    ClassifierConfig config = base;
    if (config.mode.kind == EvaluationKind::sampled) config.mode.seed = derive_seed(sample_seed, 7, i);
    if (evaluate_chc(pairs, data.row(i), config).label == data.labels[static_cast<std::size_t>(i)]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

struct Table1Rep {
  std::vector<AccuracyRow> rows;
};

}  // namespace

std::vector<AccuracySummary> summarize_accuracy(const std::vector<AccuracyRow>& rows) {
  std::vector<AccuracySummary> out;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> slot;
  std::vector<std::vector<double>> values;
  for (const auto& r : rows) {
    const auto key = std::make_tuple(r.dataset, r.class_pair, r.mode);
    auto it = slot.find(key);
    if (it == slot.end()) {
      it = slot.emplace(key, out.size()).first;
      out.push_back({r.dataset, r.class_pair, r.mode, 0, 0.0, 0.0});
      values.emplace_back();
    }
    values[it->second].push_back(r.test_accuracy);
  }
  for (std::size_t s = 0; s < out.size(); ++s) {
    const auto& v = values[s];
    out[s].count = v.size();
    out[s].mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    if (v.size() > 1) {
      double ss = 0;
      for (double x : v) ss += (x - out[s].mean) * (x - out[s].mean);
      out[s].std = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
  }
  return out;
}

AccuracyReport run_table1(const ExperimentConfig& config) {
  if (config.repetitions < 1) throw ArgumentError("run_table1: repetitions must be >= 1");
  const LabeledDataset data = load_dataset(config.dataset);
  const auto class_pairs = config.class_pairs.empty()
                               ? std::vector<std::pair<std::string, std::string>>{{"1", "2"}, {"1", "3"}, {"2", "3"}}
                               : config.class_pairs;
  const PipelineOptions pipeline = config.pipeline ? *config.pipeline : canonical_pipeline(data.source);

  ClassifierConfig exact;
  if (config.phi) exact.phi = *config.phi;
  ClassifierConfig sampled = exact;
  if (config.shots) sampled.mode = EvaluationMode::sampled(*config.shots, 0);

  AccuracyReport report;
  for (const auto& classes : class_pairs) {
    const LabeledDataset two = select_classes(data, classes.first, classes.second);
    const std::string name = pair_name(classes);
    const std::uint64_t stream = fnv1a(data.source + ":" + name);
    std::vector<Table1Rep> reps(static_cast<std::size_t>(config.repetitions));

    parallel_for(reps.size(), [&](std::size_t r) {
      const std::uint64_t seed = derive_seed(config.seed, stream, r);
      const auto [raw_train, raw_test] = train_test_split(two, SplitSpec{config.train_fraction, derive_seed(seed, 1), true});
      const auto [train, test] = apply_pipeline(raw_train, raw_test, pipeline);
      const TrainingQuadruple quad = select_training_quadruple(train, config.n_combos, derive_seed(seed, 2));
      const EncodedPairSet pairs = make_pair_set({train.row(quad.plus[0]), train.row(quad.plus[1])},
                                                 {train.row(quad.minus[0]), train.row(quad.minus[1])}, seed,
                                                 PairWeighting::uniform, /*shuffle=*/false);

      AccuracyRow row{data.source, name, static_cast<int>(r), seed, quad.train_accuracy, 0.0, "exact", 0};
      row.test_accuracy = accuracy(test, pairs, exact, 0);
      reps[r].rows.push_back(row);
      if (config.shots) {
        AccuracyRow srow = row;
        srow.mode = "sampled";
        srow.shots = *config.shots;
        srow.train_accuracy = accuracy(train, pairs, sampled, derive_seed(seed, 3));
        srow.test_accuracy = accuracy(test, pairs, sampled, derive_seed(seed, 4));
        reps[r].rows.push_back(srow);
      }
    });
    for (auto& rep : reps) {
      for (auto& row : rep.rows) report.rows.push_back(std::move(row));
    }
  }
  report.summaries = summarize_accuracy(report.rows);
  return report;
}

SurveyResult run_entanglement_survey(const ExperimentConfig& config) {
  const LabeledDataset data = load_dataset(config.dataset);
  const auto class_pairs = config.class_pairs.empty()
                               ? std::vector<std::pair<std::string, std::string>>{{"1", "2"}}
                               : config.class_pairs;
  SurveyResult all;
  for (const auto& classes : class_pairs) {
    SurveyOptions options = config.survey;
    options.classes = classes;
    if (config.phi) options.phi = *config.phi;
    for (const auto measure : config.measures) {
      SurveyResult part = delta_survey(data, config.m_values, config.repetitions, measure, config.seed, options);
      all.records.insert(all.records.end(), part.records.begin(), part.records.end());
      all.summaries.insert(all.summaries.end(), part.summaries.begin(), part.summaries.end());
    }
  }
  return all;
}

nlohmann::json run_resources(const std::vector<std::int64_t>& training_sizes, std::int64_t feature_dim, double alpha) {
  auto estimate_json = [](const GateCountEstimate& e) {
    return nlohmann::json{{"method", to_string(e.method)},
                          {"data_encoding_ops", e.data_encoding_ops},
                          {"controls", e.controls},
                          {"controlled_primitive_count", e.controlled_primitive_count},
                          {"label_encoding_ops", e.label_encoding_ops},
                          {"index_qubits", e.index_qubits},
                          {"total_qubits", e.total_qubits},
                          {"total_ops", e.total_ops()}};
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const std::int64_t m : training_sizes) {
    const GateCountEstimate htc = count_htc(m, feature_dim, alpha);
    const GateCountEstimate chc = count_chc(m, feature_dim);
    rows.push_back({{"M", m},
                    {"N", feature_dim},
                    {"alpha", alpha},
                    {"htc", estimate_json(htc)},
                    {"chc", estimate_json(chc)},
                    {"data_primitive_ratio", static_cast<double>(htc.controlled_primitive_count) /
                                                 static_cast<double>(chc.controlled_primitive_count)},
                    {"total_ops_ratio", static_cast<double>(htc.total_ops()) / static_cast<double>(chc.total_ops())},
                    {"qubit_reduction", htc.total_qubits - chc.total_qubits}});
  }
  return {{"model", "uniformly controlled op with c controls = 2^c controlled primitives"}, {"rows", rows}};
}

EncodedPairSet pair_set_from_json(const nlohmann::json& model) {
  if (!model.is_object() || !model.contains("pairs") || !model["pairs"].is_array() || model["pairs"].empty()) {
    throw ArgumentError("model: expected a non-empty \"pairs\" array");
  }
  auto vec = [](const nlohmann::json& j, const char* side) -> RealVector {
    if (!j.is_array() || j.empty()) throw ArgumentError(std::string("model: \"") + side + "\" must be a non-empty array");
    RealVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number()) throw ArgumentError(std::string("model: non-numeric entry in \"") + side + "\"");
      v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
  };
  std::vector<NormalizedPair> pairs;
  for (const auto& p : model["pairs"]) {
    std::optional<RealVector> plus;
    std::optional<RealVector> minus;
    if (p.contains("plus") && !p["plus"].is_null()) plus = vec(p["plus"], "plus");
    if (p.contains("minus") && !p["minus"].is_null()) minus = vec(p["minus"], "minus");
    pairs.push_back(normalize_pair(plus, minus));
  }
  std::vector<double> weights;
  if (model.contains("weights")) {
    weights = model["weights"].get<std::vector<double>>();
  } else {
    weights = uniform_weights(pairs.size());
  }
  return EncodedPairSet(std::move(pairs), std::move(weights));
}

ClassifierOutcome run_classify(const nlohmann::json& model, const RealVector& test, const EvaluationMode& mode,
                               std::optional<double> phi) {
  const EncodedPairSet pairs = pair_set_from_json(model);
  ClassifierConfig config;
  config.mode = mode;
  if (model.contains("phi")) config.phi = model["phi"].get<double>();
  if (phi) config.phi = *phi;
  return evaluate_chc(pairs, test, config);
}

nlohmann::json to_json(const ClassifierOutcome& outcome) {
  nlohmann::json j{{"score", outcome.score}, {"label", outcome.label}, {"mode", outcome.mode.name()}};
  if (outcome.mode.kind == EvaluationKind::sampled) {
    j["shots"] = outcome.mode.shots;
    j["seed"] = outcome.mode.seed;
  }
  if (outcome.ancilla_p0) j["ancilla_p0"] = *outcome.ancilla_p0;
  return j;
}

nlohmann::json to_json(const AccuracyReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"dataset", r.dataset},
                    {"class_pair", r.class_pair},
                    {"repetition", r.repetition},
                    {"seed", r.seed},
                    {"train_accuracy", r.train_accuracy},
                    {"test_accuracy", r.test_accuracy},
                    {"mode", r.mode},
                    {"shots", r.shots}});
  }
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& s : report.summaries) {
    summary.push_back({{"dataset", s.dataset},
                       {"class_pair", s.class_pair},
                       {"mode", s.mode},
                       {"count", s.count},
                       {"mean", s.mean},
                       {"std", s.std}});
  }
  return {{"rows", rows}, {"summary", summary}};
}

nlohmann::json to_json(const SurveyResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : result.records) {
    rows.push_back({{"dataset", r.dataset},
                    {"m", r.m},
                    {"M", r.samples_per_class},
                    {"repetition", r.repetition},
                    {"seed", r.seed},
                    {"measure", to_string(r.measure)},
                    {"q_htc", r.q_htc},
                    {"q_chc", r.q_chc},
                    {"delta", r.delta}});
  }
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& s : result.summaries) {
    summary.push_back({{"dataset", s.dataset},
                       {"m", s.m},
                       {"M", s.samples_per_class},
                       {"measure", to_string(s.measure)},
                       {"count", s.count},
                       {"mean", s.mean},
                       {"std", s.std},
                       {"min", s.min},
                       {"25%", s.q25},
                       {"50%", s.q50},
                       {"75%", s.q75},
                       {"max", s.max}});
  }
  return {{"rows", rows}, {"summary", summary}};
}

void write_accuracy_csv(std::ostream& out, const AccuracyReport& report) {
  out << kAccuracyCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.dataset << ',' << r.class_pair << ',' << r.repetition << ',' << r.seed << ','
        << format_double(r.train_accuracy) << ',' << format_double(r.test_accuracy) << ',' << r.mode << ',';
    if (r.shots > 0) out << r.shots;
    out << '\n';
  }
}

void write_accuracy_summary_csv(std::ostream& out, const AccuracyReport& report) {
  out << "dataset,class_pair,mode,count,mean,std\n";
  for (const auto& s : report.summaries) {
    out << s.dataset << ',' << s.class_pair << ',' << s.mode << ',' << s.count << ',' << format_double(s.mean) << ','
        << format_double(s.std) << '\n';
  }
}

void write_survey_csv(std::ostream& out, const SurveyResult& result) {
  out << kSurveyCsvHeader << '\n';
  for (const auto& r : result.records) {
    out << r.dataset << ',' << r.m << ',' << r.samples_per_class << ',' << r.repetition << ',' << r.seed << ','
        << to_string(r.measure) << ',' << format_double(r.q_htc) << ',' << format_double(r.q_chc) << ','
        << format_double(r.delta) << '\n';
  }
}

void write_survey_summary_csv(std::ostream& out, const SurveyResult& result) {
  out << kSurveySummaryCsvHeader << '\n';
  for (const auto& s : result.summaries) {
    out << s.dataset << ',' << s.m << ',' << s.samples_per_class << ',' << to_string(s.measure) << ',' << s.count << ','
        << format_double(s.mean) << ',' << format_double(s.std) << ',' << format_double(s.min) << ','
        << format_double(s.q25) << ',' << format_double(s.q50) << ',' << format_double(s.q75) << ','
        << format_double(s.max) << '\n';
  }
}

void write_plot_data(std::ostream& out, const AccuracyReport& report) {
  out << kPlotDataCsvHeader << '\n';
  for (const auto& r : report.rows) {
    const std::string group = r.class_pair + "/" + r.mode;
    out << "table1," << r.dataset << ',' << group << ',' << r.repetition << ",train_accuracy,"
        << format_double(r.train_accuracy) << '\n';
    out << "table1," << r.dataset << ',' << group << ',' << r.repetition << ",test_accuracy,"
        << format_double(r.test_accuracy) << '\n';
  }
}

void write_plot_data(std::ostream& out, const SurveyResult& result) {
  out << kPlotDataCsvHeader << '\n';
  for (const auto& r : result.records) {
    const std::string group = "M=" + std::to_string(r.samples_per_class) + "/" + to_string(r.measure);
    for (const auto& [metric, value] : {std::pair{"q_htc", r.q_htc}, {"q_chc", r.q_chc}, {"delta", r.delta}}) {
      out << "entanglement-survey," << r.dataset << ',' << group << ',' << r.repetition << ',' << metric << ','
          << format_double(value) << '\n';
    }
  }
}

}  // namespace chc
