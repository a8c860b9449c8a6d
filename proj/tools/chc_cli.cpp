#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chc/errors.hpp"
#include "chc/experiments.hpp"

namespace {

namespace fs = std::filesystem;

struct Output {
  std::string path;
  std::string format = "csv";
  std::string plot_data;
  std::string summary;
};

std::pair<std::string, std::string> parse_class_pair(const std::string& text) {
  const auto sep = text.find_first_of(",&");
  if (sep == std::string::npos || sep == 0 || sep + 1 == text.size()) {
    throw chc::ArgumentError("class pair must look like '1,2', got '" + text + "'");
  }
  return {text.substr(0, sep), text.substr(sep + 1)};
}

chc::RealVector parse_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0') {
      throw chc::ArgumentError("malformed test vector entry '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw chc::ArgumentError("empty test vector");
  return Eigen::Map<chc::RealVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::string resolve(const std::string& path, const std::string& default_name) {
  if (!path.empty()) return path;
  if (const char* dir = std::getenv("CHC_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
    fs::create_directories(dir);
    return (fs::path(dir) / default_name).string();
  }
  return "";
}

template <typename Writer>
void emit(const std::string& path, Writer&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw chc::ArgumentError("cannot open '" + path + "' for writing");
  write(out);
}

void emit_json(const std::string& path, const nlohmann::json& j) {
  emit(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

void add_output_options(CLI::App* cmd, Output& out) {
  cmd->add_option("-o,--output", out.path, "Output file (default: $CHC_OUTPUT_DIR/<command>.<format>, else stdout)");
  cmd->add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--plot-data", out.plot_data, "Also write tidy long-format CSV to this file");
  cmd->add_option("--summary", out.summary, "Also write the summary CSV to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compact Hadamard classifier experiments"};
  app.require_subcommand(1);

  chc::ExperimentConfig config;
  std::vector<std::string> classes;
  std::string phi_text;
  Output output;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--dataset", config.dataset, "iris, wine, or a CSV path");
    cmd->add_option("--classes", classes, "Class pair such as 1,2 (repeatable)");
    cmd->add_option("--repetitions", config.repetitions, "Number of seeded repetitions")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", config.seed, "Base seed");
    cmd->add_option("--phi", phi_text, "Ancilla phase in radians");
    add_output_options(cmd, output);
  };

  auto* table1 = app.add_subcommand("table1", "Classification accuracy over repeated 80/20 splits");
  common(table1);
  std::int64_t shots = 0;
  std::string pipeline = "canonical";
  table1->add_option("--shots", shots, "Also evaluate in sampled mode with this many shots")->check(CLI::PositiveNumber);
  table1->add_option("--pipeline", pipeline, "canonical or standardized-pca")
      ->check(CLI::IsMember({"canonical", "standardized-pca"}));
  table1->add_option("--combos", config.n_combos, "Training quadruples scored per repetition");

  auto* survey = app.add_subcommand("survey", "Entanglement difference between HTC and CHC final states");
  common(survey);
  std::string measure = "mw";
  std::string scaling = "train-split";
  survey->add_option("--measure", measure, "mw, geometric or both")->check(CLI::IsMember({"mw", "geometric", "both"}));
  survey->add_option("--m", config.m_values, "Values of m (M = 2^m per class)");
  survey->add_option("--scaling", scaling, "train-split, full-dataset or none")
      ->check(CLI::IsMember({"train-split", "full-dataset", "none"}));
  survey->add_option("--train-fraction", config.survey.train_fraction, "Train split fraction");

  auto* resources = app.add_subcommand("resources", "Gate-count model for HTC and CHC");
  std::vector<std::int64_t> sizes{2, 4, 8, 16, 32, 64, 128, 256};
  std::int64_t feature_dim = 4;
  double alpha = 0.5;
  resources->add_option("--sizes", sizes, "Training set sizes M");
  resources->add_option("--n", feature_dim, "Feature dimension N");
  resources->add_option("--alpha", alpha, "Fraction of +1 samples");
  resources->add_option("-o,--output", output.path, "Output JSON file");

  auto* classify = app.add_subcommand("classify", "Classify one vector with a model file");
  std::string model_path;
  std::string test_text;
  std::string mode = "exact";
  std::uint64_t classify_seed = 0;
  classify->add_option("--model", model_path, "JSON model file")->required();
  classify->add_option("--test", test_text, "Comma-separated test vector")->required()->allow_extra_args(false);
  classify->add_option("--mode", mode, "exact, analytic or sampled")
      ->check(CLI::IsMember({"exact", "analytic", "sampled"}));
  classify->add_option("--shots", shots, "Shots in sampled mode")->check(CLI::PositiveNumber);
  classify->add_option("--seed", classify_seed, "Sampling seed");
  classify->add_option("--phi", phi_text, "Ancilla phase in radians");
  classify->add_option("-o,--output", output.path, "Output JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!phi_text.empty()) {
      std::size_t used = 0;
      config.phi = std::stod(phi_text, &used);
      if (used != phi_text.size()) throw chc::ArgumentError("malformed --phi '" + phi_text + "'");
    }
    for (const auto& c : classes) config.class_pairs.push_back(parse_class_pair(c));

    if (table1->parsed()) {
      if (shots > 0) config.shots = shots;
      if (pipeline == "standardized-pca") config.pipeline = chc::PipelineOptions{{}, true, 2};
      const chc::AccuracyReport report = chc::run_table1(config);
      const std::string path = resolve(output.path, "table1." + output.format);
      if (output.format == "json") {
        emit_json(path, chc::to_json(report));
      } else {
        emit(path, [&](std::ostream& out) { chc::write_accuracy_csv(out, report); });
      }
      if (!output.summary.empty()) {
        emit(output.summary, [&](std::ostream& out) { chc::write_accuracy_summary_csv(out, report); });
      }
      if (!output.plot_data.empty()) {
        emit(output.plot_data, [&](std::ostream& out) { chc::write_plot_data(out, report); });
      }
      for (const auto& s : report.summaries) {
        std::clog << s.dataset << ' ' << s.class_pair << ' ' << s.mode << ": " << s.mean << " (" << s.std << ")\n";
      }
    } else if (survey->parsed()) {
      if (measure == "both") {
        config.measures = {chc::EntanglementMeasure::meyer_wallach, chc::EntanglementMeasure::geometric};
      } else {
        config.measures = {chc::parse_measure(measure)};
      }
      config.survey.scaling = scaling == "train-split"    ? chc::ScalerScope::train_split
                              : scaling == "full-dataset" ? chc::ScalerScope::full_dataset
                                                          : chc::ScalerScope::none;
      const chc::SurveyResult result = chc::run_entanglement_survey(config);
      const std::string path = resolve(output.path, "survey." + output.format);
      if (output.format == "json") {
        emit_json(path, chc::to_json(result));
      } else {
        emit(path, [&](std::ostream& out) { chc::write_survey_csv(out, result); });
      }
      if (!output.summary.empty()) {
        emit(output.summary, [&](std::ostream& out) { chc::write_survey_summary_csv(out, result); });
      } else if (output.format == "csv") {
        chc::write_survey_summary_csv(std::clog, result);
      }
      if (!output.plot_data.empty()) {
        emit(output.plot_data, [&](std::ostream& out) { chc::write_plot_data(out, result); });
      }
    } else if (resources->parsed()) {
      emit_json(resolve(output.path, "resources.json"), chc::run_resources(sizes, feature_dim, alpha));
    } else if (classify->parsed()) {
      std::ifstream in(model_path);
      if (!in) throw chc::ArgumentError("cannot read model file '" + model_path + "'");
      nlohmann::json model;
      try {
        model = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw chc::ArgumentError(std::string("model file is not valid JSON: ") + e.what());
      }
      chc::EvaluationMode eval = chc::EvaluationMode::exact();
      if (mode == "analytic") eval = chc::EvaluationMode::analytic();
      if (mode == "sampled") {
        if (shots <= 0) throw chc::ArgumentError("--mode sampled needs --shots");
        eval = chc::EvaluationMode::sampled(shots, classify_seed);
      }
      const auto outcome = chc::run_classify(model, parse_vector(test_text), eval, config.phi);
      emit_json(output.path, chc::to_json(outcome));
    }
  } catch (const chc::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const chc::DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const chc::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const chc::LayoutError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed model: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
