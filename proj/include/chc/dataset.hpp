#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace chc {

/// Feature matrix (samples x N) with per-row class ids and, once two classes
/// have been selected, binary labels in {+1, -1}.
struct LabeledDataset {
  Eigen::MatrixXd features;
  std::vector<std::string> class_ids;
  std::vector<int> labels;  // empty until select_classes, or supplied directly
  std::string source;
  std::map<std::string, int> class_map;
  std::vector<std::string> feature_names;

  Eigen::Index size() const { return features.rows(); }
  Eigen::Index dimension() const { return features.cols(); }
  bool is_binary() const { return !labels.empty(); }
  Eigen::VectorXd row(Eigen::Index i) const { return features.row(i).transpose(); }

  /// Row subset, metadata carried over.
  LabeledDataset subset(const std::vector<Eigen::Index>& rows) const;
  /// Throws on a row/label count mismatch, non-finite features or labels outside {+1, -1}.
  void validate() const;
};

/// Binary dataset straight from vectors and +-1 labels.
LabeledDataset make_binary_dataset(const std::vector<Eigen::VectorXd>& rows, const std::vector<int>& labels,
                                   std::string source = "inline");

struct CsvSchema {
  std::vector<std::string> feature_columns;  // empty: every column except the label
  std::string label_column = "class";
  std::vector<std::string> allowed_classes;  // empty: any
};

LabeledDataset load_csv(const std::filesystem::path& path, const CsvSchema& schema = {});

/// Directory of the bundled iris.csv / wine.csv; $CHC_DATA_DIR overrides the build default.
std::filesystem::path bundled_data_dir();
/// "iris" or "wine" from the bundled directory, anything else is treated as a CSV path.
LabeledDataset load_dataset(const std::string& name_or_path);

LabeledDataset select_classes(const LabeledDataset& data, const std::string& class_a, const std::string& class_b);
LabeledDataset select_features(const LabeledDataset& data, const std::vector<Eigen::Index>& indices);

struct StandardizeResult {
  LabeledDataset train;
  LabeledDataset test;
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;
  std::vector<Eigen::Index> dropped;  // zero-variance columns of the input
};

/// Per-feature z-score with train mean and population standard deviation.
StandardizeResult standardize(const LabeledDataset& train, const LabeledDataset& test);

struct PcaResult {
  LabeledDataset train;
  LabeledDataset test;
  Eigen::MatrixXd components;  // N x k, columns sorted by decreasing variance
  Eigen::VectorXd explained_variance_ratio;
  Eigen::VectorXd mean;
};

/// Projects onto the top-k principal axes of the train covariance. Each axis is
/// signed so its largest-magnitude entry is positive.
PcaResult pca_project(const LabeledDataset& train, const LabeledDataset& test, Eigen::Index k);

LabeledDataset unit_normalize(const LabeledDataset& data);

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  bool stratified = true;
};

std::pair<LabeledDataset, LabeledDataset> train_test_split(const LabeledDataset& data, const SplitSpec& spec);

struct TrainingQuadruple {
  std::array<Eigen::Index, 2> plus{};   // rows of the training split
  std::array<Eigen::Index, 2> minus{};
  double train_accuracy = 0.0;
  std::size_t combinations_evaluated = 0;
};

/// Samples up to `n_combos` distinct (2 from +1, 2 from -1) combinations, scores
/// each by exact CHC training accuracy on `train`, returns the first best.
TrainingQuadruple select_training_quadruple(const LabeledDataset& train, std::size_t n_combos = 40,
                                            std::uint64_t seed = 0);

/// Preprocessing applied to a (train, test) split before classification.
struct PipelineOptions {
  std::vector<Eigen::Index> features;  // select_features first when non-empty
  bool standardize = false;
  Eigen::Index pca_components = 0;  // 0 disables PCA
};

/// Iris: features (1, 2) -> standardize -> unit_normalize.
/// Wine: PCA(2) on centered features -> unit_normalize.
PipelineOptions canonical_pipeline(const std::string& dataset);

std::pair<LabeledDataset, LabeledDataset> apply_pipeline(const LabeledDataset& train, const LabeledDataset& test,
                                                         const PipelineOptions& options);

}  // namespace chc
