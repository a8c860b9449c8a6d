#include "chc/dataset.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "chc/classifiers.hpp"
#include "chc/errors.hpp"

namespace chc {

LabeledDataset LabeledDataset::subset(const std::vector<Eigen::Index>& rows) const {
  LabeledDataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Eigen::Index src = rows[r];
    if (src < 0 || src >= size()) throw ArgumentError("subset: row " + std::to_string(src) + " out of range");
    out.features.row(static_cast<Eigen::Index>(r)) = features.row(src);
    if (!class_ids.empty()) out.class_ids.push_back(class_ids[static_cast<std::size_t>(src)]);
    if (!labels.empty()) out.labels.push_back(labels[static_cast<std::size_t>(src)]);
  }
  out.source = source;
  out.class_map = class_map;
  out.feature_names = feature_names;
  return out;
}

void LabeledDataset::validate() const {
  if (!class_ids.empty() && class_ids.size() != static_cast<std::size_t>(size())) {
    throw ArgumentError("dataset: " + std::to_string(class_ids.size()) + " class ids for " + std::to_string(size()) + " rows");
  }
  if (!labels.empty()) {
    if (labels.size() != static_cast<std::size_t>(size())) {
      throw ArgumentError("dataset: " + std::to_string(labels.size()) + " labels for " + std::to_string(size()) + " rows");
    }
    for (int y : labels) {
      if (y != 1 && y != -1) throw ArgumentError("dataset: labels must be +1 or -1");
    }
  }
  if (!features.allFinite()) throw ArgumentError("dataset: non-finite feature value");
}

LabeledDataset make_binary_dataset(const std::vector<Eigen::VectorXd>& rows, const std::vector<int>& labels,
                                   std::string source) {
  if (rows.size() != labels.size()) throw ArgumentError("make_binary_dataset: rows and labels differ in count");
  LabeledDataset d;
  d.source = std::move(source);
  const Eigen::Index dim = rows.empty() ? 0 : rows.front().size();
  d.features.resize(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) throw DimensionError("make_binary_dataset: rows differ in dimension");
    d.features.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    d.class_ids.push_back(labels[i] == 1 ? "+1" : "-1");
  }
  d.labels = labels;
  d.class_map = {{"+1", 1}, {"-1", -1}};
  d.validate();
  return d;
}

// CSV --------------------------------------------------------------------

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

LabeledDataset load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file '" + path.string() + "'", 0);

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_csv_line(line);
      break;
    }
  }
  if (header.empty()) throw ParseError("dataset file '" + path.string() + "' has no header row", line_no);

  auto column_of = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError("column '" + name + "' not found in header", line_no);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t label_col = column_of(schema.label_column);
  std::vector<std::size_t> feature_cols;
  std::vector<std::string> feature_names;
  if (schema.feature_columns.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c == label_col) continue;
      feature_cols.push_back(c);
      feature_names.push_back(header[c]);
    }
  } else {
    for (const auto& name : schema.feature_columns) {
      feature_cols.push_back(column_of(name));
      feature_names.push_back(name);
    }
  }

  std::vector<std::vector<double>> rows;
  std::vector<std::string> classes;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, found " + std::to_string(cells.size()),
                       line_no);
    }
    std::vector<double> values;
    values.reserve(feature_cols.size());
    for (std::size_t c : feature_cols) {
      const std::string& cell = cells[c];
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v)) {
        throw ParseError("non-numeric value '" + cell + "' in column '" + header[c] + "'", line_no);
      }
      values.push_back(v);
    }
    const std::string& cls = cells[label_col];
    if (cls.empty()) throw ParseError("empty class label", line_no);
    if (!schema.allowed_classes.empty() &&
        std::find(schema.allowed_classes.begin(), schema.allowed_classes.end(), cls) == schema.allowed_classes.end()) {
      throw ParseError("unknown class label '" + cls + "'", line_no);
    }
    rows.push_back(std::move(values));
    classes.push_back(cls);
  }

  LabeledDataset d;
  d.features.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(feature_cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < feature_cols.size(); ++c) {
      d.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  d.class_ids = std::move(classes);
  d.feature_names = std::move(feature_names);
  d.source = path.stem().string();
  return d;
}

std::filesystem::path bundled_data_dir() {
  if (const char* env = std::getenv("CHC_DATA_DIR"); env && *env) return env;
  return CHC_DEFAULT_DATA_DIR;
}

LabeledDataset load_dataset(const std::string& name_or_path) {
  if (name_or_path == "iris" || name_or_path == "wine") {
    LabeledDataset d = load_csv(bundled_data_dir() / (name_or_path + ".csv"), CsvSchema{{}, "class", {"1", "2", "3"}});
    d.source = name_or_path;
    return d;
  }
  return load_csv(name_or_path);
}

// Selection --------------------------------------------------------------

LabeledDataset select_classes(const LabeledDataset& data, const std::string& class_a, const std::string& class_b) {
  if (class_a == class_b) throw ArgumentError("select_classes: the two classes must differ");
  if (data.class_ids.size() != static_cast<std::size_t>(data.size())) {
    throw ArgumentError("select_classes: dataset carries no class ids");
  }
  std::vector<Eigen::Index> rows;
  bool seen_a = false;
  bool seen_b = false;
  for (std::size_t i = 0; i < data.class_ids.size(); ++i) {
    const auto& c = data.class_ids[i];
    seen_a = seen_a || c == class_a;
    seen_b = seen_b || c == class_b;
    if (c == class_a || c == class_b) rows.push_back(static_cast<Eigen::Index>(i));
  }
  if (!seen_a) throw ArgumentError("select_classes: unknown class '" + class_a + "'");
  if (!seen_b) throw ArgumentError("select_classes: unknown class '" + class_b + "'");
  LabeledDataset out = data.subset(rows);
  out.labels.clear();
  for (const auto& c : out.class_ids) out.labels.push_back(c == class_a ? +1 : -1);
  out.class_map = {{class_a, +1}, {class_b, -1}};
  return out;
}

LabeledDataset select_features(const LabeledDataset& data, const std::vector<Eigen::Index>& indices) {
  if (indices.empty()) throw ArgumentError("select_features: no features selected");
  std::set<Eigen::Index> seen;
  for (Eigen::Index i : indices) {
    if (i < 0 || i >= data.dimension()) {
      throw ArgumentError("select_features: index " + std::to_string(i) + " out of range for " +
                          std::to_string(data.dimension()) + " features");
    }
    if (!seen.insert(i).second) throw ArgumentError("select_features: duplicate index " + std::to_string(i));
  }
  LabeledDataset out = data;
  out.features.resize(data.size(), static_cast<Eigen::Index>(indices.size()));
  out.feature_names.clear();
  for (std::size_t c = 0; c < indices.size(); ++c) {
    out.features.col(static_cast<Eigen::Index>(c)) = data.features.col(indices[c]);
    if (static_cast<std::size_t>(indices[c]) < data.feature_names.size()) {
      out.feature_names.push_back(data.feature_names[static_cast<std::size_t>(indices[c])]);
    }
  }
  return out;
}

// Transforms -------------------------------------------------------------

StandardizeResult standardize(const LabeledDataset& train, const LabeledDataset& test) {
  if (train.size() == 0) throw ArgumentError("standardize: empty training set");
  if (test.dimension() != train.dimension()) throw DimensionError("standardize: train and test differ in dimension");
  const Eigen::RowVectorXd mean = train.features.colwise().mean();
  const Eigen::RowVectorXd sd =
      ((train.features.rowwise() - mean).array().square().colwise().sum() / static_cast<double>(train.size())).sqrt();

  std::vector<Eigen::Index> kept;
  StandardizeResult out;
  for (Eigen::Index c = 0; c < train.dimension(); ++c) {
    if (sd[c] > 1e-12 * std::max(1.0, std::abs(mean[c]))) {
      kept.push_back(c);
    } else {
      out.dropped.push_back(c);
      std::clog << "warning: standardize drops zero-variance feature " << c << "\n";
    }
  }
  if (kept.empty()) throw ArgumentError("standardize: every feature has zero variance");

  auto transform = [&](const LabeledDataset& d) {
    LabeledDataset t = out.dropped.empty() ? d : select_features(d, kept);
    for (std::size_t k = 0; k < kept.size(); ++k) {
      const auto c = static_cast<Eigen::Index>(k);
      t.features.col(c) = (t.features.col(c).array() - mean[kept[k]]) / sd[kept[k]];
    }
    return t;
  };
  out.train = transform(train);
  out.test = transform(test);
  out.mean.resize(static_cast<Eigen::Index>(kept.size()));
  out.scale.resize(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    out.mean[static_cast<Eigen::Index>(k)] = mean[kept[k]];
    out.scale[static_cast<Eigen::Index>(k)] = sd[kept[k]];
  }
  return out;
}

PcaResult pca_project(const LabeledDataset& train, const LabeledDataset& test, Eigen::Index k) {
  const Eigen::Index n = train.dimension();
  if (k < 1 || k > n) throw ArgumentError("pca_project: k = " + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]");
  if (train.size() < k) throw ArgumentError("pca_project: fewer training rows than components");
  if (test.dimension() != n) throw DimensionError("pca_project: train and test differ in dimension");

  PcaResult out;
  out.mean = train.features.colwise().mean().transpose();
  const Eigen::MatrixXd centered = train.features.rowwise() - out.mean.transpose();
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(train.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw ContractError("pca_project: eigen-decomposition failed");

  const Eigen::VectorXd values = eig.eigenvalues().reverse();  // descending
  const Eigen::MatrixXd vectors = eig.eigenvectors().rowwise().reverse();
  const double top = std::max(values[0], 0.0);
  const auto rank = static_cast<Eigen::Index>((values.array() > 1e-12 * std::max(top, 1e-300)).count());
  if (rank < k) {
    throw ArgumentError("pca_project: covariance has rank " + std::to_string(rank) + ", cannot extract " +
                        std::to_string(k) + " components");
  }
  out.components = vectors.leftCols(k);
  for (Eigen::Index c = 0; c < k; ++c) {
    Eigen::Index arg = 0;
    out.components.col(c).cwiseAbs().maxCoeff(&arg);
    if (out.components(arg, c) < 0) out.components.col(c) *= -1.0;
  }
  out.explained_variance_ratio = values.head(k) / values.cwiseMax(0.0).sum();

  auto project = [&](const LabeledDataset& d) {
    LabeledDataset t = d;
    t.features = (d.features.rowwise() - out.mean.transpose()) * out.components;
    t.feature_names.clear();
    for (Eigen::Index c = 0; c < k; ++c) t.feature_names.push_back("pc" + std::to_string(c + 1));
    return t;
  };
  out.train = project(train);
  out.test = project(test);
  return out;
}

LabeledDataset unit_normalize(const LabeledDataset& data) {
  LabeledDataset out = data;
  for (Eigen::Index r = 0; r < out.size(); ++r) {
    const double norm = out.features.row(r).norm();
    if (!(norm > 0)) throw ArgumentError("unit_normalize: row " + std::to_string(r) + " has zero norm");
    out.features.row(r) /= norm;
  }
  return out;
}

// Splitting --------------------------------------------------------------

std::pair<LabeledDataset, LabeledDataset> train_test_split(const LabeledDataset& data, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw ArgumentError("train_test_split: train_fraction must lie in (0, 1)");
  }
  std::mt19937_64 rng(spec.seed);
  std::vector<Eigen::Index> train_rows;
  std::vector<Eigen::Index> test_rows;

  auto split_group = [&](std::vector<Eigen::Index> rows, const std::string& what) {
    std::shuffle(rows.begin(), rows.end(), rng);
    const auto n_train = static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(rows.size())));
    if (n_train < 1 || n_train >= rows.size()) {
      throw ArgumentError("train_test_split: cannot split " + std::to_string(rows.size()) + " samples" + what +
                          " at fraction " + std::to_string(spec.train_fraction));
    }
    train_rows.insert(train_rows.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_train));
    test_rows.insert(test_rows.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_train), rows.end());
  };

  if (spec.stratified) {
    // Group by label when binary, else by class id; groups in first-seen order.
    std::vector<std::string> keys;
    std::vector<std::vector<Eigen::Index>> groups;
    for (Eigen::Index i = 0; i < data.size(); ++i) {
      const auto u = static_cast<std::size_t>(i);
      std::string key = data.is_binary() ? std::to_string(data.labels[u]) : data.class_ids.at(u);
      const auto it = std::find(keys.begin(), keys.end(), key);
      if (it == keys.end()) {
        keys.push_back(std::move(key));
        groups.push_back({i});
      } else {
        groups[static_cast<std::size_t>(it - keys.begin())].push_back(i);
      }
    }
    for (std::size_t g = 0; g < groups.size(); ++g) split_group(groups[g], " of class " + keys[g]);
  } else {
    std::vector<Eigen::Index> rows(static_cast<std::size_t>(data.size()));
    std::iota(rows.begin(), rows.end(), Eigen::Index{0});
    split_group(std::move(rows), "");
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());
  return {data.subset(train_rows), data.subset(test_rows)};
}

// Training-point search ------------------------------------------------------

namespace {

using Quad = std::array<Eigen::Index, 4>;  // plus0 < plus1, minus0 < minus1

double chc_accuracy(const LabeledDataset& data, const EncodedPairSet& pairs) {
  const ClassifierConfig config;
  std::size_t correct = 0;
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    if (evaluate_chc(pairs, data.row(i), config).label == data.labels[static_cast<std::size_t>(i)]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace

TrainingQuadruple select_training_quadruple(const LabeledDataset& train, std::size_t n_combos, std::uint64_t seed) {
  if (!train.is_binary()) throw ArgumentError("select_training_quadruple: training set needs +-1 labels");
  if (n_combos < 1) throw ArgumentError("select_training_quadruple: n_combos must be >= 1");
  std::vector<Eigen::Index> plus;
  std::vector<Eigen::Index> minus;
  for (std::size_t i = 0; i < train.labels.size(); ++i) {
    (train.labels[i] == 1 ? plus : minus).push_back(static_cast<Eigen::Index>(i));
  }
  if (plus.size() < 2 || minus.size() < 2) {
    throw ArgumentError("select_training_quadruple: need at least 2 training samples per class");
  }

  const double available = (static_cast<double>(plus.size()) * static_cast<double>(plus.size() - 1) / 2.0) *
                           (static_cast<double>(minus.size()) * static_cast<double>(minus.size() - 1) / 2.0);
  std::vector<Quad> candidates;
  if (available <= static_cast<double>(n_combos)) {
    for (std::size_t a = 0; a < plus.size(); ++a)
      for (std::size_t b = a + 1; b < plus.size(); ++b)
        for (std::size_t c = 0; c < minus.size(); ++c)
          for (std::size_t d = c + 1; d < minus.size(); ++d) candidates.push_back({plus[a], plus[b], minus[c], minus[d]});
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_plus(0, plus.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_minus(0, minus.size() - 1);
    auto draw_two = [&](auto& dist, const std::vector<Eigen::Index>& pool) {
      std::size_t a = dist(rng);
      std::size_t b = dist(rng);
      while (b == a) b = dist(rng);
      return std::pair{std::min(pool[a], pool[b]), std::max(pool[a], pool[b])};
    };
    std::set<Quad> seen;
    while (candidates.size() < n_combos) {
      const auto [p0, p1] = draw_two(pick_plus, plus);
      const auto [m0, m1] = draw_two(pick_minus, minus);
      const Quad q{p0, p1, m0, m1};
      if (seen.insert(q).second) candidates.push_back(q);
    }
  }

  TrainingQuadruple best;
  best.train_accuracy = -1.0;
  best.combinations_evaluated = candidates.size();
  for (const Quad& q : candidates) {
    const EncodedPairSet pairs =
        make_pair_set({train.row(q[0]), train.row(q[1])}, {train.row(q[2]), train.row(q[3])}, seed,
                      PairWeighting::uniform, /*shuffle=*/false);
    const double acc = chc_accuracy(train, pairs);
    if (acc > best.train_accuracy) {
      best.train_accuracy = acc;
      best.plus = {q[0], q[1]};
      best.minus = {q[2], q[3]};
    }
  }
  return best;
}

// Pipelines --------------------------------------------------------------

PipelineOptions canonical_pipeline(const std::string& dataset) {
  if (dataset == "iris") return {{1, 2}, true, 0};
  if (dataset == "wine") return {{}, false, 2};
  return {};
}

std::pair<LabeledDataset, LabeledDataset> apply_pipeline(const LabeledDataset& train, const LabeledDataset& test,
                                                         const PipelineOptions& options) {
  LabeledDataset tr = train;
  LabeledDataset te = test;
  if (!options.features.empty()) {
    tr = select_features(tr, options.features);
    te = select_features(te, options.features);
  }
  if (options.standardize) {
    auto s = standardize(tr, te);
    tr = std::move(s.train);
    te = std::move(s.test);
  }
  if (options.pca_components > 0) {
    auto p = pca_project(tr, te, options.pca_components);
    tr = std::move(p.train);
    te = std::move(p.test);
  }
  return {unit_normalize(tr), unit_normalize(te)};
}

}  // namespace chc
