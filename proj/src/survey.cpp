#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "chc/classifiers.hpp"
#include "chc/encoders.hpp"
#include "chc/entanglement.hpp"
#include "chc/parallel.hpp"

namespace chc {

StateVector htc_final_state(const LabeledDataset& train, const RealVector& test) {
  return apply_single_qubit_gate(build_htc_state(train, test), 0, hadamard());
}

StateVector chc_final_state(const std::vector<RealVector>& plus, const std::vector<RealVector>& minus,
                            const RealVector& test, double phi) {
  const EncodedPairSet pairs = make_pair_set(plus, minus, 0, PairWeighting::uniform, /*shuffle=*/false);
  return apply_single_qubit_gate(build_chc_state(pairs, test, phi), 0, hadamard());
}

namespace {

double measure_value(const StateVector& state, EntanglementMeasure measure, const GeometricOptions& geometric) {
  return measure == EntanglementMeasure::meyer_wallach ? meyer_wallach(state).value
                                                       : geometric_measure(state, geometric).value;
}

std::vector<Eigen::Index> rows_with_label(const LabeledDataset& data, int label) {
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < data.labels.size(); ++i) {
    if (data.labels[i] == label) rows.push_back(static_cast<Eigen::Index>(i));
  }
  return rows;
}

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

DeltaRecord entanglement_delta(const LabeledDataset& data, int m, EntanglementMeasure measure, std::uint64_t seed,
                               const SurveyOptions& options) {
  if (m < 0 || m > 20) throw ArgumentError("entanglement_delta: m out of range");
  const int per_class = 1 << m;

  LabeledDataset source = data;
  if (options.scaling == ScalerScope::full_dataset) source = standardize(data, data).train;
  const LabeledDataset two = select_classes(source, options.classes.first, options.classes.second);
  auto [train, test] = train_test_split(two, SplitSpec{options.train_fraction, derive_seed(seed, 1), true});
  if (options.scaling == ScalerScope::train_split) {
    auto scaled = standardize(train, test);
    train = std::move(scaled.train);
    test = std::move(scaled.test);
  }

  auto plus_rows = rows_with_label(train, +1);
  auto minus_rows = rows_with_label(train, -1);
  if (plus_rows.size() < static_cast<std::size_t>(per_class) || minus_rows.size() < static_cast<std::size_t>(per_class)) {
    throw ArgumentError("entanglement_delta: training split has " + std::to_string(plus_rows.size()) + "/" +
                        std::to_string(minus_rows.size()) + " samples per class, need " + std::to_string(per_class));
  }
  std::mt19937_64 rng(derive_seed(seed, 2));
  std::shuffle(plus_rows.begin(), plus_rows.end(), rng);
  std::shuffle(minus_rows.begin(), minus_rows.end(), rng);
  std::uniform_int_distribution<Eigen::Index> pick_test(0, test.size() - 1);
  const RealVector x_test = test.row(pick_test(rng));

  std::vector<RealVector> plus;
  std::vector<RealVector> minus;
  std::vector<Eigen::Index> htc_rows;
  for (int j = 0; j < per_class; ++j) {
    plus.push_back(train.row(plus_rows[static_cast<std::size_t>(j)]));
    htc_rows.push_back(plus_rows[static_cast<std::size_t>(j)]);
  }
  for (int j = 0; j < per_class; ++j) {
    minus.push_back(train.row(minus_rows[static_cast<std::size_t>(j)]));
    htc_rows.push_back(minus_rows[static_cast<std::size_t>(j)]);
  }
  const LabeledDataset htc_train = train.subset(htc_rows);

  GeometricOptions geometric = options.geometric;
  geometric.seed = derive_seed(seed, 3);

  DeltaRecord rec;
  rec.dataset = data.source;
  rec.m = m;
  rec.samples_per_class = per_class;
  rec.seed = seed;
  rec.measure = measure;
  rec.q_htc = measure_value(htc_final_state(htc_train, x_test), measure, geometric);
  rec.q_chc = measure_value(chc_final_state(plus, minus, x_test, options.phi), measure, geometric);
  rec.delta = rec.q_htc - rec.q_chc;
  return rec;
}

DeltaSummary summarize(const std::vector<DeltaRecord>& records) {
  if (records.empty()) throw ArgumentError("summarize: no records");
  DeltaSummary s;
  s.dataset = records.front().dataset;
  s.m = records.front().m;
  s.samples_per_class = records.front().samples_per_class;
  s.measure = records.front().measure;
  s.count = records.size();
  std::vector<double> d;
  d.reserve(records.size());
  for (const auto& r : records) d.push_back(r.delta);
  s.mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
  if (d.size() > 1) {
    double ss = 0;
    for (double v : d) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(d.size() - 1));
  }
  std::sort(d.begin(), d.end());
  s.min = d.front();
  s.max = d.back();
  s.q25 = quantile(d, 0.25);
  s.q50 = quantile(d, 0.50);
  s.q75 = quantile(d, 0.75);
  return s;
}

SurveyResult delta_survey(const LabeledDataset& data, const std::vector<int>& m_values, int repetitions,
                          EntanglementMeasure measure, std::uint64_t seed, const SurveyOptions& options) {
  if (repetitions < 1) throw ArgumentError("delta_survey: repetitions must be >= 1");
  for (int m : m_values) {
    if (m < 0 || m > 5) throw ArgumentError("delta_survey: m must lie in {0..5}, got " + std::to_string(m));
  }
  const auto reps = static_cast<std::size_t>(repetitions);
  SurveyResult result;
  result.records.resize(m_values.size() * reps);
  parallel_for(result.records.size(), [&](std::size_t job) {
    const int m = m_values[job / reps];
    const auto rep = static_cast<int>(job % reps);
    DeltaRecord rec = entanglement_delta(data, m, measure, derive_seed(seed, static_cast<std::uint64_t>(m), rep), options);
    rec.repetition = rep;
    result.records[job] = std::move(rec);
  });
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    std::vector<DeltaRecord> block(result.records.begin() + static_cast<std::ptrdiff_t>(i * reps),
                                   result.records.begin() + static_cast<std::ptrdiff_t>((i + 1) * reps));
    result.summaries.push_back(summarize(block));
  }
  return result;
}

}  // namespace chc
