#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chc/dataset.hpp"
#include "chc/state.hpp"

namespace chc {

enum class EntanglementMeasure { meyer_wallach, geometric };

std::string to_string(EntanglementMeasure m);
EntanglementMeasure parse_measure(const std::string& name);

/// Normalization of the product state in the geometric measure.
enum class ProductNormalization {
  unit_norm,   ///< min ||psi - phi|| over unit phi: sqrt(2 - 2 Lambda)
  free_scale,  ///< phi may be rescaled: sqrt(1 - Lambda^2)
};

struct EntanglementReport {
  EntanglementMeasure measure = EntanglementMeasure::meyer_wallach;
  double value = 0.0;
  std::vector<double> per_qubit_purities;  // meyer_wallach only
  double best_overlap = 0.0;               // geometric only: Lambda
  bool converged = true;
  int iterations = 0;
  int restarts_used = 0;
};

/// Q = 2 (1 - mean_k Tr[rho_k^2]).
EntanglementReport meyer_wallach(const StateVector& state);

struct GeometricOptions {
  double tol = 1e-10;
  int max_iters = 500;
  int restarts = 8;
  std::uint64_t seed = 0;
  ProductNormalization normalization = ProductNormalization::unit_norm;
};

/// Best rank-1 (product-state) approximation by alternating updates of one
/// local vector at a time, keeping the best of `restarts` random starts.
EntanglementReport geometric_measure(const StateVector& state, const GeometricOptions& options = {});

/// Lambda = max over unit product states |<phi|psi>| found by the same search,
/// returned with the per-qubit local vectors of the best start.
struct ProductApproximation {
  double overlap = 0.0;
  std::vector<Eigen::Vector2cd> factors;
  bool converged = false;
  int iterations = 0;
};
ProductApproximation best_product_approximation(const StateVector& state, const GeometricOptions& options = {});

// Entanglement difference survey ----------------------------------------

/// How features are scaled before encoding in the survey.
enum class ScalerScope {
  train_split,   ///< z-score with statistics of the training split
  full_dataset,  ///< z-score with statistics of the whole (all-class) dataset
  none,
};

struct SurveyOptions {
  std::pair<std::string, std::string> classes{"1", "2"};
  double train_fraction = 2.0 / 3.0;
  ScalerScope scaling = ScalerScope::train_split;
  double phi = 0.7853981633974483;  // pi/4
  GeometricOptions geometric;
};

struct DeltaRecord {
  std::string dataset;
  int m = 0;
  int samples_per_class = 1;  // M = 2^m
  int repetition = 0;
  std::uint64_t seed = 0;
  EntanglementMeasure measure = EntanglementMeasure::meyer_wallach;
  double q_htc = 0.0;
  double q_chc = 0.0;
  double delta = 0.0;
};

/// HTC final state: H applied to the ancilla of the HTC state.
StateVector htc_final_state(const LabeledDataset& train, const RealVector& test);
/// CHC final state: H applied to the ancilla of the CHC state, uniform b_j.
StateVector chc_final_state(const std::vector<RealVector>& plus, const std::vector<RealVector>& minus,
                            const RealVector& test, double phi);

/// One draw: seeded split of `data` (all classes; the configured pair is
/// selected), M = 2^m samples per class from the train split, one random
/// test-split point; returns Q_HTC - Q_CHC.
DeltaRecord entanglement_delta(const LabeledDataset& data, int m, EntanglementMeasure measure, std::uint64_t seed,
                               const SurveyOptions& options = {});

struct DeltaSummary {
  std::string dataset;
  int m = 0;
  int samples_per_class = 1;
  EntanglementMeasure measure = EntanglementMeasure::meyer_wallach;
  std::size_t count = 0;
  double mean = 0, std = 0, min = 0, q25 = 0, q50 = 0, q75 = 0, max = 0;
};

/// Sample std (n - 1) and linearly interpolated quartiles.
DeltaSummary summarize(const std::vector<DeltaRecord>& records);

struct SurveyResult {
  std::vector<DeltaRecord> records;
  std::vector<DeltaSummary> summaries;  // one per m, in m order
};

/// Records ordered by (m, repetition). Sub-seeds derive from (seed, m, repetition).
SurveyResult delta_survey(const LabeledDataset& data, const std::vector<int>& m_values, int repetitions,
                          EntanglementMeasure measure, std::uint64_t seed, const SurveyOptions& options = {});

}  // namespace chc
