#pragma once

// Hadamard-test classifier (HTC), its generalized interference circuit, and the
// compact Hadamard classifier (CHC) built on compact amplitude encoding.
//
// HTC state layout:  ancilla(1) | data(ceil log2 N) | label(1) | index(ceil log2 M)
// CHC state layout:  ancilla(1) | data(ceil log2 N) | index(ceil log2 #registers)
//
// The interference circuits put the relative phase e^{-i phi} on the ancilla |1>
// (test) branch, giving <sigma_z> = sum_j b_j (cos phi Re k_j - sin phi Im k_j).

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chc/dataset.hpp"
#include "chc/encoders.hpp"
#include "chc/state.hpp"

namespace chc {

enum class EvaluationKind { exact, analytic, sampled };

struct EvaluationMode {
  EvaluationKind kind = EvaluationKind::exact;
  std::int64_t shots = 0;
  std::uint64_t seed = 0;

  static EvaluationMode exact() { return {}; }
  static EvaluationMode analytic() { return {EvaluationKind::analytic, 0, 0}; }
  static EvaluationMode sampled(std::int64_t shots, std::uint64_t seed) {
    return {EvaluationKind::sampled, shots, seed};
  }
  std::string name() const;
};

struct ClassifierConfig {
  double phi = std::numbers::pi / 4;
  double theta0 = std::numbers::pi / 2;
  double theta1 = -std::numbers::pi / 2;
  std::optional<std::vector<double>> weights;  // nullopt: uniform (HTC) / the pair set's own b_j (CHC)
  EvaluationMode mode;
};

struct ClassifierOutcome {
  double score = 0.0;
  int label = +1;
  EvaluationMode mode;
  std::optional<double> ancilla_p0;
};

/// a_j = 1/M.
std::vector<double> uniform_weights(std::size_t count);

// HTC --------------------------------------------------------------------

/// (1/sqrt2) sum_j sqrt(a_j) (|0>|x_j> + |1>|x~>) |y_j> |j>, with y = +1 -> |0>, -1 -> |1>.
StateVector build_htc_state(const LabeledDataset& train, const RealVector& test, std::span<const double> weights);
StateVector build_htc_state(const LabeledDataset& train, const RealVector& test);

/// <psi| H^(a) sigma_z^(a) sigma_z^(l) H^(a) |psi>.
double htc_score(const StateVector& state);

/// HTC state with the ancilla prepared by R_z R_y(theta0) instead of H (phase e^{-i phi} on |1>).
StateVector build_generalized_state(const LabeledDataset& train, const RealVector& test,
                                    std::span<const double> weights, double theta0, double phi);

/// Builds the generalized state, applies R_y(theta1) to the ancilla and
/// returns <sigma_z^(a) sigma_z^(l)> from the statevector.
double generalized_expectation(const LabeledDataset& train, const RealVector& test, std::span<const double> weights,
                               double theta0, double phi, double theta1);

// CHC --------------------------------------------------------------------

/// (1/sqrt2) sum_j sqrt(b_j) (|0>|x_j>_c + e^{-i phi}|1>|x~>) |j>.
StateVector build_chc_state(const EncodedPairSet& pairs, const RealVector& test, double phi);

/// Applies H to the ancilla and returns Pr(0) - Pr(1).
double chc_expectation(const StateVector& state);

/// Kernel sum over the individual training vectors; at phi = pi/4 with full
/// pairs this is (1/2) sum_j b'_j y_j <x~|x_j>.
double chc_score_analytic(const EncodedPairSet& pairs, const RealVector& test, double phi);

/// phi with tan(phi) = M- / M+, in [0, pi/2].
double imbalance_phase(std::size_t m_plus, std::size_t m_minus);

/// Sign rule with score == 0 -> +1.
int classify(double score);

/// Index-free classifier: j ~ a_j, then sigma_x on the (1 + data)-qubit state
/// (|0>|x_j>_c + e^{-i phi}|1>|x~>)/sqrt2.
ClassifierOutcome minimal_classifier(const EncodedPairSet& pairs, const RealVector& test,
                                     std::span<const double> weights, double phi, const EvaluationMode& mode);

ClassifierOutcome evaluate_chc(const EncodedPairSet& pairs, const RealVector& test, const ClassifierConfig& config);
ClassifierOutcome evaluate_htc(const LabeledDataset& train, const RealVector& test, const ClassifierConfig& config);

}  // namespace chc
