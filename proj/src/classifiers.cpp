#include "chc/classifiers.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace chc {

namespace {

using cd = std::complex<double>;

void check_weights(std::span<const double> weights, std::size_t expected, const char* who) {
  if (weights.size() != expected) {
    throw ArgumentError(std::string(who) + ": " + std::to_string(weights.size()) + " weights for " +
                        std::to_string(expected) + " entries");
  }
  double total = 0;
  for (double w : weights) {
    if (!(w >= 0) || !std::isfinite(w)) throw ArgumentError(std::string(who) + ": weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ArgumentError(std::string(who) + ": weights sum to " + std::to_string(total) + ", expected 1");
  }
}

RealVector unit_padded(const RealVector& x, const char* who) {
  detail::check_encodable(x, who);
  RealVector p = pad_to_power_of_two(x);
  return p / p.norm();
}

void check_binary(const LabeledDataset& train, const char* who) {
  if (train.size() == 0) throw ArgumentError(std::string(who) + ": empty training set");
  if (train.labels.size() != static_cast<std::size_t>(train.size())) {
    throw ArgumentError(std::string(who) + ": training set needs one +-1 label per row");
  }
  for (int y : train.labels) {
    if (y != 1 && y != -1) throw ArgumentError(std::string(who) + ": labels must be +1 or -1");
  }
}

/// sum_j sqrt(a_j) (c0 |0>|x_j> + c1 |1>|x~>) |y_j> |j>.
StateVector build_interference_state(const LabeledDataset& train, const RealVector& test,
                                     std::span<const double> weights, cd c0, cd c1, const char* who) {
  check_binary(train, who);
  const auto m = static_cast<std::size_t>(train.size());
  check_weights(weights, m, who);

  const RealVector xt = unit_padded(test, who);
  const Eigen::Index dim = xt.size();
  if (pad_to_power_of_two(RealVector(train.row(0))).size() != dim) {
    throw DimensionError(std::string(who) + ": test dimension " + std::to_string(test.size()) +
                         " does not match training dimension " + std::to_string(train.dimension()));
  }
  const int data_qubits = ceil_log2(static_cast<std::size_t>(dim));
  const int index_qubits = ceil_log2(m);
  const Eigen::Index idx = Eigen::Index{1} << index_qubits;

  Amplitudes amps = Amplitudes::Zero(2 * dim * 2 * idx);
  auto at = [&](Eigen::Index a, Eigen::Index i, Eigen::Index l, Eigen::Index j) -> cd& {
    return amps[((a * dim + i) * 2 + l) * idx + j];
  };
  for (std::size_t j = 0; j < m; ++j) {
    const RealVector xj = unit_padded(train.row(static_cast<Eigen::Index>(j)), who);
    const Eigen::Index l = train.labels[j] == 1 ? 0 : 1;
    const double s = std::sqrt(weights[j]);
    const auto jj = static_cast<Eigen::Index>(j);
    for (Eigen::Index i = 0; i < dim; ++i) {
      at(0, i, l, jj) = s * c0 * xj[i];
      at(1, i, l, jj) = s * c1 * xt[i];
    }
  }
  return StateVector(std::move(amps), Layout{{"ancilla", 1}, {"data", data_qubits}, {"label", 1}, {"index", index_qubits}});
}

void require_ancilla(const StateVector& state, const char* who) {
  if (state.layout().empty() || state.layout().front().name != "ancilla" || state.layout().front().qubits != 1) {
    throw LayoutError(std::string(who) + ": expected a 1-qubit 'ancilla' register first");
  }
}

/// <sigma_z^(a) sigma_z^(l)> of a state (no gates applied).
double ancilla_label_parity(const StateVector& state) {
  const int n = state.num_qubits();
  const Eigen::Index amask = Eigen::Index{1} << (n - 1);
  const Eigen::Index lmask = Eigen::Index{1} << (n - 1 - state.qubit_offset("label"));
  double even = 0;
  double odd = 0;
  const auto& psi = state.amplitudes();
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const bool parity = ((i & amask) != 0) != ((i & lmask) != 0);
    (parity ? odd : even) += std::norm(psi[i]);
  }
  return even - odd;
}

void require_htc_layout(const StateVector& state, const char* who) {
  require_ancilla(state, who);
  if (!state.has_register("label") || state.register_size("label") != 1) {
    throw LayoutError(std::string(who) + ": expected a 1-qubit 'label' register");
  }
}

/// Weight, sign and trig factor of each training vector in the CHC kernel sum.
template <typename Fn>
void for_each_kernel_term(const EncodedPairSet& pairs, std::span<const double> weights, double phi, Fn&& fn) {
  const double cp = std::cos(phi);
  const double sp = std::sin(phi);
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const auto& p = pairs.pairs()[j];
    if (p.plus) fn(*p.plus, weights[j] * cp, +1);
    if (p.minus) fn(*p.minus, weights[j] * sp, -1);
  }
}

double kernel_sum(const EncodedPairSet& pairs, std::span<const double> weights, const RealVector& test, double phi) {
  const RealVector xt = unit_padded(test, "chc_score_analytic");
  if (xt.size() != pairs.dimension()) {
    throw DimensionError("chc_score_analytic: test dimension " + std::to_string(test.size()) +
                         " does not match training dimension " + std::to_string(pairs.dimension()));
  }
  double score = 0;
  for_each_kernel_term(pairs, weights, phi, [&](const RealVector& v, double coeff, int y) {
    const double norm = v.norm();
    score += y * coeff * norm * xt.dot(v / norm);
  });
  return score;
}

/// (|0>|x_j>_c + e^{-i phi}|1>|x~>)/sqrt2 with H applied to the ancilla.
StateVector interfered_register(const NormalizedPair& pair, const RealVector& xt, double phi) {
  const StateVector enc = compact_encode(pair);
  const Eigen::Index dim = enc.dimension();
  const cd phase = std::polar(1.0, -phi);
  Amplitudes amps(2 * dim);
  amps.head(dim) = enc.amplitudes() / std::sqrt(2.0);
  amps.tail(dim) = phase * xt.cast<cd>() / std::sqrt(2.0);
  StateVector psi(std::move(amps), Layout{{"ancilla", 1}, {"data", enc.num_qubits()}});
  return apply_single_qubit_gate(psi, 0, hadamard());
}

}  // namespace

std::string EvaluationMode::name() const {
  switch (kind) {
    case EvaluationKind::exact:
      return "exact";
    case EvaluationKind::analytic:
      return "analytic";
    case EvaluationKind::sampled:
      return "sampled";
  }
  return "unknown";
}

std::vector<double> uniform_weights(std::size_t count) {
  if (count == 0) throw ArgumentError("uniform_weights: count must be positive");
  return std::vector<double>(count, 1.0 / static_cast<double>(count));
}

StateVector build_htc_state(const LabeledDataset& train, const RealVector& test, std::span<const double> weights) {
  const double s = 1.0 / std::sqrt(2.0);
  return build_interference_state(train, test, weights, s, s, "build_htc_state");
}

StateVector build_htc_state(const LabeledDataset& train, const RealVector& test) {
  if (train.size() == 0) throw ArgumentError("build_htc_state: empty training set");
  return build_htc_state(train, test, uniform_weights(static_cast<std::size_t>(train.size())));
}

double htc_score(const StateVector& state) {
  require_htc_layout(state, "htc_score");
  return ancilla_label_parity(apply_single_qubit_gate(state, 0, hadamard()));
}

StateVector build_generalized_state(const LabeledDataset& train, const RealVector& test,
                                    std::span<const double> weights, double theta0, double phi) {
  // rz(-phi) leaves the test branch e^{-i phi} behind the training branch.
  const Eigen::Vector2cd ancilla = rz(-phi) * ry(theta0) * Eigen::Vector2cd(1.0, 0.0);
  return build_interference_state(train, test, weights, ancilla[0], ancilla[1], "build_generalized_state");
}

double generalized_expectation(const LabeledDataset& train, const RealVector& test, std::span<const double> weights,
                               double theta0, double phi, double theta1) {
  const StateVector psi = build_generalized_state(train, test, weights, theta0, phi);
  return ancilla_label_parity(apply_single_qubit_gate(psi, 0, ry(theta1)));
}

StateVector build_chc_state(const EncodedPairSet& pairs, const RealVector& test, double phi) {
  const RealVector xt = unit_padded(test, "build_chc_state");
  const Eigen::Index dim = pairs.dimension();
  if (xt.size() != dim) {
    throw DimensionError("build_chc_state: test dimension " + std::to_string(test.size()) +
                         " does not match training dimension " + std::to_string(dim));
  }
  const int data_qubits = ceil_log2(static_cast<std::size_t>(dim));
  const int index_qubits = ceil_log2(pairs.size());
  const Eigen::Index idx = Eigen::Index{1} << index_qubits;
  const cd phase = std::polar(1.0, -phi);

  Amplitudes amps = Amplitudes::Zero(2 * dim * idx);
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const StateVector enc = compact_encode(pairs.pairs()[j]);
    const double s = std::sqrt(pairs.weights()[j] / 2.0);
    const auto jj = static_cast<Eigen::Index>(j);
    for (Eigen::Index i = 0; i < dim; ++i) {
      amps[i * idx + jj] = s * enc[i];
      amps[(dim + i) * idx + jj] = s * phase * xt[i];
    }
  }
  return StateVector(std::move(amps), Layout{{"ancilla", 1}, {"data", data_qubits}, {"index", index_qubits}});
}

double chc_expectation(const StateVector& state) {
  require_ancilla(state, "chc_expectation");
  if (state.has_register("label")) throw LayoutError("chc_expectation: CHC states carry no label register");
  return measure_qubit_probabilities(apply_single_qubit_gate(state, 0, hadamard()), 0).z_expectation();
}

double chc_score_analytic(const EncodedPairSet& pairs, const RealVector& test, double phi) {
  return kernel_sum(pairs, pairs.weights(), test, phi);
}

double imbalance_phase(std::size_t m_plus, std::size_t m_minus) {
  if (m_plus == 0 && m_minus == 0) throw ArgumentError("imbalance_phase: both class counts are zero");
  return std::atan2(static_cast<double>(m_minus), static_cast<double>(m_plus));
}

int classify(double score) {
  if (std::isnan(score)) throw ContractError("classify: score is NaN");
  return score >= 0.0 ? +1 : -1;
}

ClassifierOutcome minimal_classifier(const EncodedPairSet& pairs, const RealVector& test,
                                     std::span<const double> weights, double phi, const EvaluationMode& mode) {
  check_weights(weights, pairs.size(), "minimal_classifier");
  const RealVector xt = unit_padded(test, "minimal_classifier");
  if (xt.size() != pairs.dimension()) {
    throw DimensionError("minimal_classifier: test dimension " + std::to_string(test.size()) +
                         " does not match training dimension " + std::to_string(pairs.dimension()));
  }

  ClassifierOutcome out;
  out.mode = mode;
  if (mode.kind == EvaluationKind::analytic) {
    out.score = kernel_sum(pairs, weights, test, phi);
    out.label = classify(out.score);
    return out;
  }

  std::vector<double> p0(pairs.size());
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    p0[j] = measure_qubit_probabilities(interfered_register(pairs.pairs()[j], xt, phi), 0).p0;
  }

  if (mode.kind == EvaluationKind::exact) {
    double mean_p0 = 0;
    for (std::size_t j = 0; j < pairs.size(); ++j) mean_p0 += weights[j] * p0[j];
    out.ancilla_p0 = mean_p0;
    out.score = 2 * mean_p0 - 1;
  } else {
    if (mode.shots < 1) throw ArgumentError("minimal_classifier: shots must be >= 1");
    std::mt19937_64 rng(mode.seed);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::int64_t zeros = 0;
    for (std::int64_t s = 0; s < mode.shots; ++s) {
      if (u(rng) < p0[pick(rng)]) ++zeros;
    }
    out.score = static_cast<double>(2 * zeros - mode.shots) / static_cast<double>(mode.shots);
  }
  out.label = classify(out.score);
  return out;
}

ClassifierOutcome evaluate_chc(const EncodedPairSet& pairs, const RealVector& test, const ClassifierConfig& config) {
  const EncodedPairSet weighted = config.weights ? pairs.with_weights(*config.weights) : pairs;
  ClassifierOutcome out;
  out.mode = config.mode;
  switch (config.mode.kind) {
    case EvaluationKind::analytic:
      out.score = chc_score_analytic(weighted, test, config.phi);
      break;
    case EvaluationKind::exact: {
      const auto final_state = apply_single_qubit_gate(build_chc_state(weighted, test, config.phi), 0, hadamard());
      const auto rec = measure_qubit_probabilities(final_state, 0);
      out.score = rec.z_expectation();
      out.ancilla_p0 = rec.p0;
      break;
    }
    case EvaluationKind::sampled: {
      const auto final_state = apply_single_qubit_gate(build_chc_state(weighted, test, config.phi), 0, hadamard());
      const auto rec = sample_measurements(final_state, 0, config.mode.shots, config.mode.seed);
      out.score = rec.z_expectation();
      break;
    }
  }
  out.label = classify(out.score);
  return out;
}

ClassifierOutcome evaluate_htc(const LabeledDataset& train, const RealVector& test, const ClassifierConfig& config) {
  check_binary(train, "evaluate_htc");
  const std::vector<double> weights = config.weights ? *config.weights : uniform_weights(static_cast<std::size_t>(train.size()));
  ClassifierOutcome out;
  out.mode = config.mode;
  switch (config.mode.kind) {
    case EvaluationKind::analytic: {
      check_weights(weights, static_cast<std::size_t>(train.size()), "evaluate_htc");
      const RealVector xt = unit_padded(test, "evaluate_htc");
      double score = 0;
      for (Eigen::Index j = 0; j < train.size(); ++j) {
        const RealVector xj = unit_padded(train.row(j), "evaluate_htc");
        if (xj.size() != xt.size()) throw DimensionError("evaluate_htc: test and training dimensions differ");
        score += weights[static_cast<std::size_t>(j)] * train.labels[static_cast<std::size_t>(j)] * xt.dot(xj);
      }
      out.score = score;
      break;
    }
    case EvaluationKind::exact:
      out.score = htc_score(build_htc_state(train, test, weights));
      break;
    case EvaluationKind::sampled: {
      if (config.mode.shots < 1) throw ArgumentError("evaluate_htc: shots must be >= 1");
      const double z = htc_score(build_htc_state(train, test, weights));
      std::mt19937_64 rng(config.mode.seed);
      std::binomial_distribution<std::int64_t> draw(config.mode.shots, std::clamp((1 + z) / 2, 0.0, 1.0));
      const std::int64_t even = draw(rng);
      out.score = static_cast<double>(2 * even - config.mode.shots) / static_cast<double>(config.mode.shots);
      break;
    }
  }
  out.label = classify(out.score);
  return out;
}

}  // namespace chc
