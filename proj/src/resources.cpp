#include "chc/resources.hpp"

#include <algorithm>
#include <cmath>

#include "chc/errors.hpp"
#include "chc/state.hpp"

namespace chc {

std::string to_string(ClassifierMethod m) { return m == ClassifierMethod::htc ? "htc" : "chc"; }

GateCountEstimate count_htc(std::int64_t M, std::int64_t N, double alpha) {
  if (M < 2) throw ArgumentError("count_htc: M must be >= 2");
  if (N < 1) throw ArgumentError("count_htc: N must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ArgumentError("count_htc: alpha must lie in [0, 1]");
  const double plus = alpha * static_cast<double>(M);
  if (std::abs(plus - std::round(plus)) > 1e-9) {
    throw ArgumentError("count_htc: alpha*M = " + std::to_string(plus) + " is not an integer class size");
  }
  const auto m_plus = static_cast<std::int64_t>(std::llround(plus));
  const std::int64_t m_minus = M - m_plus;

  GateCountEstimate e;
  e.method = ClassifierMethod::htc;
  e.training_size = M;
  e.feature_dim = N;
  e.alpha = alpha;
  e.index_qubits = ceil_log2(static_cast<std::size_t>(M));
  e.controls = e.index_qubits;
  e.data_encoding_ops = M;
  e.controlled_primitive_count = M * (std::int64_t{1} << e.controls);
  // |alpha - beta| M = |M+ - M-|.
  e.label_encoding_ops = std::max<std::int64_t>(1, std::llabs(m_plus - m_minus));
  e.total_qubits = 1 + ceil_log2(static_cast<std::size_t>(N)) + 1 + e.index_qubits;
  return e;
}

GateCountEstimate count_chc(std::int64_t M, std::int64_t N) {
  if (M < 2) throw ArgumentError("count_chc: M must be >= 2");
  if (N < 1) throw ArgumentError("count_chc: N must be >= 1");
  const std::int64_t registers = (M + 1) / 2;

  GateCountEstimate e;
  e.method = ClassifierMethod::chc;
  e.training_size = M;
  e.feature_dim = N;
  e.index_qubits = ceil_log2(static_cast<std::size_t>(registers));
  e.controls = e.index_qubits;
  e.data_encoding_ops = registers;
  e.controlled_primitive_count = registers * (std::int64_t{1} << e.controls);
  e.label_encoding_ops = 0;
  e.total_qubits = 1 + ceil_log2(static_cast<std::size_t>(N)) + e.index_qubits;
  return e;
}

}  // namespace chc
