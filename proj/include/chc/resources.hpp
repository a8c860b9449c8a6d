#pragma once

// Analytic gate-count model for state preparation. A uniformly controlled
// rotation with c control qubits is charged 2^c controlled primitives; this is
// a counting model, not a synthesis result.

#include <cstdint>
#include <string>

namespace chc {

enum class ClassifierMethod { htc, chc };

struct GateCountEstimate {
  ClassifierMethod method = ClassifierMethod::htc;
  std::int64_t training_size = 0;   // M
  std::int64_t feature_dim = 0;     // N
  double alpha = 0.5;               // fraction of +1 data (HTC only)
  std::int64_t data_encoding_ops = 0;
  int controls = 0;                 // index qubits controlling each data-encoding op
  std::int64_t controlled_primitive_count = 0;
  std::int64_t label_encoding_ops = 0;
  int index_qubits = 0;
  int total_qubits = 0;

  /// Data-encoding primitives plus label operations.
  std::int64_t total_ops() const { return controlled_primitive_count + label_encoding_ops; }
};

std::string to_string(ClassifierMethod m);

/// alpha*M data are +1, beta*M = (1 - alpha)*M are -1.
GateCountEstimate count_htc(std::int64_t M, std::int64_t N, double alpha);

/// Odd M is padded with one unpaired register.
GateCountEstimate count_chc(std::int64_t M, std::int64_t N);

}  // namespace chc
