#include "chc/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "chc/parallel.hpp"

namespace chc {

std::string to_string(EntanglementMeasure m) {
  return m == EntanglementMeasure::meyer_wallach ? "mw" : "geometric";
}

EntanglementMeasure parse_measure(const std::string& name) {
  if (name == "mw" || name == "meyer-wallach") return EntanglementMeasure::meyer_wallach;
  if (name == "geometric" || name == "g") return EntanglementMeasure::geometric;
  throw ArgumentError("unknown entanglement measure '" + name + "'");
}

EntanglementReport meyer_wallach(const StateVector& state) {
  const int n = state.num_qubits();
  if (n < 2) throw ArgumentError("meyer_wallach: needs at least 2 qubits, got " + std::to_string(n));
  EntanglementReport report;
  report.measure = EntanglementMeasure::meyer_wallach;
  report.per_qubit_purities.reserve(static_cast<std::size_t>(n));
  double sum = 0;
  for (int k = 0; k < n; ++k) {
    const double p = purity(partial_trace_single_qubit(state, k));
    report.per_qubit_purities.push_back(p);
    sum += p;
  }
  report.value = std::clamp(2.0 * (1.0 - sum / n), 0.0, 1.0);
  return report;
}

namespace {

using cd = std::complex<double>;

/// conj(u_first) x ... x conj(u_last), first factor most significant.
Eigen::VectorXcd conj_kron(const std::vector<Eigen::Vector2cd>& factors, std::size_t first, std::size_t last) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Ones(1);
  for (std::size_t l = first; l < last; ++l) {
    Eigen::VectorXcd next(out.size() * 2);
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      next[2 * i] = out[i] * std::conj(factors[l][0]);
      next[2 * i + 1] = out[i] * std::conj(factors[l][1]);
    }
    out = std::move(next);
  }
  return out;
}

/// Contracts psi with every local vector except mode k.
Eigen::Vector2cd contract_all_but(const Eigen::VectorXcd& psi, int n, const std::vector<Eigen::Vector2cd>& factors,
                                  int k) {
  const Eigen::VectorXcd left = conj_kron(factors, 0, static_cast<std::size_t>(k));
  const Eigen::VectorXcd right = conj_kron(factors, static_cast<std::size_t>(k) + 1, static_cast<std::size_t>(n));
  // Column c = 2 p + a, row r; psi index = c * |right| + r.
  Eigen::Map<const Eigen::MatrixXcd> view(psi.data(), right.size(), left.size() * 2);
  const Eigen::RowVectorXcd w = right.transpose() * view;
  Eigen::Vector2cd v = Eigen::Vector2cd::Zero();
  for (Eigen::Index p = 0; p < left.size(); ++p) {
    v[0] += left[p] * w[2 * p];
    v[1] += left[p] * w[2 * p + 1];
  }
  return v;
}

ProductApproximation single_start(const Eigen::VectorXcd& psi, int n, const GeometricOptions& options,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ProductApproximation run;
  run.factors.resize(static_cast<std::size_t>(n));
  for (auto& u : run.factors) {
    u = Eigen::Vector2cd(cd(normal(rng), normal(rng)), cd(normal(rng), normal(rng)));
    u.normalize();
  }
  double previous = -1.0;
  for (int sweep = 1; sweep <= options.max_iters; ++sweep) {
    double overlap = 0.0;
    for (int k = 0; k < n; ++k) {
      const Eigen::Vector2cd v = contract_all_but(psi, n, run.factors, k);
      overlap = v.norm();
      if (overlap > 0) run.factors[static_cast<std::size_t>(k)] = v / overlap;
    }
    run.overlap = overlap;
    run.iterations = sweep;
    if (std::abs(overlap - previous) < options.tol) {
      run.converged = true;
      break;
    }
    previous = overlap;
  }
  return run;
}

}  // namespace

ProductApproximation best_product_approximation(const StateVector& state, const GeometricOptions& options) {
  const int n = state.num_qubits();
  if (n < 2) throw ArgumentError("geometric_measure: needs at least 2 qubits, got " + std::to_string(n));
  if (options.restarts < 1 || options.max_iters < 1) {
    throw ArgumentError("geometric_measure: restarts and max_iters must be >= 1");
  }
  ProductApproximation best;
  best.overlap = -1.0;
  bool any_converged = false;
  for (int r = 0; r < options.restarts; ++r) {
    ProductApproximation run = single_start(state.amplitudes(), n, options, derive_seed(options.seed, 0x6d, r));
    any_converged = any_converged || run.converged;
    if (run.overlap > best.overlap) best = std::move(run);
  }
  best.overlap = std::min(best.overlap, 1.0);
  best.converged = any_converged;
  return best;
}

EntanglementReport geometric_measure(const StateVector& state, const GeometricOptions& options) {
  const ProductApproximation best = best_product_approximation(state, options);
  EntanglementReport report;
  report.measure = EntanglementMeasure::geometric;
  report.best_overlap = best.overlap;
  report.converged = best.converged;
  report.iterations = best.iterations;
  report.restarts_used = options.restarts;
  const double lambda = best.overlap;
  if (lambda >= 1.0 - options.tol) {
    report.value = 0.0;
  } else if (options.normalization == ProductNormalization::unit_norm) {
    report.value = std::sqrt(std::max(0.0, 2.0 - 2.0 * lambda));
  } else {
    report.value = std::sqrt(std::max(0.0, 1.0 - lambda * lambda));
  }
  return report;
}

}  // namespace chc
