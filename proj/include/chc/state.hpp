#pragma once

// Dense statevector and the few primitives the classifiers and entanglement
// measures are built from. Qubit 0 is the most significant bit of the basis
// index; registers are listed most-significant first.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chc/errors.hpp"

namespace chc {

template <typename Real>
using BasicRealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

template <typename Real>
using BasicAmplitudes = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using BasicGate = Eigen::Matrix<std::complex<Real>, 2, 2>;

using RealVector = BasicRealVector<double>;
using Amplitudes = BasicAmplitudes<double>;
using Gate = BasicGate<double>;

/// Deviation of the squared norm above which construction fails instead of renormalizing.
template <typename Real>
constexpr Real norm_tolerance() {
  if constexpr (sizeof(Real) >= sizeof(double)) {
    return Real(1e-9);
  } else {
    return Real(1e-4);
  }
}

/// Smallest q with 2^q >= n (n >= 1).
inline int ceil_log2(std::size_t n) {
  int q = 0;
  while ((std::size_t{1} << q) < n) ++q;
  return q;
}

inline bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

struct Register {
  std::string name;
  int qubits = 0;

  bool operator==(const Register&) const = default;
};

using Layout = std::vector<Register>;

template <typename Real>
class BasicStateVector {
 public:
  using Scalar = std::complex<Real>;
  using AmplitudeVector = BasicAmplitudes<Real>;

  /// Validates the layout against the length and the norm. A squared-norm
  /// deviation below norm_tolerance() is renormalized away; anything larger throws.
  BasicStateVector(AmplitudeVector amplitudes, Layout layout)
      : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
    const auto len = static_cast<std::size_t>(amplitudes_.size());
    if (!is_power_of_two(len)) {
      throw DimensionError("state length " + std::to_string(len) + " is not a power of two");
    }
    int total = 0;
    for (std::size_t r = 0; r < layout_.size(); ++r) {
      if (layout_[r].qubits < 0) throw LayoutError("register '" + layout_[r].name + "' has negative size");
      for (std::size_t s = 0; s < r; ++s) {
        if (layout_[s].name == layout_[r].name) throw LayoutError("duplicate register '" + layout_[r].name + "'");
      }
      total += layout_[r].qubits;
    }
    if ((std::size_t{1} << total) != len) {
      throw LayoutError("layout describes " + std::to_string(total) + " qubits but state has length " +
                        std::to_string(len));
    }
    num_qubits_ = total;

    const Real norm2 = amplitudes_.squaredNorm();
    if (!std::isfinite(norm2) || std::abs(norm2 - Real(1)) > norm_tolerance<Real>()) {
      throw ContractError("state norm^2 = " + std::to_string(static_cast<double>(norm2)) + " deviates from 1");
    }
    if (norm2 != Real(1)) amplitudes_ /= std::sqrt(norm2);
  }

  /// Single register named `name` spanning the whole state.
  static BasicStateVector single(AmplitudeVector amplitudes, std::string name = "q") {
    const int q = ceil_log2(static_cast<std::size_t>(std::max<Eigen::Index>(amplitudes.size(), 1)));
    return BasicStateVector(std::move(amplitudes), Layout{{std::move(name), q}});
  }

  const AmplitudeVector& amplitudes() const { return amplitudes_; }
  const Scalar& operator[](Eigen::Index i) const { return amplitudes_[i]; }
  const Layout& layout() const { return layout_; }
  int num_qubits() const { return num_qubits_; }
  Eigen::Index dimension() const { return amplitudes_.size(); }

  bool has_register(std::string_view name) const {
    return std::any_of(layout_.begin(), layout_.end(), [&](const Register& r) { return r.name == name; });
  }

  /// Index of the first (most significant) qubit of register `name`.
  int qubit_offset(std::string_view name) const {
    int offset = 0;
    for (const auto& r : layout_) {
      if (r.name == name) return offset;
      offset += r.qubits;
    }
    throw LayoutError("state has no register '" + std::string(name) + "'");
  }

  int register_size(std::string_view name) const {
    for (const auto& r : layout_) {
      if (r.name == name) return r.qubits;
    }
    throw LayoutError("state has no register '" + std::string(name) + "'");
  }

 private:
  AmplitudeVector amplitudes_;
  Layout layout_;
  int num_qubits_ = 0;
};

using StateVector = BasicStateVector<double>;

template <typename Real>
class BasicDensityMatrix2x2 {
 public:
  using Matrix = BasicGate<Real>;

  explicit BasicDensityMatrix2x2(const Matrix& entries) : entries_(entries) {
    const Real tol = sizeof(Real) >= sizeof(double) ? Real(1e-12) : Real(1e-5);
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > tol) {
      throw ContractError("density matrix is not Hermitian");
    }
    if (std::abs(entries_.trace() - std::complex<Real>(1)) > tol) {
      throw ContractError("density matrix trace deviates from 1");
    }
    // Eigenvalues of a Hermitian 2x2 with unit trace: (1 +- sqrt((a-d)^2 + 4|b|^2)) / 2.
    const Real a = entries_(0, 0).real();
    const Real d = entries_(1, 1).real();
    const Real disc = std::sqrt((a - d) * (a - d) + 4 * std::norm(entries_(0, 1)));
    if ((1 - disc) / 2 < -tol || (1 + disc) / 2 > 1 + tol) {
      throw ContractError("density matrix has eigenvalues outside [0, 1]");
    }
  }

  const Matrix& entries() const { return entries_; }
  std::complex<Real> operator()(int r, int c) const { return entries_(r, c); }

 private:
  Matrix entries_;
};

using DensityMatrix2x2 = BasicDensityMatrix2x2<double>;

struct MeasurementRecord {
  int qubit_index = 0;
  double p0 = 0.0;
  double p1 = 0.0;
  std::optional<std::int64_t> shots;
  std::optional<std::int64_t> counts0;
  std::optional<std::int64_t> counts1;
  std::optional<std::uint64_t> rng_seed;

  bool operator==(const MeasurementRecord&) const = default;

  /// <sigma_z> estimate: exact when no shots were taken, (c0 - c1) / shots otherwise.
  double z_expectation() const {
    if (shots && counts0 && counts1) {
      return static_cast<double>(*counts0 - *counts1) / static_cast<double>(*shots);
    }
    return p0 - p1;
  }
};

// Gates ------------------------------------------------------------------

template <typename Real = double>
BasicGate<Real> hadamard() {
  const Real s = Real(1) / std::sqrt(Real(2));
  BasicGate<Real> h;
  h << s, s, s, -s;
  return h;
}

/// R_z(phi) = diag(e^{-i phi/2}, e^{i phi/2}).
template <typename Real = double>
BasicGate<Real> rz(Real phi) {
  BasicGate<Real> g = BasicGate<Real>::Zero();
  g(0, 0) = std::polar(Real(1), -phi / 2);
  g(1, 1) = std::polar(Real(1), phi / 2);
  return g;
}

/// R_y(theta) = [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]].
template <typename Real = double>
BasicGate<Real> ry(Real theta) {
  const Real c = std::cos(theta / 2);
  const Real s = std::sin(theta / 2);
  BasicGate<Real> g;
  g << c, -s, s, c;
  return g;
}

template <typename Real = double>
BasicGate<Real> pauli_x() {
  BasicGate<Real> g;
  g << 0, 1, 1, 0;
  return g;
}

// Primitives -------------------------------------------------------------

template <typename DerivedA, typename DerivedB>
auto inner_product(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) {
    throw DimensionError("inner_product: lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  return a.dot(b);  // Eigen's dot conjugates the left operand.
}

template <typename Real>
std::complex<Real> inner_product(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b) {
  return inner_product(a.amplitudes(), b.amplitudes());
}

namespace detail {

template <typename Real>
void check_qubit(const BasicStateVector<Real>& state, int k) {
  if (k < 0 || k >= state.num_qubits()) {
    throw ArgumentError("qubit index " + std::to_string(k) + " out of range for " +
                        std::to_string(state.num_qubits()) + "-qubit state");
  }
}

/// Bit mask of qubit k in the basis index (qubit 0 is the MSB).
template <typename Real>
Eigen::Index qubit_mask(const BasicStateVector<Real>& state, int k) {
  return Eigen::Index{1} << (state.num_qubits() - 1 - k);
}

}  // namespace detail

/// Tr_{all but k} |psi><psi|.
template <typename Real>
BasicDensityMatrix2x2<Real> partial_trace_single_qubit(const BasicStateVector<Real>& state, int k) {
  detail::check_qubit(state, k);
  const Eigen::Index mask = detail::qubit_mask(state, k);
  const auto& psi = state.amplitudes();
  Real r00 = 0;
  Real r11 = 0;
  std::complex<Real> r01 = 0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (i & mask) continue;
    const auto a0 = psi[i];
    const auto a1 = psi[i | mask];
    r00 += std::norm(a0);
    r11 += std::norm(a1);
    r01 += a0 * std::conj(a1);
  }
  typename BasicDensityMatrix2x2<Real>::Matrix rho;
  rho << r00, r01, std::conj(r01), r11;
  return BasicDensityMatrix2x2<Real>(rho);
}

/// Tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
template <typename Real>
Real purity(const BasicDensityMatrix2x2<Real>& rho) {
  return rho.entries().cwiseAbs2().sum();
}

template <typename Real>
BasicStateVector<Real> apply_single_qubit_gate(const BasicStateVector<Real>& state, int k, const BasicGate<Real>& gate) {
  detail::check_qubit(state, k);
  const Real tol = sizeof(Real) >= sizeof(double) ? Real(1e-10) : Real(1e-5);
  if ((gate.adjoint() * gate - BasicGate<Real>::Identity()).cwiseAbs().maxCoeff() > tol) {
    throw ContractError("apply_single_qubit_gate: gate is not unitary");
  }
  const Eigen::Index mask = detail::qubit_mask(state, k);
  typename BasicStateVector<Real>::AmplitudeVector out = state.amplitudes();
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (i & mask) continue;
    const auto a0 = out[i];
    const auto a1 = out[i | mask];
    out[i] = gate(0, 0) * a0 + gate(0, 1) * a1;
    out[i | mask] = gate(1, 0) * a0 + gate(1, 1) * a1;
  }
  return BasicStateVector<Real>(std::move(out), state.layout());
}

template <typename Real>
MeasurementRecord measure_qubit_probabilities(const BasicStateVector<Real>& state, int k) {
  detail::check_qubit(state, k);
  const Eigen::Index mask = detail::qubit_mask(state, k);
  const auto& psi = state.amplitudes();
  double p0 = 0;
  double p1 = 0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    (i & mask ? p1 : p0) += static_cast<double>(std::norm(psi[i]));
  }
  const double total = p0 + p1;
  MeasurementRecord rec;
  rec.qubit_index = k;
  rec.p0 = std::clamp(p0 / total, 0.0, 1.0);
  rec.p1 = 1.0 - rec.p0;
  return rec;
}

/// Draws counts0 ~ Binomial(shots, p0) from a generator seeded with `seed` only.
template <typename Real>
MeasurementRecord sample_measurements(const BasicStateVector<Real>& state, int k, std::int64_t shots,
                                      std::uint64_t seed) {
  if (shots < 1) throw ArgumentError("sample_measurements: shots must be >= 1");
  MeasurementRecord rec = measure_qubit_probabilities(state, k);
  std::mt19937_64 rng(seed);
  std::binomial_distribution<std::int64_t> draw(shots, rec.p0);
  const std::int64_t c0 = draw(rng);
  rec.shots = shots;
  rec.counts0 = c0;
  rec.counts1 = shots - c0;
  rec.rng_seed = seed;
  return rec;
}

}  // namespace chc
