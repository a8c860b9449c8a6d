#pragma once

// Amplitude encoding of one real vector, and compact amplitude encoding (CAE)
// of a (+1, -1) pair into the real and imaginary parts of a single register.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "chc/errors.hpp"
#include "chc/state.hpp"

namespace chc {

template <typename Real>
BasicRealVector<Real> pad_to_power_of_two(const BasicRealVector<Real>& x) {
  if (x.size() < 1) throw ArgumentError("pad_to_power_of_two: empty vector");
  const auto dim = Eigen::Index{1} << ceil_log2(static_cast<std::size_t>(x.size()));
  if (dim == x.size()) return x;
  BasicRealVector<Real> out = BasicRealVector<Real>::Zero(dim);
  out.head(x.size()) = x;
  return out;
}

namespace detail {

template <typename Real>
void check_encodable(const BasicRealVector<Real>& x, const char* who) {
  if (x.size() < 1) throw ArgumentError(std::string(who) + ": empty vector");
  if (!x.allFinite()) throw ArgumentError(std::string(who) + ": non-finite entry");
  if (x.squaredNorm() == Real(0)) throw ArgumentError(std::string(who) + ": zero vector cannot be encoded");
}

}  // namespace detail

/// |x> = sum_i x_i/||x|| |i> over ceil(log2 N) qubits, zero-padded.
template <typename Real>
BasicStateVector<Real> amplitude_encode(const BasicRealVector<Real>& x, std::string register_name = "data") {
  detail::check_encodable(x, "amplitude_encode");
  const BasicRealVector<Real> padded = pad_to_power_of_two(x);
  BasicAmplitudes<Real> amps = (padded / padded.norm()).template cast<std::complex<Real>>();
  return BasicStateVector<Real>::single(std::move(amps), std::move(register_name));
}

/// A CAE register's contents. Either side may be absent, never both.
template <typename Real>
struct BasicNormalizedPair {
  std::optional<BasicRealVector<Real>> plus;
  std::optional<BasicRealVector<Real>> minus;

  bool paired() const { return plus && minus; }
  Eigen::Index dimension() const { return plus ? plus->size() : minus->size(); }
};

using NormalizedPair = BasicNormalizedPair<double>;

/// Scales a pair so ||plus||^2 + ||minus||^2 = 1: 1/sqrt(2) per side when both
/// are present, norm 1 for a lone vector.
template <typename Real>
BasicNormalizedPair<Real> normalize_pair(const std::optional<BasicRealVector<Real>>& plus,
                                         const std::optional<BasicRealVector<Real>>& minus) {
  if (!plus && !minus) throw ArgumentError("normalize_pair: both sides absent");
  if (plus) detail::check_encodable(*plus, "normalize_pair(+1)");
  if (minus) detail::check_encodable(*minus, "normalize_pair(-1)");
  if (plus && minus && plus->size() != minus->size()) {
    throw DimensionError("normalize_pair: dimensions " + std::to_string(plus->size()) + " and " +
                         std::to_string(minus->size()));
  }
  const Real target = (plus && minus) ? Real(1) / std::sqrt(Real(2)) : Real(1);
  BasicNormalizedPair<Real> out;
  if (plus) out.plus = *plus * (target / plus->norm());
  if (minus) out.minus = *minus * (target / minus->norm());
  return out;
}

/// |x>_c = sum_j (plus_j + i minus_j) |j>. Expects a pair from normalize_pair.
template <typename Real>
BasicStateVector<Real> compact_encode(const BasicNormalizedPair<Real>& pair, std::string register_name = "data") {
  if (!pair.plus && !pair.minus) throw ArgumentError("compact_encode: both sides absent");
  if (pair.paired() && pair.plus->size() != pair.minus->size()) {
    throw DimensionError("compact_encode: +1 and -1 vectors differ in dimension");
  }
  const Eigen::Index n = pair.dimension();
  const auto dim = Eigen::Index{1} << ceil_log2(static_cast<std::size_t>(std::max<Eigen::Index>(n, 1)));
  BasicAmplitudes<Real> amps = BasicAmplitudes<Real>::Zero(dim);
  if (pair.plus) amps.head(n).real() = *pair.plus;
  if (pair.minus) amps.head(n).imag() = *pair.minus;
  return BasicStateVector<Real>::single(std::move(amps), std::move(register_name));
}

/// <x~|x>_c from cosine similarities: ||x+|| cos(x~, x+) + i ||x-|| cos(x~, x-).
/// For a normalized pair this is (<x~|x+^> + i <x~|x-^>) / sqrt(2).
template <typename Real>
std::complex<Real> cae_overlap(const BasicRealVector<Real>& test, const BasicNormalizedPair<Real>& pair) {
  detail::check_encodable(test, "cae_overlap");
  const BasicRealVector<Real> t = pad_to_power_of_two(test);
  const Real tnorm = t.norm();
  auto side = [&](const std::optional<BasicRealVector<Real>>& v) -> Real {
    if (!v) return Real(0);
    const BasicRealVector<Real> p = pad_to_power_of_two(*v);
    if (p.size() != t.size()) {
      throw DimensionError("cae_overlap: test dimension " + std::to_string(test.size()) +
                           " does not match training dimension " + std::to_string(v->size()));
    }
    const Real w = p.norm();
    const Real cosine = t.dot(p) / (tnorm * w);
    return w * cosine;
  };
  return {side(pair.plus), side(pair.minus)};
}

// Pair sets --------------------------------------------------------------

enum class PairWeighting {
  uniform,             ///< b_j = 1 / #registers
  unpaired_corrected,  ///< unpaired registers get b_j / sqrt(2), then renormalized
};

/// CAE registers with their weights b_j (sum to 1).
class EncodedPairSet {
 public:
  EncodedPairSet(std::vector<NormalizedPair> pairs, std::vector<double> weights, std::uint64_t pairing_seed = 0);

  const std::vector<NormalizedPair>& pairs() const { return pairs_; }
  const std::vector<double>& weights() const { return weights_; }
  std::uint64_t pairing_seed() const { return pairing_seed_; }
  std::size_t size() const { return pairs_.size(); }
  /// Padded (power-of-two) dimension shared by every register.
  Eigen::Index dimension() const { return pairs_.front().dimension(); }
  std::size_t plus_count() const;
  std::size_t minus_count() const;

  /// Same registers, different weights.
  EncodedPairSet with_weights(std::vector<double> weights) const;

 private:
  std::vector<NormalizedPair> pairs_;
  std::vector<double> weights_;
  std::uint64_t pairing_seed_;
};

/// Unit-normalizes every datum, shuffles each class with `seed` (unless
/// `shuffle` is false) and zips them index-aligned into registers. Leftovers
/// of the larger class become unpaired registers.
EncodedPairSet make_pair_set(const std::vector<RealVector>& plus, const std::vector<RealVector>& minus,
                             std::uint64_t seed, PairWeighting weighting = PairWeighting::uniform,
                             bool shuffle = true);

}  // namespace chc
