#include "chc/encoders.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace chc {

namespace {

double pair_norm2(const NormalizedPair& p) {
  return (p.plus ? p.plus->squaredNorm() : 0.0) + (p.minus ? p.minus->squaredNorm() : 0.0);
}

}  // namespace

EncodedPairSet::EncodedPairSet(std::vector<NormalizedPair> pairs, std::vector<double> weights,
                               std::uint64_t pairing_seed)
    : pairs_(std::move(pairs)), weights_(std::move(weights)), pairing_seed_(pairing_seed) {
  if (pairs_.empty()) throw ArgumentError("EncodedPairSet: no registers");
  if (weights_.size() != pairs_.size()) {
    throw ArgumentError("EncodedPairSet: " + std::to_string(weights_.size()) + " weights for " +
                        std::to_string(pairs_.size()) + " registers");
  }
  Eigen::Index dim = 0;
  for (auto& p : pairs_) {
    if (!p.plus && !p.minus) throw ArgumentError("EncodedPairSet: register with both sides absent");
    if (p.paired() && p.plus->size() != p.minus->size()) {
      throw DimensionError("EncodedPairSet: +1 and -1 vectors differ in dimension");
    }
    if (p.plus) p.plus = pad_to_power_of_two(*p.plus);
    if (p.minus) p.minus = pad_to_power_of_two(*p.minus);
    if (dim == 0) dim = p.dimension();
    if (p.dimension() != dim) throw DimensionError("EncodedPairSet: registers differ in dimension");
    if (std::abs(pair_norm2(p) - 1.0) > norm_tolerance<double>()) {
      throw ContractError("EncodedPairSet: register is not normalized");
    }
  }
  double total = 0;
  for (double w : weights_) {
    if (!(w > 0) || !std::isfinite(w)) throw ArgumentError("EncodedPairSet: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ArgumentError("EncodedPairSet: weights sum to " + std::to_string(total) + ", expected 1");
  }
}

std::size_t EncodedPairSet::plus_count() const {
  return static_cast<std::size_t>(std::count_if(pairs_.begin(), pairs_.end(), [](auto& p) { return p.plus.has_value(); }));
}

std::size_t EncodedPairSet::minus_count() const {
  return static_cast<std::size_t>(std::count_if(pairs_.begin(), pairs_.end(), [](auto& p) { return p.minus.has_value(); }));
}

EncodedPairSet EncodedPairSet::with_weights(std::vector<double> weights) const {
  return EncodedPairSet(pairs_, std::move(weights), pairing_seed_);
}

EncodedPairSet make_pair_set(const std::vector<RealVector>& plus, const std::vector<RealVector>& minus,
                             std::uint64_t seed, PairWeighting weighting, bool shuffle) {
  if (plus.empty() && minus.empty()) throw ArgumentError("make_pair_set: no training data");

  std::vector<std::size_t> plus_order(plus.size());
  std::vector<std::size_t> minus_order(minus.size());
  std::iota(plus_order.begin(), plus_order.end(), 0);
  std::iota(minus_order.begin(), minus_order.end(), 0);
  if (shuffle) {
    std::mt19937_64 rng(seed);
    std::shuffle(plus_order.begin(), plus_order.end(), rng);
    std::shuffle(minus_order.begin(), minus_order.end(), rng);
  }

  auto unit = [](const RealVector& v) -> RealVector {
    detail::check_encodable(v, "make_pair_set");
    return v / v.norm();
  };

  const std::size_t registers = std::max(plus.size(), minus.size());
  std::vector<NormalizedPair> pairs;
  std::vector<double> weights;
  pairs.reserve(registers);
  weights.reserve(registers);
  for (std::size_t j = 0; j < registers; ++j) {
    std::optional<RealVector> p;
    std::optional<RealVector> m;
    if (j < plus.size()) p = unit(plus[plus_order[j]]);
    if (j < minus.size()) m = unit(minus[minus_order[j]]);
    auto pair = normalize_pair(p, m);
    const bool lone = !pair.paired();
    pairs.push_back(std::move(pair));
    weights.push_back(weighting == PairWeighting::unpaired_corrected && lone ? 1.0 / std::sqrt(2.0) : 1.0);
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= total;
  // Last weight absorbs the rounding residual.
  const double residual = 1.0 - std::accumulate(weights.begin(), weights.end(), 0.0);
  weights.back() += residual;
  return EncodedPairSet(std::move(pairs), std::move(weights), seed);
}

}  // namespace chc
