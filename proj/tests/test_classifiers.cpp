#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "chc/classifiers.hpp"
#include "support.hpp"

namespace chc {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const double kS = 1.0 / std::sqrt(2.0);

RealVector vec(std::initializer_list<double> values) {
  RealVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

LabeledDataset train_of(std::vector<Eigen::VectorXd> rows, std::vector<int> labels) {
  return make_binary_dataset(rows, labels);
}

EncodedPairSet single_pair(const std::optional<RealVector>& plus, const std::optional<RealVector>& minus) {
  return EncodedPairSet({normalize_pair(plus, minus)}, {1.0});
}

TEST(Htc, SingleTrainingPointState) {
  const auto state = build_htc_state(train_of({vec({1, 0})}, {+1}), vec({1, 0}));
  ASSERT_EQ(state.dimension(), 8);
  // ancilla | data | label; label |0>, index trivial.
  const double expected[] = {kS, 0, 0, 0, kS, 0, 0, 0};
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(state[i] - expected[i]), 0.0, 1e-15);
  EXPECT_NEAR(htc_score(state), 1.0, 1e-15);
}

TEST(Htc, KernelSumExamples) {
  const auto a = train_of({vec({1, 0}), vec({0, 1})}, {+1, -1});
  EXPECT_NEAR(htc_score(build_htc_state(a, vec({0.6, 0.8}))), -0.1, 1e-14);
  const auto b = train_of({vec({0.6, 0.8}), vec({1, 0})}, {+1, -1});
  EXPECT_NEAR(htc_score(build_htc_state(b, vec({1, 0}))), -0.2, 1e-14);
  EXPECT_NEAR(build_htc_state(b, vec({1, 0})).amplitudes().squaredNorm(), 1.0, 1e-15);
}

TEST(Htc, OrthogonalTestScoresZero) {
  const auto a = train_of({vec({1, 0, 0, 0}), vec({0, 1, 0, 0})}, {+1, -1});
  EXPECT_NEAR(htc_score(build_htc_state(a, vec({0, 0, 1, 0}))), 0.0, 1e-15);
}

TEST(Htc, DimensionMismatchThrows) {
  const auto a = train_of({vec({1, 0}), vec({0, 1})}, {+1, -1});
  EXPECT_THROW(build_htc_state(a, vec({1, 0, 0})), DimensionError);
}

TEST(Generalized, LimitingAngles) {
  const auto train = train_of({vec({0.6, 0.8}), vec({1, 0}), vec({0, 1})}, {+1, -1, -1});
  const std::vector<double> a{0.5, 0.3, 0.2};
  const RealVector test = vec({0.8, 0.6});
  const double label_sum = 0.5 - 0.3 - 0.2;
  for (double theta1 : {0.0, 0.4, -1.1}) {
    EXPECT_NEAR(generalized_expectation(train, test, a, 0.0, 0.7, theta1), label_sum * std::cos(theta1), 1e-14);
  }
  const double htc = 0.5 * 0.96 - 0.3 * 0.8 - 0.2 * 0.6;
  EXPECT_NEAR(generalized_expectation(train, test, a, kPi / 2, 0.0, -kPi / 2), htc, 1e-14);
  EXPECT_NEAR(generalized_expectation(train, test, a, kPi / 2, kPi / 2, -kPi / 2), 0.0, 1e-14);
}

TEST(Generalized, ClosedFormOnRandomAngles) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = testing::random_balanced(rng, 4, 4);
    const auto train = testing::htc_training_set(inst);
    const std::vector<double> a{0.1, 0.2, 0.3, 0.4};
    const double t0 = angle(rng);
    const double t1 = angle(rng);
    const double phi = angle(rng);
    double kernel = 0.0;
    double labels = 0.0;
    for (Eigen::Index j = 0; j < 4; ++j) {
      const double y = train.labels[static_cast<std::size_t>(j)];
      kernel += a[static_cast<std::size_t>(j)] * y * inst.test.dot(train.row(j));
      labels += a[static_cast<std::size_t>(j)] * y;
    }
    // Real data: <sigma_z sigma_z> = cos t0 cos t1 sum a y - sin t0 sin t1 cos phi sum a y k.
    const double expected = std::cos(t0) * std::cos(t1) * labels - std::sin(t0) * std::sin(t1) * std::cos(phi) * kernel;
    EXPECT_NEAR(generalized_expectation(train, inst.test, a, t0, phi, t1), expected, 1e-12);
  }
}

TEST(Chc, StateForSinglePairAtZeroPhase) {
  const auto state = build_chc_state(single_pair(vec({1, 0}), vec({0, 1})), vec({1, 0}), 0.0);
  ASSERT_EQ(state.dimension(), 4);
  EXPECT_NEAR(std::abs(state[0] - cd(0.5, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(state[1] - cd(0, 0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(state[2] - cd(kS, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(state[3]), 0.0, 1e-15);
}

TEST(Chc, PhaseOnlyTouchesTestBranch) {
  const auto pairs = single_pair(vec({0.6, 0.8}), vec({1, 0}));
  const auto s0 = build_chc_state(pairs, vec({0.8, 0.6}), 0.0);
  const auto s1 = build_chc_state(pairs, vec({0.8, 0.6}), kPi / 4);
  const cd phase = std::polar(1.0, -kPi / 4);
  for (Eigen::Index i = 0; i < 2; ++i) EXPECT_NEAR(std::abs(s1[i] - s0[i]), 0.0, 1e-15);
  for (Eigen::Index i = 2; i < 4; ++i) EXPECT_NEAR(std::abs(s1[i] - phase * s0[i]), 0.0, 1e-15);
}

TEST(Chc, ExpectationExamples) {
  const auto matched = single_pair(vec({0.6, 0.8}), vec({0.8, -0.6}));
  EXPECT_NEAR(chc_expectation(build_chc_state(matched, vec({0.6, 0.8}), kPi / 4)), 0.5, 1e-14);

  const auto running = single_pair(vec({0.6, 0.8}), vec({1, 0}));
  EXPECT_NEAR(chc_expectation(build_chc_state(running, vec({1, 0}), kPi / 4)), -0.2, 1e-14);
  EXPECT_NEAR(chc_score_analytic(running, vec({1, 0}), kPi / 4), -0.2, 1e-14);

  const auto orthogonal = single_pair(vec({0, 0, 1, 0}), vec({0, 0, 0, 1}));
  EXPECT_NEAR(chc_expectation(build_chc_state(orthogonal, vec({1, 0, 0, 0}), kPi / 4)), 0.0, 1e-15);
}

TEST(Chc, RunningExampleMatchesHtc) {
  const auto train = train_of({vec({0.6, 0.8}), vec({1, 0})}, {+1, -1});
  const auto pairs = single_pair(vec({0.6, 0.8}), vec({1, 0}));
  EXPECT_NEAR(chc_expectation(build_chc_state(pairs, vec({1, 0}), kPi / 4)),
              htc_score(build_htc_state(train, vec({1, 0}))), 1e-14);
}

TEST(Chc, ZeroPhaseWithoutMinusIsRealKernel) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const RealVector p = testing::random_unit(rng, 4);
    const RealVector t = testing::random_unit(rng, 4);
    EXPECT_NEAR(chc_expectation(build_chc_state(single_pair(p, std::nullopt), t, 0.0)), p.dot(t), 1e-13);
  }
}

TEST(Chc, LabelRegisterRejected) {
  const auto train = train_of({vec({1, 0}), vec({0, 1})}, {+1, -1});
  EXPECT_THROW(chc_expectation(build_htc_state(train, vec({1, 0}))), LayoutError);
}

TEST(Chc, PairingDoesNotChangeBalancedScore) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = testing::random_balanced(rng, 8, 4);
    const auto a = make_pair_set(inst.plus, inst.minus, 1, PairWeighting::uniform);
    const auto b = make_pair_set(inst.plus, inst.minus, 2, PairWeighting::uniform);
    EXPECT_NEAR(chc_expectation(build_chc_state(a, inst.test, kPi / 4)),
                chc_expectation(build_chc_state(b, inst.test, kPi / 4)), 1e-13);
  }
}

TEST(Chc, StatevectorMatchesKernelOracle) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int pairs = 1 + trial % 5;
    const auto inst = testing::random_balanced(rng, 2 * pairs, 1 + trial % 6);
    std::vector<double> w(static_cast<std::size_t>(pairs));
    double total = 0;
    for (auto& x : w) total += (x = unit(rng));
    for (auto& x : w) x /= total;
    const auto set = make_pair_set(inst.plus, inst.minus, 0, PairWeighting::uniform, false).with_weights(w);
    const double phi = angle(rng);
    const double oracle = testing::kernel_sum_oracle(inst.plus, inst.minus, inst.test, w, phi);
    EXPECT_NEAR(chc_expectation(build_chc_state(set, inst.test, phi)), oracle, 1e-12);
    EXPECT_NEAR(chc_score_analytic(set, inst.test, phi), oracle, 1e-12);
  }
}

TEST(ImbalancePhase, Examples) {
  EXPECT_NEAR(imbalance_phase(4, 4), kPi / 4, 1e-15);
  EXPECT_NEAR(imbalance_phase(3, 1), 0.32175055439664219, 1e-15);
  EXPECT_NEAR(imbalance_phase(1, 0), 0.0, 1e-15);
  EXPECT_THROW(imbalance_phase(0, 0), ArgumentError);
}

TEST(Classify, SignRuleAndTies) {
  EXPECT_EQ(classify(-0.2), -1);
  EXPECT_EQ(classify(0.5), +1);
  EXPECT_EQ(classify(0.0), +1);
  EXPECT_EQ(classify(-0.0), +1);
  EXPECT_THROW(classify(std::nan("")), ContractError);
}

TEST(Minimal, ExactMatchesStatevector) {
  const auto running = single_pair(vec({0.6, 0.8}), vec({1, 0}));
  const auto out = minimal_classifier(running, vec({1, 0}), running.weights(), kPi / 4, EvaluationMode::exact());
  EXPECT_NEAR(out.score, -0.2, 1e-14);
  EXPECT_EQ(out.label, -1);

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = testing::random_balanced(rng, 8, 2 + trial % 7);
    const auto set = make_pair_set(inst.plus, inst.minus, trial, PairWeighting::uniform);
    const double expected = chc_expectation(build_chc_state(set, inst.test, kPi / 4));
    EXPECT_NEAR(minimal_classifier(set, inst.test, set.weights(), kPi / 4, EvaluationMode::exact()).score, expected,
                1e-12);
  }
}

TEST(Minimal, ConcentratedWeightsPickOnePair) {
  const auto a = single_pair(vec({0.6, 0.8}), vec({1, 0}));
  const auto b = single_pair(vec({0, 1}), vec({0.8, 0.6}));
  const EncodedPairSet both({a.pairs()[0], b.pairs()[0]}, {0.5, 0.5});
  const std::vector<double> only_first{1.0, 0.0};
  const double single = chc_expectation(build_chc_state(a, vec({1, 0}), kPi / 4));
  EXPECT_NEAR(minimal_classifier(both, vec({1, 0}), only_first, kPi / 4, EvaluationMode::exact()).score, single,
              1e-14);
}

TEST(Minimal, SampledModeConvergesAndIsSeeded) {
  const auto running = single_pair(vec({0.6, 0.8}), vec({1, 0}));
  const auto mode = EvaluationMode::sampled(1'000'000, 3);
  const auto out = minimal_classifier(running, vec({1, 0}), running.weights(), kPi / 4, mode);
  const double p0 = (1 - 0.2) / 2;
  EXPECT_LT(std::abs(out.score + 0.2), 5 * 2 * std::sqrt(p0 * (1 - p0) / 1e6));
  const auto again = minimal_classifier(running, vec({1, 0}), running.weights(), kPi / 4, mode);
  EXPECT_EQ(out.score, again.score);
}

TEST(Evaluate, ModesAgreeForChcAndHtc) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testing::random_balanced(rng, 4, 4);
    const auto set = make_pair_set(inst.plus, inst.minus, 0, PairWeighting::uniform, false);
    const auto train = testing::htc_training_set(inst);
    ClassifierConfig config;
    const double exact = evaluate_chc(set, inst.test, config).score;
    config.mode = EvaluationMode::analytic();
    EXPECT_NEAR(evaluate_chc(set, inst.test, config).score, exact, 1e-12);
    EXPECT_NEAR(evaluate_htc(train, inst.test, config).score, exact, 1e-12);
    config.mode = EvaluationMode::exact();
    EXPECT_NEAR(evaluate_htc(train, inst.test, config).score, exact, 1e-12);
  }
}

}  // namespace
}  // namespace chc
