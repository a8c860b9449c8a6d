// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "chc/experiments.hpp"
#include "chc/parallel.hpp"
#include "support.hpp"

namespace {

using namespace chc;
using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed(double v, int digits = 3) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(digits);
  ss << v;
  return ss.str();
}

std::string sci(double v) {
  std::ostringstream ss;
  ss.setf(std::ios::scientific);
  ss.precision(2);
  ss << v;
  return ss.str();
}

void table1() {
  const std::map<std::string, std::map<std::string, double>> target{
      {"iris", {{"1&2", 0.998}, {"1&3", 0.998}, {"2&3", 0.922}}},
      {"wine", {{"1&2", 0.930}, {"1&3", 0.882}, {"2&3", 0.694}}}};
  const auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (const auto& [dataset, rows] : target) {
    ExperimentConfig config;
    config.dataset = dataset;
    config.repetitions = 30;
    for (const auto& s : run_table1(config).summaries) {
      const double want = rows.at(s.class_pair);
      const bool row_ok = std::abs(s.mean - want) <= 0.05;
      ok = ok && row_ok;
      detail += " " + dataset + " " + s.class_pair + " " + fixed(s.mean) + "/" + fixed(want);
    }
  }
  const double elapsed = seconds_since(start);
  ok = ok && elapsed < 120.0;
  report(1, ok, "test accuracy means within 0.05 in " + fixed(elapsed, 1) + "s:" + detail);
}

void table2() {
  const std::map<std::string, std::vector<double>> target{
      {"iris", {0.251, 0.230, 0.186, 0.171, 0.157, 0.144}},
      {"wine", {0.064, 0.063, 0.062, 0.062, 0.059, 0.057}}};
  const auto start = Clock::now();
  bool minima_ok = true;
  bool means_ok = true;
  std::string detail;
  for (const auto& [dataset, means] : target) {
    ExperimentConfig config;
    config.dataset = dataset;
    config.repetitions = 100;
    const auto result = run_entanglement_survey(config);
    for (const auto& s : result.summaries) {
      const double want = means[static_cast<std::size_t>(s.m)];
      minima_ok = minima_ok && s.min > 0.0;
      means_ok = means_ok && std::abs(s.mean - want) <= 0.08;
      detail += " " + dataset + "/" + std::to_string(s.samples_per_class) + " mean " + fixed(s.mean) + "/" +
                fixed(want) + " min " + fixed(s.min);
    }
  }
  const double elapsed = seconds_since(start);
  report(2, minima_ok && means_ok && elapsed < 300.0,
         std::string("MW delta minima > 0 ") + (minima_ok ? "yes" : "no") + ", means within 0.08 " +
             (means_ok ? "yes" : "no") + ", 100 reps in " + fixed(elapsed, 1) + "s:" + detail);
}

void equivalence() {
  std::mt19937_64 rng(2024);
  const int sizes[] = {2, 4, 8};
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int M = sizes[trial % 3];
    const int N = sizes[(trial / 3) % 3];
    const auto inst = testing::random_balanced(rng, M, N);
    const auto pairs = make_pair_set(inst.plus, inst.minus, static_cast<std::uint64_t>(trial), PairWeighting::uniform);
    const double chc = chc_expectation(build_chc_state(pairs, inst.test, kPi / 4));
    const double htc = htc_score(build_htc_state(testing::htc_training_set(inst), inst.test));
    worst = std::max(worst, std::abs(chc - htc));
  }
  report(3, worst < 1e-10, "CHC vs HTC over 1000 instances, max |diff| = " + sci(worst));
}

void circuit_vs_analytic() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  double worst_kernel = 0.0;
  double worst_minimal = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int pairs = 1 + trial % 6;
    const auto inst = testing::random_balanced(rng, 2 * pairs, 1 + trial % 8);
    std::vector<double> w(static_cast<std::size_t>(pairs));
    double total = 0;
    for (auto& x : w) total += (x = unit(rng));
    for (auto& x : w) x /= total;
    const auto set = make_pair_set(inst.plus, inst.minus, 0, PairWeighting::uniform, false).with_weights(w);
    const double phi = angle(rng);
    const double circuit = chc_expectation(build_chc_state(set, inst.test, phi));
    const double oracle = testing::kernel_sum_oracle(inst.plus, inst.minus, inst.test, w, phi);
    const double minimal = minimal_classifier(set, inst.test, w, phi, EvaluationMode::exact()).score;
    worst_kernel = std::max(worst_kernel, std::abs(circuit - oracle));
    worst_minimal = std::max(worst_minimal, std::abs(circuit - minimal));
  }
  report(4, worst_kernel < 1e-10 && worst_minimal < 1e-10,
         "1000 instances, statevector vs kernel sum max " + sci(worst_kernel) +
             ", minimal vs statevector max " + sci(worst_minimal));
}

StateVector state_of(std::initializer_list<std::complex<double>> values) {
  Amplitudes v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const auto& x : values) v[i++] = x;
  return StateVector::single(v);
}

void ground_truth() {
  const double s = 1.0 / std::sqrt(2.0);
  const double a = 1.0 / std::sqrt(3.0);
  const StateVector bell = state_of({s, 0, 0, s});
  const StateVector w3 = state_of({0, a, a, 0, a, 0, 0, 0});

  const double mw00 = meyer_wallach(state_of({1, 0, 0, 0})).value;
  const double mw_bell = meyer_wallach(bell).value;
  double purity_sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Matrix2cd rho = testing::dense_reduced_state(w3.amplitudes(), 3, k);
    purity_sum += (rho * rho).trace().real();
  }
  const double w3_oracle = 2.0 * (1.0 - purity_sum / 3.0);
  const double mw_w3 = meyer_wallach(w3).value;

  const double grid_lambda = testing::bloch_grid_overlap(bell.amplitudes());
  const double g_bell = geometric_measure(bell).value;
  const double g_oracle = std::sqrt(2.0 - 2.0 * grid_lambda);

  std::mt19937_64 rng(99);
  double worst_schmidt = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Amplitudes psi = testing::random_amplitudes(rng, 4);
    GeometricOptions options;
    options.seed = static_cast<std::uint64_t>(trial);
    const double lambda = best_product_approximation(StateVector::single(psi), options).overlap;
    worst_schmidt = std::max(worst_schmidt, std::abs(lambda - testing::top_schmidt_coefficient(psi)));
  }

  const bool ok = std::abs(mw00) <= 1e-12 && std::abs(mw_bell - 1.0) <= 1e-12 &&
                  std::abs(mw_w3 - w3_oracle) <= 1e-10 && std::abs(w3_oracle - 8.0 / 9.0) <= 1e-10 &&
                  std::abs(g_bell - g_oracle) <= 1e-6 && std::abs(g_bell - std::sqrt(2.0 - std::sqrt(2.0))) <= 1e-6 &&
                  worst_schmidt <= 1e-6;
  report(5, ok,
         "MW(|00>) " + sci(mw00) + ", MW(Bell) " + fixed(mw_bell, 12) + ", MW(W3) " + fixed(mw_w3, 12) +
             " vs " + fixed(w3_oracle, 12) + ", G(Bell) " + fixed(g_bell, 9) + " vs grid " + fixed(g_oracle, 9) +
             ", 200-state Schmidt max |diff| " + sci(worst_schmidt));
}

void resources() {
  bool ok = true;
  for (std::int64_t m = 2; m <= 256; m += 2) {
    const auto htc = count_htc(m, 4, 0.5);
    const auto chc = count_chc(m, 4);
    ok = ok && htc.controlled_primitive_count == 4 * chc.controlled_primitive_count;
    ok = ok && htc.total_qubits - chc.total_qubits == 2;
  }
  const std::int64_t M = 16;
  for (double alpha : {0.5, 0.625, 0.75}) {
    const auto want = std::max<std::int64_t>(1, std::llround(std::abs(alpha - (1 - alpha)) * M));
    ok = ok && count_htc(M, 4, alpha).label_encoding_ops == want;
  }
  ok = ok && count_htc(8, 4, 0.75).label_encoding_ops == 4;
  report(6, ok, "primitive ratio 4 and qubit reduction 2 for every even M in 2..256; label ops at alpha 0.5/0.625/0.75");
}

void shots() {
  std::mt19937_64 rng(55);
  int inside = 0;
  double worst_sigmas = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testing::random_balanced(rng, 4, 4);
    const auto set = make_pair_set(inst.plus, inst.minus, static_cast<std::uint64_t>(trial), PairWeighting::uniform);
    const double exact = minimal_classifier(set, inst.test, set.weights(), kPi / 4, EvaluationMode::exact()).score;
    const auto mode = EvaluationMode::sampled(1'000'000, derive_seed(55, 1, static_cast<std::uint64_t>(trial)));
    const double sampled = minimal_classifier(set, inst.test, set.weights(), kPi / 4, mode).score;
    const double p0 = (1.0 + exact) / 2.0;
    const double sigma = 2.0 * std::sqrt(p0 * (1.0 - p0) / 1e6);
    const double sigmas = std::abs(sampled - exact) / sigma;
    worst_sigmas = std::max(worst_sigmas, sigmas);
    if (sigmas <= 5.0) ++inside;
  }
  report(7, inside == 50, std::to_string(inside) + "/50 sampled scores within 5 sigma at 1e6 shots, worst " +
                              fixed(worst_sigmas, 2) + " sigma");
}

std::string file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "chc_acceptance";
  fs::create_directories(dir);
  auto produce = [&](const std::string& tag) {
    ExperimentConfig t1;
    t1.dataset = "wine";
    t1.repetitions = 5;
    t1.seed = 42;
    t1.shots = 1000;
    const auto report = run_table1(t1);
    std::ofstream(dir / (tag + "_table1.csv"), std::ios::binary) << [&] {
      std::ostringstream ss;
      write_accuracy_csv(ss, report);
      return ss.str();
    }();
    std::ofstream(dir / (tag + "_table1.json"), std::ios::binary) << to_json(report).dump(2);

    ExperimentConfig sv;
    sv.repetitions = 10;
    sv.seed = 42;
    sv.measures = {EntanglementMeasure::meyer_wallach, EntanglementMeasure::geometric};
    sv.m_values = {0, 1, 2};
    const auto survey = run_entanglement_survey(sv);
    std::ofstream out(dir / (tag + "_survey.csv"), std::ios::binary);
    write_survey_csv(out, survey);
    std::ofstream plot(dir / (tag + "_plot.csv"), std::ios::binary);
    write_plot_data(plot, survey);
  };
  produce("first");
  produce("second");
  bool ok = true;
  for (const char* name : {"_table1.csv", "_table1.json", "_survey.csv", "_plot.csv"}) {
    const std::string a = file_bytes(dir / (std::string("first") + name));
    ok = ok && !a.empty() && a == file_bytes(dir / (std::string("second") + name));
  }
  report(8, ok, "repeated seeded runs give byte-identical table1 CSV/JSON, survey CSV and plot data");
}

}  // namespace

int main() {
  const std::pair<int, void (*)()> checks[] = {{1, table1},      {2, table2}, {3, equivalence}, {4, circuit_vs_analytic},
                                              {5, ground_truth}, {6, resources}, {7, shots},    {8, determinism}};
  for (const auto& [id, check] : checks) {
    try {
      check();
    } catch (const std::exception& e) {
      report(id, false, std::string("threw: ") + e.what());
    }
  }
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
