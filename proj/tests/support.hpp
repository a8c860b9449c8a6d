#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "chc/classifiers.hpp"
#include "chc/encoders.hpp"
#include "chc/state.hpp"

namespace chc::testing {

inline RealVector random_unit(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  RealVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v.normalized();
}

inline Amplitudes random_amplitudes(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Amplitudes v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = {normal(rng), normal(rng)};
  return v.normalized();
}

struct BalancedInstance {
  std::vector<RealVector> plus;
  std::vector<RealVector> minus;
  RealVector test;
};

/// M training vectors split evenly between the classes, all of dimension N.
inline BalancedInstance random_balanced(std::mt19937_64& rng, int M, int N) {
  BalancedInstance inst;
  for (int j = 0; j < M / 2; ++j) inst.plus.push_back(random_unit(rng, N));
  for (int j = 0; j < M / 2; ++j) inst.minus.push_back(random_unit(rng, N));
  inst.test = random_unit(rng, N);
  return inst;
}

inline LabeledDataset htc_training_set(const BalancedInstance& inst) {
  std::vector<Eigen::VectorXd> rows;
  std::vector<int> labels;
  for (const auto& p : inst.plus) {
    rows.push_back(p);
    labels.push_back(+1);
  }
  for (const auto& m : inst.minus) {
    rows.push_back(m);
    labels.push_back(-1);
  }
  return make_binary_dataset(rows, labels);
}

/// sum_j b_j (cos phi Re k_j - sin phi Im k_j), k_j = <t|p_j>/sqrt2 + i <t|m_j>/sqrt2 for
/// unit-norm inputs, computed with plain loops.
inline double kernel_sum_oracle(const std::vector<RealVector>& plus, const std::vector<RealVector>& minus,
                                const RealVector& test, const std::vector<double>& b, double phi) {
  const double t_norm = std::sqrt(test.squaredNorm());
  double total = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    double re = 0.0;
    double im = 0.0;
    for (Eigen::Index i = 0; i < test.size(); ++i) {
      re += test[i] * plus[j][i];
      im += test[i] * minus[j][i];
    }
    re /= t_norm * std::sqrt(2.0) * std::sqrt(plus[j].squaredNorm());
    im /= t_norm * std::sqrt(2.0) * std::sqrt(minus[j].squaredNorm());
    total += b[j] * (std::cos(phi) * re - std::sin(phi) * im);
  }
  return total;
}

/// Largest |<a (x) b|psi>| over Bloch angles (theta1, phase1, theta2, phase2) of a
/// 2-qubit state: a coarse grid, then repeated finer grids centred on the best point.
inline double bloch_grid_overlap(const Amplitudes& psi, int steps = 24, int rounds = 30) {
  auto overlap = [&](const std::array<double, 4>& x) {
    const Eigen::Vector2cd a(std::cos(x[0] / 2), std::polar(std::sin(x[0] / 2), x[1]));
    const Eigen::Vector2cd b(std::cos(x[2] / 2), std::polar(std::sin(x[2] / 2), x[3]));
    std::complex<double> ov = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int k = 0; k < 2; ++k) ov += std::conj(a[i] * b[k]) * psi[2 * i + k];
    }
    return std::abs(ov);
  };
  const double pi = std::numbers::pi;
  std::array<double, 4> best_x{0, 0, 0, 0};
  double best = -1.0;
  for (int t1 = 0; t1 <= steps; ++t1) {
    for (int p1 = 0; p1 < 2 * steps; ++p1) {
      for (int t2 = 0; t2 <= steps; ++t2) {
        for (int p2 = 0; p2 < 2 * steps; ++p2) {
          const std::array<double, 4> x{pi * t1 / steps, pi * p1 / steps, pi * t2 / steps, pi * p2 / steps};
          if (const double v = overlap(x); v > best) {
            best = v;
            best_x = x;
          }
        }
      }
    }
  }
  double span = pi / steps;
  constexpr int k = 4;
  for (int round = 0; round < rounds; ++round) {
    const std::array<double, 4> centre = best_x;
    for (int i0 = -k; i0 <= k; ++i0) {
      for (int i1 = -k; i1 <= k; ++i1) {
        for (int i2 = -k; i2 <= k; ++i2) {
          for (int i3 = -k; i3 <= k; ++i3) {
            const std::array<double, 4> x{centre[0] + span * i0 / k, centre[1] + span * i1 / k,
                                          centre[2] + span * i2 / k, centre[3] + span * i3 / k};
            if (const double v = overlap(x); v > best) {
              best = v;
              best_x = x;
            }
          }
        }
      }
    }
    span /= 2;
  }
  return best;
}

/// Top singular value of the 2x2 coefficient matrix of a 2-qubit state.
inline double top_schmidt_coefficient(const Amplitudes& psi) {
  Eigen::Matrix2cd c;
  c << psi[0], psi[1], psi[2], psi[3];
  return Eigen::JacobiSVD<Eigen::Matrix2cd>(c).singularValues()[0];
}

/// Reduced state of qubit k from the full density matrix |psi><psi|, qubit 0 most significant.
inline Eigen::Matrix2cd dense_reduced_state(const Amplitudes& psi, int n, int k) {
  const Eigen::MatrixXcd rho = psi * psi.adjoint();
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  const int shift = n - 1 - k;
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      const Eigen::Index rest_r = r & ~(Eigen::Index{1} << shift);
      const Eigen::Index rest_c = c & ~(Eigen::Index{1} << shift);
      if (rest_r == rest_c) out((r >> shift) & 1, (c >> shift) & 1) += rho(r, c);
    }
  }
  return out;
}

inline Gate random_unitary(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  return rz(angle(rng)) * ry(angle(rng)) * rz(angle(rng));
}

}  // namespace chc::testing
