#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "rng.hpp"

namespace testutil {

/// The 4-state environment chain used by the built-in drive model
/// (rows = destination, columns = source).
inline Eigen::MatrixXd four_state_rates() {
  Eigen::MatrixXd w(4, 4);
  w << 0, 2, 2.5, 0.1,
       1, 0, 0.5, 4,
       0.5, 0.7, 0, 2,
       3, 0.4, 0.25, 0;
  return w;
}

inline Eigen::MatrixXd four_state_drive() {
  Eigen::MatrixXd v(4, 2);
  v << 2, -1,
      -4, -4,
      -3, 2,
       8.8, 7.2;
  return v;
}

inline Eigen::MatrixXd two_state_rates(double k_plus, double k_minus) {
  Eigen::MatrixXd w(2, 2);
  w << 0, k_plus,
       k_minus, 0;
  return w;
}

/// Random rate matrix guaranteed irreducible by overlaying a directed cycle.
inline Eigen::MatrixXd random_rates(pdmpsync::Rng& rng, int n) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      if (k != m && rng.uniform() < 0.7) w(k, m) = 2.0 * rng.uniform();
  for (int m = 0; m < n; ++m)
    w((m + 1) % n, m) += 0.5 + rng.uniform();
  return w;
}

/// Independent stationary-distribution oracle: dense LU solve of the
/// generator with its last row replaced by the normalization.
inline Eigen::VectorXd stationary_lu_oracle(const Eigen::MatrixXd& generator) {
  const int n = static_cast<int>(generator.rows());
  Eigen::MatrixXd sys = generator;
  sys.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  return sys.fullPivLu().solve(rhs);
}

/// Two-sided Kolmogorov-Smirnov statistic against a continuous CDF.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

inline double wrap_two_pi(double theta) {
  const double two_pi = 2.0 * M_PI;
  double w = std::fmod(theta, two_pi);
  if (w < 0.0) w += two_pi;
  return w;
}

inline double wrap_pm_pi(double theta) {
  double w = std::remainder(theta, 2.0 * M_PI);
  return w;
}

}  // namespace testutil
