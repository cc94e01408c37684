#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "berezin/chart_point.hpp"

namespace testing_support {

using berezin::ChartPoint;
using berezin::cplx;

/// Uniform point in the ball |mu| <= radius of C^d.
inline ChartPoint random_point(std::mt19937_64& rng, std::size_t d, double radius) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  std::vector<cplx> z(d);
  double n2 = 0.0;
  for (auto& c : z) {
    c = {normal(rng), normal(rng)};
    n2 += std::norm(c);
  }
  const double r = radius * std::pow(unit(rng), 1.0 / (2.0 * static_cast<double>(d)));
  for (auto& c : z) c *= r / std::sqrt(n2);
  return ChartPoint(std::move(z));
}

inline Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = {normal(rng), normal(rng)};
  return a;
}

/// (2 pi)^d prod q_i! (m - |q|)! / (m + d)!, written out independently of the library.
inline double moment_oracle(const std::vector<unsigned>& q, unsigned m, std::size_t d) {
  unsigned deg = 0;
  double v = std::pow(2.0 * M_PI, static_cast<double>(d));
  for (unsigned e : q) {
    v *= std::tgamma(e + 1.0);
    deg += e;
  }
  return v * std::tgamma(m - deg + 1.0) / std::tgamma(m + static_cast<double>(d) + 1.0);
}

}  // namespace testing_support
