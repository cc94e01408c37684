#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "berezin/chart_point.hpp"
#include "berezin/multi_index.hpp"

// Deterministic product quadrature over C^d against the Fubini-Study volume dV.
//
// A point is written nu_i = sqrt(S t_i) exp(i theta_i) with S = |nu|^2, t on the
// standard simplex and S = u / (1 - u). In these coordinates
//
//     dV = u^(d-1) du  dsigma(t)  dtheta_1 ... dtheta_d,
//
// and |nu|^(2k) (1+|nu|^2)^-w dV becomes u^(k+d-1) (1-u)^(w-k) du: a polynomial.
// The radial factor uses Gauss-Legendre in u, the simplex uses collapsed
// (Duffy) Gauss-Legendre coordinates and each angle a uniform grid.
//
// Exactness at level L (radial 8L, simplex 4L, angular 4L nodes): the rule is exact
// (up to rounding) for conj(P(nu)) Q(nu) (1+|nu|^2)^-w dV whenever P, Q are polynomials
// of degree <= m_max(L) = 4L - 1 and max(deg P, deg Q) <= w <= 16L - d. This covers
// every monomial moment and every level-m inner product with m <= m_max(L).
namespace berezin::quadrature {

inline constexpr std::size_t kDefaultNodeCap = 10'000'000;

/// Largest polynomial degree integrated exactly (in each of nu and conj(nu)) at this level.
unsigned m_max(unsigned level);

/// Smallest level whose rule is exact for inner products of level-m sections
/// multiplied by the bounded rational test symbols (frequency <= 2, extra weight <= 2).
unsigned level_for(unsigned m);

/// Gauss-Legendre nodes/weights on [0, 1].
void gauss_legendre01(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

class QuadratureRule {
 public:
  std::size_t dim() const noexcept { return d_; }
  unsigned level() const noexcept { return level_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(weights_.size()); }
  std::size_t radial_count() const noexcept { return radial_; }
  std::size_t simplex_count() const noexcept { return simplex_; }
  std::size_t angular_count() const noexcept { return angular_; }

  /// d x n matrix of node coordinates.
  const Eigen::MatrixXcd& nodes() const noexcept { return nodes_; }
  /// Weights against the Fubini-Study volume dV (all positive).
  const Eigen::VectorXd& weights() const noexcept { return weights_; }

  ChartPoint point(std::size_t k) const;
  /// 1 + |nu_k|^2, computed from the compactified radius.
  double one_plus_norm2(std::size_t k) const noexcept { return one_plus_s_[k]; }

  friend QuadratureRule build_rule(std::size_t d, unsigned level, std::size_t node_cap);
  friend QuadratureRule build_rule_counts(std::size_t d, std::size_t radial, std::size_t simplex,
                                          std::size_t angular, unsigned level, std::size_t node_cap);

 private:
  std::size_t d_ = 0;
  unsigned level_ = 0;
  std::size_t radial_ = 0, simplex_ = 0, angular_ = 0;
  Eigen::MatrixXcd nodes_;
  Eigen::VectorXd weights_;
  std::vector<double> one_plus_s_;
};

QuadratureRule build_rule(std::size_t d, unsigned level, std::size_t node_cap = kDefaultNodeCap);

/// Rule with explicit node counts; level is recorded for reporting only.
QuadratureRule build_rule_counts(std::size_t d, std::size_t radial, std::size_t simplex, std::size_t angular,
                                 unsigned level, std::size_t node_cap = kDefaultNodeCap);

struct IntegrationResult {
  cplx value;
  double error_estimate = 0.0;
};

using Integrand = std::function<cplx(const ChartPoint&)>;

/// Weighted node sum (fixed pairwise order); the error estimate is the distance to the
/// same integral on the next-lower level (half the node counts at level 1).
IntegrationResult integrate(const Integrand& f, const QuadratureRule& rule);

/// Sum of w_k * values_k in a fixed pairwise order.
cplx weighted_sum(std::span<const cplx> values, const Eigen::VectorXd& weights);
cplx pairwise_sum(std::span<const cplx> values);

/// Exact integral of |nu|^(2I) (1+|nu|^2)^-m dV:
/// (2 pi)^d prod q_i! (m - |q|)! / (m + d)!.
double moment(const MultiIndex& index, unsigned m, std::size_t d);

/// Natural log of moment(index, m, d), for large arguments.
double log_moment(const MultiIndex& index, unsigned m, std::size_t d);

}  // namespace berezin::quadrature
