#include "berezin/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "berezin/error.hpp"

namespace berezin::quadrature {

unsigned m_max(unsigned level) { return 4 * level - 1; }

unsigned level_for(unsigned m) { return std::max(1u, (m + 3 + 3) / 4); }

void gauss_legendre01(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * static_cast<double>(j) - 1.0) * x * p2 - (static_cast<double>(j) - 1.0) * p3) /
             static_cast<double>(j);
      }
      dp = static_cast<double>(n) * (x * p1 - p2) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) <= 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x is descending in i; store ascending nodes on [0, 1].
    nodes[i] = 0.5 * (1.0 - x);
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[i] = 0.5 * w;
    weights[n - 1 - i] = 0.5 * w;
  }
}

ChartPoint QuadratureRule::point(std::size_t k) const {
  std::vector<cplx> c(d_);
  for (std::size_t i = 0; i < d_; ++i) c[i] = nodes_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  return ChartPoint(std::move(c));
}

namespace {

struct SimplexNode {
  std::vector<double> t;
  double weight;
};

// Collapsed coordinates t_1 = s_1, t_k = s_k prod_{j<k} (1 - s_j), t_d = remainder,
// with Jacobian prod_k (1 - s_k)^(d-1-k).
std::vector<SimplexNode> simplex_rule(std::size_t d, std::size_t n) {
  if (d == 1) return {SimplexNode{{1.0}, 1.0}};
  std::vector<double> x, w;
  gauss_legendre01(n, x, w);
  std::vector<SimplexNode> out;
  std::vector<std::size_t> idx(d - 1, 0);
  while (true) {
    SimplexNode node{std::vector<double>(d), 1.0};
    double rest = 1.0;
    for (std::size_t k = 0; k + 1 < d; ++k) {
      const double s = x[idx[k]];
      node.t[k] = rest * s;
      node.weight *= w[idx[k]] * std::pow(1.0 - s, static_cast<double>(d - 2 - k));
      rest *= (1.0 - s);
    }
    node.t[d - 1] = rest;
    out.push_back(std::move(node));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

}  // namespace

QuadratureRule build_rule_counts(std::size_t d, std::size_t radial, std::size_t simplex, std::size_t angular,
                                 unsigned level, std::size_t node_cap) {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  if (radial == 0 || angular == 0 || (d > 1 && simplex == 0))
    throw Error(ErrorKind::InvalidArgument, "node counts must be positive");

  double total = static_cast<double>(radial);
  for (std::size_t i = 0; i + 1 < d; ++i) total *= static_cast<double>(simplex);
  for (std::size_t i = 0; i < d; ++i) total *= static_cast<double>(angular);
  if (total > static_cast<double>(node_cap))
    throw Error(ErrorKind::ResourceLimit, "rule needs " + std::to_string(static_cast<long long>(total)) +
                                              " nodes, cap is " + std::to_string(node_cap));

  std::vector<double> ur, wr;
  gauss_legendre01(radial, ur, wr);
  const auto simplex_nodes = simplex_rule(d, simplex);

  std::vector<cplx> phases(angular);
  for (std::size_t k = 0; k < angular; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angular);
    phases[k] = {std::cos(theta), std::sin(theta)};
  }
  const double angular_weight = std::pow(2.0 * std::numbers::pi / static_cast<double>(angular), static_cast<double>(d));

  QuadratureRule rule;
  rule.d_ = d;
  rule.level_ = level;
  rule.radial_ = radial;
  rule.simplex_ = (d > 1) ? simplex : 1;
  rule.angular_ = angular;
  const auto n = static_cast<Eigen::Index>(total);
  rule.nodes_.resize(static_cast<Eigen::Index>(d), n);
  rule.weights_.resize(n);
  rule.one_plus_s_.resize(static_cast<std::size_t>(n));

  std::vector<std::size_t> ang(d, 0);
  Eigen::Index col = 0;
  for (std::size_t a = 0; a < radial; ++a) {
    const double u = ur[a];
    const double big_s = u / (1.0 - u);
    const double wu = wr[a] * std::pow(u, static_cast<double>(d - 1));
    for (const auto& sn : simplex_nodes) {
      std::vector<double> radius(d);
      for (std::size_t i = 0; i < d; ++i) radius[i] = std::sqrt(big_s * sn.t[i]);
      std::fill(ang.begin(), ang.end(), 0);
      while (true) {
        for (std::size_t i = 0; i < d; ++i) rule.nodes_(static_cast<Eigen::Index>(i), col) = radius[i] * phases[ang[i]];
        rule.weights_(col) = wu * sn.weight * angular_weight;
        rule.one_plus_s_[static_cast<std::size_t>(col)] = 1.0 / (1.0 - u);
        ++col;
        std::size_t k = 0;
        while (k < d && ++ang[k] == angular) ang[k++] = 0;
        if (k == d) break;
      }
    }
  }
  return rule;
}

QuadratureRule build_rule(std::size_t d, unsigned level, std::size_t node_cap) {
  if (level == 0) throw Error(ErrorKind::InvalidArgument, "level must be >= 1");
  return build_rule_counts(d, 8u * level, 4u * level, 4u * level, level, node_cap);
}

cplx pairwise_sum(std::span<const cplx> values) {
  if (values.size() <= 16) {
    cplx s{};
    for (const auto& v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

cplx weighted_sum(std::span<const cplx> values, const Eigen::VectorXd& weights) {
  std::vector<cplx> terms(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) terms[k] = weights(static_cast<Eigen::Index>(k)) * values[k];
  return pairwise_sum(terms);
}

namespace {

cplx evaluate(const Integrand& f, const QuadratureRule& rule) {
  std::vector<cplx> values(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const ChartPoint p = rule.point(k);
    const cplx v = f(p);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::string where = "node " + std::to_string(k) + " at (";
      for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i) where += ", ";
        where += std::to_string(p[i].real()) + (p[i].imag() < 0 ? "-" : "+") + std::to_string(std::abs(p[i].imag())) + "i";
      }
      throw Error(ErrorKind::NonFiniteIntegrand, where + ")");
    }
    values[k] = v;
  }
  return weighted_sum(values, rule.weights());
}

}  // namespace

IntegrationResult integrate(const Integrand& f, const QuadratureRule& rule) {
  const cplx fine = evaluate(f, rule);
  QuadratureRule coarse = (rule.level() > 1)
                              ? build_rule(rule.dim(), rule.level() - 1)
                              : build_rule_counts(rule.dim(), std::max<std::size_t>(1, rule.radial_count() / 2),
                                                  std::max<std::size_t>(1, rule.simplex_count() / 2),
                                                  std::max<std::size_t>(1, rule.angular_count() / 2), 0);
  const cplx rough = evaluate(f, coarse);
  return {fine, std::abs(fine - rough)};
}

double log_moment(const MultiIndex& index, unsigned m, std::size_t d) {
  if (index.dim() != d) throw Error(ErrorKind::DimensionMismatch, "index dimension differs from d");
  const unsigned q = index.degree();
  if (q > m)
    throw Error(ErrorKind::IndexOutOfRange,
                "|I| = " + std::to_string(q) + " exceeds m = " + std::to_string(m) + "; the integral diverges");
  double s = static_cast<double>(d) * std::log(2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < d; ++i) s += std::lgamma(index[i] + 1.0);
  s += std::lgamma(static_cast<double>(m - q) + 1.0) - std::lgamma(static_cast<double>(m + d) + 1.0);
  return s;
}

double moment(const MultiIndex& index, unsigned m, std::size_t d) { return std::exp(log_moment(index, m, d)); }

}  // namespace berezin::quadrature
