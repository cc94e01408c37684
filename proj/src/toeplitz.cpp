#include "berezin/toeplitz.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "berezin/error.hpp"

namespace berezin::toeplitz {

namespace {

Eigen::VectorXcd sample(const hilbert::WeightedBasis& wb, const hilbert::Function& f) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(wb.nodes()));
  for (std::size_t k = 0; k < wb.nodes(); ++k) {
    const cplx x = f(wb.rule().point(k));
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw Error(ErrorKind::NonFiniteIntegrand, "function is not finite at node " + std::to_string(k));
    v(static_cast<Eigen::Index>(k)) = x;
  }
  return v;
}

Eigen::MatrixXcd compress(const hilbert::WeightedBasis& wb, const Eigen::VectorXcd& values) {
  const Eigen::VectorXcd w = wb.weights().cast<cplx>().cwiseProduct(values);
  return wb.values().adjoint() * w.asDiagonal() * wb.values();
}

}  // namespace

hilbert::HilbertVector project(const hilbert::WeightedBasis& wb, const hilbert::Function& g) {
  const Eigen::VectorXcd w = wb.weights().cast<cplx>().cwiseProduct(sample(wb, g));
  return {wb.values().adjoint() * w};
}

Eigen::MatrixXcd toeplitz_matrix(const hilbert::WeightedBasis& wb, const hilbert::Function& f) {
  return compress(wb, sample(wb, f));
}

double operator_norm(const Eigen::MatrixXcd& t) {
  if (t.size() == 0) return 0.0;
  if (!t.allFinite()) throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
  return svd.singularValues()(0);
}

Eigen::MatrixXcd bracket_matrix(const hilbert::WeightedBasis& wb, const geometry::ScalarField& f,
                                const geometry::ScalarField& g) {
  return toeplitz_matrix(wb, [&](const ChartPoint& mu) { return geometry::poisson_bracket(f, g, mu); });
}

double commutator_defect(const hilbert::WeightedBasis& wb, const geometry::ScalarField& f,
                         const geometry::ScalarField& g) {
  const Eigen::MatrixXcd tf = toeplitz_matrix(wb, f.value);
  const Eigen::MatrixXcd tg = toeplitz_matrix(wb, g.value);
  const Eigen::MatrixXcd tb = bracket_matrix(wb, f, g);
  const double m = static_cast<double>(wb.spec().level_m());
  const Eigen::MatrixXcd defect = m * (tf * tg - tg * tf) - cplx{0.0, 1.0} * tb;
  return operator_norm(defect);
}

namespace {

// Box coordinates (u, s_1..s_{d-1}, theta_1..theta_d) -> chart point, with
// |mu|^2 = u / (1 - u) and the simplex in collapsed coordinates.
ChartPoint from_box(const std::vector<double>& x, std::size_t d) {
  const double u = std::clamp(x[0], 0.0, 1.0 - 1e-15);
  const double big_s = u / (1.0 - u);
  std::vector<cplx> c(d);
  double rest = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    double t = rest;
    if (i + 1 < d) {
      const double s = std::clamp(x[1 + i], 0.0, 1.0);
      t = rest * s;
      rest *= (1.0 - s);
    }
    c[i] = std::polar(std::sqrt(big_s * t), x[d + i]);
  }
  return ChartPoint(std::move(c));
}

}  // namespace

double sup_estimate(const hilbert::Function& f, std::size_t d, unsigned grid) {
  const std::size_t dims = 2 * d;
  auto value = [&](const std::vector<double>& x) { return std::abs(f(from_box(x, d))); };

  // Grid: u includes 0 and points up to 1 - 1e-12 (the limit at chart infinity).
  const unsigned radial = grid;
  const unsigned other = (d == 1) ? grid : std::max(8u, grid / 4);
  std::vector<double> best_x(dims, 0.0);
  double best = -1.0;
  std::vector<unsigned> idx(dims, 0);
  std::vector<double> x(dims);
  while (true) {
    x[0] = std::min(static_cast<double>(idx[0]) / static_cast<double>(radial - 1), 1.0 - 1e-12);
    for (std::size_t i = 1; i < d; ++i) x[i] = static_cast<double>(idx[i]) / static_cast<double>(other - 1);
    for (std::size_t i = d; i < dims; ++i)
      x[i] = 2.0 * std::numbers::pi * static_cast<double>(idx[i]) / static_cast<double>(other);
    const double v = value(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
    std::size_t k = 0;
    while (k < dims) {
      const unsigned limit = (k == 0) ? radial : other;
      if (++idx[k] < limit) break;
      idx[k++] = 0;
    }
    if (k == dims) break;
  }

  // Compass search from the best grid point.
  std::vector<double> step(dims);
  step[0] = 1.0 / static_cast<double>(radial);
  for (std::size_t i = 1; i < d; ++i) step[i] = 1.0 / static_cast<double>(other);
  for (std::size_t i = d; i < dims; ++i) step[i] = 2.0 * std::numbers::pi / static_cast<double>(other);
  for (int iter = 0; iter < 2000; ++iter) {
    bool improved = false;
    for (std::size_t i = 0; i < dims; ++i) {
      for (double dir : {1.0, -1.0}) {
        std::vector<double> trial = best_x;
        trial[i] += dir * step[i];
        if (i == 0) trial[0] = std::clamp(trial[0], 0.0, 1.0 - 1e-12);
        if (i >= 1 && i < d) trial[i] = std::clamp(trial[i], 0.0, 1.0);
        const double v = value(trial);
        if (v > best) {
          best = v;
          best_x = trial;
          improved = true;
        }
      }
    }
    if (!improved) {
      double largest = 0.0;
      for (auto& s : step) {
        s *= 0.5;
        largest = std::max(largest, s);
      }
      if (largest < 1e-12) break;
    }
  }
  return best;
}

std::vector<NormRow> norm_sweep(const hilbert::Function& f, std::size_t d, const std::vector<unsigned>& m_list) {
  const double sup = sup_estimate(f, d);
  std::vector<NormRow> rows;
  for (unsigned m : m_list) {
    const auto spec = hilbert::build_basis(d, m);
    const hilbert::WeightedBasis wb(spec);
    const double norm = operator_norm(toeplitz_matrix(wb, f));
    rows.push_back({m, norm, sup, sup - norm});
  }
  return rows;
}

std::vector<CommutatorRow> commutator_sweep(const geometry::ScalarField& f, const geometry::ScalarField& g,
                                            std::size_t d, const std::vector<unsigned>& m_list) {
  std::vector<CommutatorRow> rows;
  for (unsigned m : m_list) {
    const auto spec = hilbert::build_basis(d, m);
    const hilbert::WeightedBasis wb(spec);
    rows.push_back({m, commutator_defect(wb, f, g)});
  }
  return rows;
}

}  // namespace berezin::toeplitz
