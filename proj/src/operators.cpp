#include "berezin/operators.hpp"

#include <cmath>

#include "berezin/error.hpp"
#include "berezin/geometry.hpp"

namespace berezin::operators {

OperatorMatrix::OperatorMatrix(hilbert::BasisSpec s, Eigen::MatrixXcd a) : spec(std::move(s)), entries(std::move(a)) {
  const auto n = static_cast<Eigen::Index>(spec.size());
  if (entries.rows() != n || entries.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "operator matrix is not N x N");
  if (!entries.allFinite()) throw Error(ErrorKind::InvalidArgument, "operator matrix has non-finite entries");
}

OperatorMatrix OperatorMatrix::identity(const hilbert::BasisSpec& s) {
  const auto n = static_cast<Eigen::Index>(s.size());
  return {s, Eigen::MatrixXcd::Identity(n, n)};
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.spec.size() != b.spec.size() || a.spec.dim() != b.spec.dim())
    throw Error(ErrorKind::DimensionMismatch, "operators act on different spaces");
  return {a.spec, a.entries * b.entries};
}

cplx symbol_eval(const OperatorMatrix& a, const ChartPoint& nu, const ChartPoint& mu) {
  require_same_dim(nu, mu);
  const Eigen::VectorXcd cn = hilbert::coherent_coefficients_normalized(a.spec, nu);
  const Eigen::VectorXcd cm = hilbert::coherent_coefficients_normalized(a.spec, mu);
  const cplx overlap = cn.dot(cm);
  if (std::abs(overlap) < kDegenerateKernelTol)
    throw Error(ErrorKind::DegenerateKernel, "L_m(nu, conj(mu)) vanishes");
  return cn.dot(a.entries * cm) / overlap;
}

Symbol symbol_of(const OperatorMatrix& a) {
  return [a](const ChartPoint& x, const ChartPoint& y) { return symbol_eval(a, x, y); };
}

namespace {

// S(mu, nu) L_m(mu, conj(nu)) = <psi_mu, A psi_nu>. On the zero set of L the symbol alone is undefined,
// but the product is an antiholomorphic polynomial of degree <= m in nu_1, so its mean over m + 2
// equispaced points on a circle around nu is exact.
cplx symbol_times_kernel(const hilbert::BasisSpec& spec, const Symbol& symbol, const ChartPoint& mu,
                         const ChartPoint& nu) {
  try {
    return symbol(mu, nu) * hilbert::kernel_L(spec, mu, nu);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateKernel) throw;
  }
  const unsigned count = spec.level_m() + 2;
  const double radius = 0.25 * (1.0 + std::sqrt(nu.norm2()));
  cplx sum{};
  for (unsigned k = 0; k < count; ++k) {
    std::vector<cplx> moved(nu.coords().begin(), nu.coords().end());
    moved[0] += std::polar(radius, (2.0 * M_PI * k + 0.5) / count);
    const ChartPoint shifted(std::move(moved));
    sum += symbol(mu, shifted) * hilbert::kernel_L(spec, mu, shifted);
  }
  return sum / static_cast<double>(count);
}

}  // namespace

OperatorMatrix operator_from_symbol(const hilbert::WeightedBasis& wb, const Symbol& symbol) {
  const auto& spec = wb.spec();
  const auto n = static_cast<Eigen::Index>(wb.nodes());
  const auto big_n = static_cast<Eigen::Index>(spec.size());
  std::vector<ChartPoint> points;
  points.reserve(wb.nodes());
  for (std::size_t k = 0; k < wb.nodes(); ++k) points.push_back(wb.rule().point(k));

  // W V: weighted basis values, reused for every row of the kernel.
  const Eigen::MatrixXcd wv = wb.weights().asDiagonal() * wb.values();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(big_n, big_n);
  Eigen::RowVectorXcd row(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const auto& mu = points[static_cast<std::size_t>(a)];
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto& nu = points[static_cast<std::size_t>(b)];
      row(b) = symbol_times_kernel(spec, symbol, mu, nu);
    }
    // (A Psi_J)(mu_a) for all J, then accumulate <Psi_I, .> with the node weight.
    const Eigen::RowVectorXcd applied = row * wv;
    acc.noalias() += wb.weights()(a) * wb.values().row(a).adjoint() * applied;
  }
  return {spec, acc};
}

CoherentTable::CoherentTable(const hilbert::BasisSpec& spec, quadrature::QuadratureRule rule)
    : spec_(spec), rule_(std::move(rule)) {
  const auto n = static_cast<Eigen::Index>(rule_.size());
  table_.resize(n, static_cast<Eigen::Index>(spec.size()));
  for (Eigen::Index k = 0; k < n; ++k)
    table_.row(k) = hilbert::coherent_coefficients_normalized(spec, rule_.point(static_cast<std::size_t>(k))).transpose();
}

CoherentTable::CoherentTable(const hilbert::BasisSpec& spec)
    : CoherentTable(spec, quadrature::build_rule(spec.dim(), spec.quadrature_level())) {}

namespace {

// Nodes closer than this to the excluded set {1 + mu.conj(nu) = 0} are rotated slightly.
constexpr double kJitterTol = 1e-12;
constexpr double kJitterAngle = 1e-7;

// <psi_mu, psi_nu> / (||psi_mu|| ||psi_nu||) from the closed form (1 + mu.conj(nu))^m, which keeps
// full relative accuracy near the zero set where a dot product of coefficients cancels.
cplx normalized_overlap(const ChartPoint& mu, const ChartPoint& nu, double m) {
  const cplx p = 1.0 + pairing(mu, nu);
  if (p == cplx{}) return {};
  const double log_mag = m * (std::log(std::abs(p)) - 0.5 * std::log1p(mu.norm2()) - 0.5 * std::log1p(nu.norm2()));
  return std::polar(std::exp(log_mag), m * std::arg(p));
}

template <class Integrand>
cplx star_integral(const CoherentTable& table, const ChartPoint& mu, Integrand&& integrand) {
  const auto& spec = table.spec();
  const auto& rule = table.rule();
  if (mu.dim() != spec.dim()) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from basis");
  const Eigen::VectorXcd cm = hilbert::coherent_coefficients_normalized(spec, mu);
  std::vector<cplx> terms(rule.size());
  const double m = static_cast<double>(spec.level_m());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    ChartPoint nu = rule.point(k);
    Eigen::VectorXcd cn = table.normalized().row(kk).transpose();
    cplx ov = normalized_overlap(mu, nu, m);
    if (std::abs(ov) < kJitterTol) {
      std::vector<cplx> moved(nu.coords().begin(), nu.coords().end());
      for (auto& c : moved) c *= std::polar(1.0, kJitterAngle);
      nu = ChartPoint(std::move(moved));
      cn = hilbert::coherent_coefficients_normalized(spec, nu);
      ov = normalized_overlap(mu, nu, m);
    }
    const double weight = std::exp(m * geometry::diastasis(mu, nu));
    terms[k] = integrand(cm, cn, ov) * weight;
  }
  return spec.c_m() * quadrature::weighted_sum(terms, rule.weights());
}

}  // namespace

cplx star_product(const CoherentTable& table, const OperatorMatrix& a1, const OperatorMatrix& a2,
                  const ChartPoint& mu) {
  const auto n = static_cast<Eigen::Index>(table.spec().size());
  if (a1.entries.rows() != n || a2.entries.rows() != n)
    throw Error(ErrorKind::DimensionMismatch, "operators do not match the table's basis");
  return star_integral(table, mu, [&](const Eigen::VectorXcd& cm, const Eigen::VectorXcd& cn, cplx ov) {
    const cplx s1 = cm.dot(a1.entries * cn) / ov;             // A1(mu, conj(nu))
    const cplx s2 = cn.dot(a2.entries * cm) / std::conj(ov);  // A2(nu, conj(mu))
    return s1 * s2;
  });
}

cplx star_product(const OperatorMatrix& a1, const OperatorMatrix& a2, const ChartPoint& mu) {
  return star_product(CoherentTable(a1.spec), a1, a2, mu);
}

double star_normalization(const CoherentTable& table, const ChartPoint& mu) {
  return star_integral(table, mu, [](const auto&, const auto&, cplx) { return cplx{1.0, 0.0}; }).real();
}

std::optional<double> fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return std::nullopt;
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

ConvergenceTable correspondence_sweep(const OperatorBuilder& first, const OperatorBuilder& second,
                                      const std::vector<unsigned>& m_list, const ChartPoint& mu) {
  ConvergenceTable out;
  for (unsigned m : m_list) {
    const OperatorMatrix a1 = first(m);
    const OperatorMatrix a2 = second(m);
    const CoherentTable table(a1.spec);
    const cplx s12 = star_product(table, a1, a2, mu);
    const cplx s21 = star_product(table, a2, a1, mu);
    const cplx d1 = symbol_eval(a1, mu, mu);
    const cplx d2 = symbol_eval(a2, mu, mu);
    const geometry::ScalarField f1{[&a1](const ChartPoint& x) { return symbol_eval(a1, x, x); }, {}, {}};
    const geometry::ScalarField f2{[&a2](const ChartPoint& x) { return symbol_eval(a2, x, x); }, {}, {}};
    const cplx bracket = geometry::poisson_bracket(f1, f2, mu);
    ConvergenceRow row{m, std::abs(s12 - d1 * d2),
                       std::abs(static_cast<double>(m) * (s12 - s21) - cplx{0.0, 1.0} * bracket)};
    out.rows.push_back(row);
  }
  std::vector<double> ms, e0, e1;
  for (const auto& r : out.rows) {
    ms.push_back(r.m);
    e0.push_back(r.e0);
    e1.push_back(r.e1);
  }
  out.slope_e0 = fit_loglog_slope(ms, e0);
  out.slope_e1 = fit_loglog_slope(ms, e1);
  return out;
}

}  // namespace berezin::operators
