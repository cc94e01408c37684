#include "berezin/pullback.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "berezin/error.hpp"
#include "berezin/geometry.hpp"
#include "berezin/quadrature.hpp"

namespace berezin::pullback {

namespace {

constexpr double kPi = std::numbers::pi;

void require_point_size(const DiffeoChart& chart, const ManifoldPoint& p) {
  if (p.size() != 2 * chart.d) {
    throw Error(ErrorKind::DimensionMismatch, "manifold point has " + std::to_string(p.size()) +
                                                  " coordinates, chart expects " + std::to_string(2 * chart.d));
  }
}

void require_spec_dim(const DiffeoChart& chart, const hilbert::BasisSpec& spec) {
  if (spec.dim() != chart.d) throw Error(ErrorKind::DimensionMismatch, "chart and basis dimensions differ");
}

void require_coeffs(const hilbert::BasisSpec& spec, const hilbert::HilbertVector& v) {
  if (static_cast<std::size_t>(v.coeffs.size()) != spec.size()) {
    throw Error(ErrorKind::DimensionMismatch, "vector length does not match the basis size");
  }
}

// Real 2x2 block of multiplication by a complex number.
Eigen::Matrix2d complex_block(cplx a) {
  Eigen::Matrix2d b;
  b << a.real(), -a.imag(), a.imag(), a.real();
  return b;
}

std::string format_complex(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

double weight_factor(const hilbert::BasisSpec& spec, const ChartPoint& z) {
  return spec.c_m() * std::pow(1.0 + z.norm2(), -static_cast<double>(spec.level_m()));
}

}  // namespace

bool DiffeoChart::contains(const ManifoldPoint& p) const {
  if (p.size() != 2 * d) return false;
  for (double x : p) {
    if (!std::isfinite(x)) return false;
    if (domain == ParameterDomain::UnitCube && !(x > 0.0 && x < 1.0)) return false;
  }
  return true;
}

ChartPoint DiffeoChart::map(const ManifoldPoint& p) const {
  require_point_size(*this, p);
  if (!contains(p)) throw Error(ErrorKind::OutOfDomain, "point outside the parameter domain of chart " + descriptor);
  return forward(p);
}

ManifoldPoint DiffeoChart::unmap(const ChartPoint& z) const {
  if (z.dim() != d) throw Error(ErrorKind::DimensionMismatch, "chart point dimension differs from chart");
  return inverse(z);
}

Eigen::MatrixXd DiffeoChart::jacobian_at(const ManifoldPoint& p) const {
  require_point_size(*this, p);
  if (!contains(p)) throw Error(ErrorKind::OutOfDomain, "point outside the parameter domain of chart " + descriptor);
  if (jacobian) return jacobian(p);
  const std::size_t n = 2 * d;
  Eigen::MatrixXd jac(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    double h = 1e-6 * std::max(1.0, std::abs(p[c]));
    if (domain == ParameterDomain::UnitCube) h = std::min(h, 0.5 * std::min(p[c], 1.0 - p[c]));
    ManifoldPoint plus = p, minus = p;
    plus[c] += h;
    minus[c] -= h;
    const ChartPoint zp = forward(plus), zm = forward(minus);
    for (std::size_t i = 0; i < d; ++i) {
      const cplx diff = (zp[i] - zm[i]) / (2.0 * h);
      jac(2 * i, c) = diff.real();
      jac(2 * i + 1, c) = diff.imag();
    }
  }
  return jac;
}

nlohmann::json DiffeoChart::to_json() const {
  return {{"descriptor", descriptor},
          {"d", d},
          {"domain", domain == ParameterDomain::UnitCube ? "unit_cube" : "euclidean"},
          {"parameters", parameters}};
}

DiffeoChart identity_chart(std::size_t d) {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "chart dimension must be positive");
  DiffeoChart c;
  c.d = d;
  c.domain = ParameterDomain::Euclidean;
  c.forward = [d](const ManifoldPoint& p) {
    std::vector<cplx> z(d);
    for (std::size_t i = 0; i < d; ++i) z[i] = {p[2 * i], p[2 * i + 1]};
    return ChartPoint(std::move(z));
  };
  c.inverse = [d](const ChartPoint& z) {
    ManifoldPoint p(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
      p[2 * i] = z[i].real();
      p[2 * i + 1] = z[i].imag();
    }
    return p;
  };
  c.jacobian = [d](const ManifoldPoint&) { return Eigen::MatrixXd::Identity(2 * d, 2 * d).eval(); };
  c.descriptor = "identity(d=" + std::to_string(d) + ")";
  return c;
}

DiffeoChart torus_chart() {
  DiffeoChart c;
  c.d = 1;
  c.domain = ParameterDomain::UnitCube;
  c.forward = [](const ManifoldPoint& p) {
    return ChartPoint{cplx{std::tan(kPi * p[0] - kPi / 2), std::tan(kPi * p[1] - kPi / 2)}};
  };
  c.inverse = [](const ChartPoint& z) {
    return ManifoldPoint{(std::atan(z[0].real()) + kPi / 2) / kPi, (std::atan(z[0].imag()) + kPi / 2) / kPi};
  };
  c.jacobian = [](const ManifoldPoint& p) {
    const double x = std::tan(kPi * p[0] - kPi / 2), y = std::tan(kPi * p[1] - kPi / 2);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, 2);
    j(0, 0) = kPi * (1.0 + x * x);
    j(1, 1) = kPi * (1.0 + y * y);
    return j;
  };
  c.descriptor = "torus";
  c.parameters = {{"map", "(u,v) -> tan(pi u - pi/2) + i tan(pi v - pi/2)"},
                  {"hemisphere", "w -> w / sqrt(1 + |w|^2)"}};
  return c;
}

DiffeoChart scaled(const DiffeoChart& chart, cplx factor) {
  if (!std::isfinite(factor.real()) || !std::isfinite(factor.imag()) || std::abs(factor) == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "scaling factor must be finite and nonzero");
  }
  DiffeoChart c;
  c.d = chart.d;
  c.domain = chart.domain;
  auto fwd = chart.forward;
  auto inv = chart.inverse;
  c.forward = [fwd, factor](const ManifoldPoint& p) {
    const ChartPoint z = fwd(p);
    std::vector<cplx> out(z.coords().begin(), z.coords().end());
    for (auto& w : out) w *= factor;
    return ChartPoint(std::move(out));
  };
  c.inverse = [inv, factor](const ChartPoint& z) {
    std::vector<cplx> out(z.coords().begin(), z.coords().end());
    for (auto& w : out) w /= factor;
    return inv(ChartPoint(std::move(out)));
  };
  const DiffeoChart base = chart;
  c.jacobian = [base, factor](const ManifoldPoint& p) {
    Eigen::MatrixXd j = base.jacobian_at(p);
    const Eigen::Matrix2d b = complex_block(factor);
    for (std::size_t i = 0; i < base.d; ++i) {
      j.middleRows(2 * i, 2) = (b * j.middleRows(2 * i, 2)).eval();
    }
    return j;
  };
  c.descriptor = chart.descriptor + "*scale(" + format_complex(factor) + ")";
  c.parameters = {{"base", chart.to_json()}, {"factor", {factor.real(), factor.imag()}}};
  return c;
}

cplx torus_cell_to_hemisphere(const ManifoldPoint& p) {
  static const DiffeoChart chart = torus_chart();
  const cplx w = chart.map(p)[0];
  return w / std::sqrt(1.0 + std::norm(w));
}

MeasureFactor measure_factor(const DiffeoChart& chart, std::function<double(const ManifoldPoint&)> surface_density) {
  MeasureFactor m;
  m.surface_density = surface_density;
  m.h = [chart, surface_density](const ManifoldPoint& p) {
    const double det = std::abs(chart.jacobian_at(p).determinant());
    const double ds = surface_density ? surface_density(p) : 1.0;
    if (!(ds > 0.0)) throw Error(ErrorKind::InvalidArgument, "surface density must be positive");
    return geometry::lebesgue_density(chart.map(p)) * det / ds;
  };
  return m;
}

ParameterRule parameter_rule(const DiffeoChart& chart, const ParameterRuleOptions& options) {
  if (options.middle_panels == 0 || options.nodes_per_panel == 0) {
    throw Error(ErrorKind::InvalidArgument, "parameter rule needs at least one panel and one node");
  }
  std::vector<double> breaks{0.0};
  for (unsigned k = options.grading_levels; k >= 1; --k) breaks.push_back(0.5 * std::pow(0.25, k));
  const double lo = breaks.back(), hi = 1.0 - lo;
  for (unsigned j = 1; j < options.middle_panels; ++j) breaks.push_back(lo + (hi - lo) * j / options.middle_panels);
  for (unsigned k = 1; k <= options.grading_levels; ++k) breaks.push_back(1.0 - 0.5 * std::pow(0.25, k));
  breaks.push_back(1.0);

  std::vector<double> gx, gw;
  quadrature::gauss_legendre01(options.nodes_per_panel, gx, gw);
  std::vector<double> x, wx;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double width = breaks[i + 1] - breaks[i];
    for (std::size_t k = 0; k < gx.size(); ++k) {
      const double s = breaks[i] + width * gx[k];
      if (chart.domain == ParameterDomain::UnitCube) {
        x.push_back(s);
        wx.push_back(width * gw[k]);
      } else {
        const double t = std::tan(kPi * (s - 0.5));
        x.push_back(t);
        wx.push_back(width * gw[k] * kPi * (1.0 + t * t));
      }
    }
  }
  const std::size_t per_axis = x.size();
  const std::size_t axes = 2 * chart.d;
  const double total = std::pow(static_cast<double>(per_axis), static_cast<double>(axes));
  if (total > static_cast<double>(quadrature::kDefaultNodeCap)) {
    throw Error(ErrorKind::ResourceLimit, "parameter rule needs " + std::to_string(total) + " nodes");
  }
  ParameterRule rule;
  const std::size_t n = static_cast<std::size_t>(total);
  rule.nodes.reserve(n);
  rule.weights.reserve(n);
  std::vector<std::size_t> idx(axes, 0);
  for (std::size_t k = 0; k < n; ++k) {
    ManifoldPoint p(axes);
    double wt = 1.0;
    for (std::size_t a = 0; a < axes; ++a) {
      p[a] = x[idx[a]];
      wt *= wx[idx[a]];
    }
    rule.nodes.push_back(std::move(p));
    rule.weights.push_back(wt);
    for (std::size_t a = axes; a-- > 0;) {
      if (++idx[a] < per_axis) break;
      idx[a] = 0;
    }
  }
  return rule;
}

cplx pull_section(const DiffeoChart& chart, const hilbert::BasisSpec& spec, const hilbert::HilbertVector& v,
                  const ManifoldPoint& p) {
  require_spec_dim(chart, spec);
  require_coeffs(spec, v);
  return hilbert::evaluate(spec, v, chart.map(p));
}

cplx pulled_apply(const PulledOperator& op, const hilbert::HilbertVector& v, const ManifoldPoint& p) {
  require_spec_dim(op.chart, op.base.spec);
  require_coeffs(op.base.spec, v);
  const hilbert::HilbertVector image{op.base.entries * v.coeffs};
  return hilbert::evaluate(op.base.spec, image, op.chart.map(p));
}

cplx pulled_symbol(const PulledOperator& op, const ManifoldPoint& p, const ManifoldPoint& q) {
  require_spec_dim(op.chart, op.base.spec);
  return operators::symbol_eval(op.base, op.chart.map(p), op.chart.map(q));
}

cplx pulled_star(const PulledOperator& op1, const PulledOperator& op2, const ManifoldPoint& p) {
  if (op1.chart.descriptor != op2.chart.descriptor) {
    throw Error(ErrorKind::InvalidArgument, "star product of operators on different charts");
  }
  require_spec_dim(op1.chart, op1.base.spec);
  return operators::star_product(op1.base, op2.base, op1.chart.map(p));
}

cplx inner_product_on_manifold(const DiffeoChart& chart, const MeasureFactor& h, const hilbert::BasisSpec& spec,
                               const hilbert::HilbertVector& v1, const hilbert::HilbertVector& v2,
                               const ParameterRule& rule) {
  require_spec_dim(chart, spec);
  require_coeffs(spec, v1);
  require_coeffs(spec, v2);
  std::vector<cplx> terms(rule.nodes.size());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const ManifoldPoint& p = rule.nodes[k];
    const ChartPoint z = chart.map(p);
    const cplx a = hilbert::evaluate(spec, v1, z), b = hilbert::evaluate(spec, v2, z);
    terms[k] = rule.weights[k] * h.dS(p) * h(p) * weight_factor(spec, z) * std::conj(a) * b;
    if (!std::isfinite(terms[k].real()) || !std::isfinite(terms[k].imag())) {
      throw Error(ErrorKind::NonFiniteIntegrand, "non-finite manifold integrand at node " + std::to_string(k));
    }
  }
  return quadrature::pairwise_sum(terms);
}

Eigen::MatrixXcd pulled_toeplitz(const DiffeoChart& chart, const MeasureFactor& h, const hilbert::BasisSpec& spec,
                                 const std::function<cplx(const ManifoldPoint&)>& f, const ParameterRule& rule) {
  require_spec_dim(chart, spec);
  const std::size_t n = rule.nodes.size();
  Eigen::MatrixXcd values(n, spec.size());
  Eigen::VectorXcd weighted(n);
  for (std::size_t k = 0; k < n; ++k) {
    const ManifoldPoint& p = rule.nodes[k];
    const ChartPoint z = chart.map(p);
    values.row(k) = hilbert::basis_values(spec, z).transpose();
    weighted(k) = rule.weights[k] * h.dS(p) * h(p) * weight_factor(spec, z) * f(p);
  }
  return values.adjoint() * weighted.asDiagonal() * values;
}

ManifoldMap identity_map() {
  auto id = [](const ManifoldPoint& p) { return p; };
  return {id, id};
}

ManifoldMap induced_map(const DiffeoChart& chart, cplx factor) {
  const DiffeoChart a = chart;
  const DiffeoChart b = scaled(chart, factor);
  return {[a, b](const ManifoldPoint& p) { return a.unmap(b.map(p)); },
          [a, b](const ManifoldPoint& p) { return b.unmap(a.map(p)); }};
}

EquivalenceReport equivalence_check(const DiffeoChart& chart_a, const DiffeoChart& chart_b, const ManifoldMap& psi,
                                    const hilbert::BasisSpec& spec, std::size_t samples, std::uint64_t seed) {
  require_spec_dim(chart_a, spec);
  require_spec_dim(chart_b, spec);
  if (chart_a.domain != chart_b.domain) throw Error(ErrorKind::InvalidArgument, "charts have different domains");
  const std::size_t d = spec.dim();

  // (a) Gram matrix of U Psi_I = Psi_I o tau_A o psi^-1 in the B quantization,
  // pushed to the chart by tau_B: g_I(z) = Psi_I(tau_A(psi^-1(tau_B^-1(z)))).
  const hilbert::WeightedBasis wb(spec, quadrature::build_rule(d, spec.quadrature_level() + 1));
  const auto& rule = wb.rule();
  Eigen::MatrixXcd g(rule.size(), spec.size());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const ManifoldPoint p = psi.inverse(chart_b.unmap(rule.point(k)));
    g.row(k) = hilbert::basis_values(spec, chart_a.map(p)).transpose();
  }
  const Eigen::MatrixXcd gram = g.adjoint() * wb.weights().asDiagonal() * g;
  EquivalenceReport report;
  report.inner_product_deviation =
      (gram - Eigen::MatrixXcd::Identity(spec.size(), spec.size())).cwiseAbs().maxCoeff();

  // (b) kernels at sample pairs.
  std::mt19937_64 rng(seed);
  const bool cube = chart_a.domain == ParameterDomain::UnitCube;
  std::uniform_real_distribution<double> dist(cube ? 0.05 : -2.0, cube ? 0.95 : 2.0);
  auto draw = [&] {
    ManifoldPoint p(2 * d);
    for (auto& x : p) x = dist(rng);
    return p;
  };
  for (std::size_t s = 0; s < samples; ++s) {
    const ManifoldPoint p = draw(), q = draw();
    const ManifoldPoint pp = psi.forward(p), qq = psi.forward(q);
    const ManifoldPoint back = psi.inverse(pp);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (std::abs(back[i] - p[i]) > 1e-8 * std::max(1.0, std::abs(p[i]))) {
        throw Error(ErrorKind::InvalidArgument, "psi is not invertible on the sample set");
      }
    }
    const cplx ka = hilbert::kernel_L(spec, chart_a.map(p), chart_a.map(q));
    const cplx kb = hilbert::kernel_L(spec, chart_b.map(pp), chart_b.map(qq));
    const double rel = std::abs(kb - ka) / std::max(std::abs(ka), 1e-300);
    report.kernel_deviation = std::max(report.kernel_deviation, rel);
  }
  report.equivalent =
      report.inner_product_deviation <= kEquivalenceTol && report.kernel_deviation <= kEquivalenceTol;
  return report;
}

}  // namespace berezin::pullback
