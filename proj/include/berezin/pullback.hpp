#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "berezin/chart_point.hpp"
#include "berezin/hilbert.hpp"
#include "berezin/operators.hpp"

// Quantization of M^{2d} minus a skeleton, pulled back through a diffeomorphism
// tau of the top cell onto the chart C^d. Sections, operators, symbols and star
// products on the manifold side are defined by delegation to the chart.
namespace berezin::pullback {

/// Real coordinates (x_1, y_1, ..., x_d, y_d) of the parameter domain P.
using ManifoldPoint = std::vector<double>;

enum class ParameterDomain { UnitCube, Euclidean };

struct DiffeoChart {
  std::size_t d = 1;
  ParameterDomain domain = ParameterDomain::Euclidean;
  std::function<ChartPoint(const ManifoldPoint&)> forward;
  std::function<ManifoldPoint(const ChartPoint&)> inverse;
  /// 2d x 2d derivative of (Re tau_1, Im tau_1, ...) in p; empty means central differences.
  std::function<Eigen::MatrixXd(const ManifoldPoint&)> jacobian;
  std::string descriptor;
  nlohmann::json parameters = nlohmann::json::object();

  bool contains(const ManifoldPoint& p) const;
  /// tau(p); throws OutOfDomain outside P.
  ChartPoint map(const ManifoldPoint& p) const;
  ManifoldPoint unmap(const ChartPoint& z) const;
  Eigen::MatrixXd jacobian_at(const ManifoldPoint& p) const;

  nlohmann::json to_json() const;
};

/// tau = identity on R^{2d} = C^d.
DiffeoChart identity_chart(std::size_t d);

/// The torus cell: (u, v) in (0,1)^2 -> tan(pi u - pi/2) + i tan(pi v - pi/2).
/// The open square is T^2 minus the two generating circles A and B.
DiffeoChart torus_chart();

/// tau' = factor * tau (a rotation when |factor| = 1).
DiffeoChart scaled(const DiffeoChart& chart, cplx factor);

/// The open unit disk of the chart (the upper hemisphere under stereographic
/// projection) as the image of the torus cell: w -> w / sqrt(1 + |w|^2).
cplx torus_cell_to_hemisphere(const ManifoldPoint& p);

/// h with h dS = tau^* dV; dS has the given density against Lebesgue measure on P
/// (Lebesgue itself when empty), and h comes from |det J|.
struct MeasureFactor {
  std::function<double(const ManifoldPoint&)> h;
  std::function<double(const ManifoldPoint&)> surface_density;
  double operator()(const ManifoldPoint& p) const { return h(p); }
  /// Density of dS against Lebesgue measure on P.
  double dS(const ManifoldPoint& p) const { return surface_density ? surface_density(p) : 1.0; }
};

MeasureFactor measure_factor(const DiffeoChart& chart, std::function<double(const ManifoldPoint&)> surface_density = {});

/// Nodes and Lebesgue weights on P. Each axis of the unit cube gets composite
/// Gauss-Legendre on panels refined geometrically (ratio 1/4) toward both faces,
/// since the pulled-back integrands have corner singularities there; R^{2d} is
/// reached through x = tan(pi (s - 1/2)) per axis.
struct ParameterRuleOptions {
  unsigned grading_levels = 12;
  unsigned middle_panels = 8;
  unsigned nodes_per_panel = 12;
};

struct ParameterRule {
  std::vector<ManifoldPoint> nodes;
  std::vector<double> weights;
};

ParameterRule parameter_rule(const DiffeoChart& chart, const ParameterRuleOptions& options = {});

/// tau^*(s)(p) = s(tau(p)) for the section with coefficients v.
cplx pull_section(const DiffeoChart& chart, const hilbert::BasisSpec& spec, const hilbert::HilbertVector& v,
                  const ManifoldPoint& p);

struct PulledOperator {
  operators::OperatorMatrix base;
  DiffeoChart chart;
};

/// (A s)(tau(p)).
cplx pulled_apply(const PulledOperator& op, const hilbert::HilbertVector& v, const ManifoldPoint& p);

/// A(tau(p), conj(tau(q))).
cplx pulled_symbol(const PulledOperator& op, const ManifoldPoint& p, const ManifoldPoint& q);

/// (A1 * A2)(tau(p), conj(tau(p))); both operators must live on the same chart.
cplx pulled_star(const PulledOperator& op1, const PulledOperator& op2, const ManifoldPoint& p);

/// c(m) int_P conj(v1~) v2~ (1+|tau|^2)^-m h dS, integrated on P.
cplx inner_product_on_manifold(const DiffeoChart& chart, const MeasureFactor& h, const hilbert::BasisSpec& spec,
                               const hilbert::HilbertVector& v1, const hilbert::HilbertVector& v2,
                               const ParameterRule& rule);

/// Manifold-side Toeplitz matrix <Psi~_I, f~ Psi~_J> computed on P.
Eigen::MatrixXcd pulled_toeplitz(const DiffeoChart& chart, const MeasureFactor& h, const hilbert::BasisSpec& spec,
                                 const std::function<cplx(const ManifoldPoint&)>& f, const ParameterRule& rule);

/// Bijection of P with its inverse.
struct ManifoldMap {
  std::function<ManifoldPoint(const ManifoldPoint&)> forward;
  std::function<ManifoldPoint(const ManifoldPoint&)> inverse;
};

ManifoldMap identity_map();

/// tau^-1 o (z -> factor z) o tau.
ManifoldMap induced_map(const DiffeoChart& chart, cplx factor);

struct EquivalenceReport {
  double inner_product_deviation = 0.0;  ///< max |<U Psi_I, U Psi_J>_B - delta_IJ|
  double kernel_deviation = 0.0;         ///< max relative |K_B(psi p, psi q) - K_A(p, q)|
  bool equivalent = false;               ///< both deviations <= tolerance
};

inline constexpr double kEquivalenceTol = 1e-6;

/// Compares the quantizations induced by two charts through the map psi, with
/// (U s~)(p) = s~(psi^-1(p)) as the candidate Hilbert-space map.
EquivalenceReport equivalence_check(const DiffeoChart& chart_a, const DiffeoChart& chart_b, const ManifoldMap& psi,
                                    const hilbert::BasisSpec& spec, std::size_t samples = 20, std::uint64_t seed = 7);

}  // namespace berezin::pullback
