#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "berezin/chart_point.hpp"
#include "berezin/hilbert.hpp"

// Covariant (Berezin) symbols of operators on the level-m space, the integral
// star product and the correspondence-principle sweep.
namespace berezin::operators {

/// N x N matrix A_IJ = <Psi_I, A Psi_J> together with the basis it acts on.
struct OperatorMatrix {
  hilbert::BasisSpec spec;
  Eigen::MatrixXcd entries;

  OperatorMatrix(hilbert::BasisSpec s, Eigen::MatrixXcd a);

  static OperatorMatrix identity(const hilbert::BasisSpec& s);
  OperatorMatrix adjoint() const { return {spec, entries.adjoint()}; }
};

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

/// Overlaps below this (relative to the coherent-state norms) count as a vanishing kernel.
inline constexpr double kDegenerateKernelTol = 1e-14;

/// A(nu, conj(mu)) = <psi_nu, A psi_mu> / <psi_nu, psi_mu>.
cplx symbol_eval(const OperatorMatrix& a, const ChartPoint& nu, const ChartPoint& mu);

/// Two-point symbol S(x, y) = A(x, conj(y)).
using Symbol = std::function<cplx(const ChartPoint&, const ChartPoint&)>;

Symbol symbol_of(const OperatorMatrix& a);

/// Rebuilds the matrix from its symbol through
/// (A f)(mu) = c(m) int A(mu, conj(nu)) f(nu) L_m(mu, conj(nu)) (1+|nu|^2)^-m dV(nu).
OperatorMatrix operator_from_symbol(const hilbert::WeightedBasis& wb, const Symbol& symbol);

/// Quadrature nodes with normalized coherent vectors tabulated, for star products.
class CoherentTable {
 public:
  CoherentTable(const hilbert::BasisSpec& spec, quadrature::QuadratureRule rule);
  explicit CoherentTable(const hilbert::BasisSpec& spec);

  const hilbert::BasisSpec& spec() const noexcept { return spec_; }
  const quadrature::QuadratureRule& rule() const noexcept { return rule_; }
  /// n x N, row k = psi_{nu_k} / ||psi_{nu_k}||.
  const Eigen::MatrixXcd& normalized() const noexcept { return table_; }

 private:
  hilbert::BasisSpec spec_;
  quadrature::QuadratureRule rule_;
  Eigen::MatrixXcd table_;
};

/// (A1 * A2)(mu, conj(mu)) = c(m) int A1(mu, conj(nu)) A2(nu, conj(mu)) exp(m phi(mu|nu)) dV(nu).
cplx star_product(const CoherentTable& table, const OperatorMatrix& a1, const OperatorMatrix& a2,
                  const ChartPoint& mu);
cplx star_product(const OperatorMatrix& a1, const OperatorMatrix& a2, const ChartPoint& mu);

/// c(m) int exp(m phi(mu|nu)) dV(nu); equals 1.
double star_normalization(const CoherentTable& table, const ChartPoint& mu);

/// Least-squares slope of ln(y) against ln(x); empty when fewer than two usable points.
std::optional<double> fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergenceRow {
  unsigned m;
  double e0;  ///< |(A1*A2)(mu) - A1(mu) A2(mu)|
  double e1;  ///< |m (A1*A2 - A2*A1)(mu) - i {A1, A2}(mu)|
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  std::optional<double> slope_e0;
  std::optional<double> slope_e1;
};

using OperatorBuilder = std::function<OperatorMatrix(unsigned m)>;

/// Correspondence-principle errors over an m grid at a fixed point.
ConvergenceTable correspondence_sweep(const OperatorBuilder& first, const OperatorBuilder& second,
                                      const std::vector<unsigned>& m_list, const ChartPoint& mu);

}  // namespace berezin::operators
