#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "berezin/chart_point.hpp"
#include "berezin/multi_index.hpp"
#include "berezin/quadrature.hpp"

// The level-m Hilbert space on the chart: polynomials of degree <= m with the
// inner product <f, g> = c(m) int conj(f) g (1+|nu|^2)^-m dV, orthonormal basis
// Psi_I = mu^I / sqrt(D_I), coherent states and the reproducing kernel.
//
// The normalizations come from closed-form moments:
//   c(m)^-1 = (2 pi)^d m! / (m+d)!,   D_I = prod q_i! (m - |I|)! / m!.
namespace berezin::hilbert {

/// Radius beyond which coherent vectors are built in log-scaled arithmetic.
inline constexpr double kLogScaleRadius = 1e3;

class BasisSpec {
 public:
  BasisSpec(std::size_t d, unsigned m, unsigned level);

  std::size_t dim() const noexcept { return d_; }
  unsigned level_m() const noexcept { return m_; }
  unsigned quadrature_level() const noexcept { return level_; }
  std::size_t size() const noexcept { return indices_.size(); }
  double hbar() const noexcept { return 1.0 / static_cast<double>(m_); }
  double c_m() const noexcept { return c_m_; }

  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
  const std::vector<double>& normalizations() const noexcept { return D_; }

  /// Position of an index in the ordered basis; throws IndexOutOfRange if absent.
  std::size_t position(const MultiIndex& index) const;

  nlohmann::json to_json() const;

 private:
  std::size_t d_;
  unsigned m_;
  unsigned level_;
  std::vector<MultiIndex> indices_;
  std::vector<double> D_;
  std::vector<double> log_D_;
  double c_m_;
  std::map<MultiIndex, std::size_t> lookup_;

  friend Eigen::VectorXcd coherent_coefficients_normalized(const BasisSpec&, const ChartPoint&);
};

/// Basis at level m; the quadrature level defaults to quadrature::level_for(m).
BasisSpec build_basis(std::size_t d, unsigned m);
BasisSpec build_basis(std::size_t d, unsigned m, unsigned level);

/// Rebuilds a basis from its JSON form and checks the stored data against a fresh build.
BasisSpec basis_from_json(const nlohmann::json& doc);

/// Psi_I(mu) = mu^I / sqrt(D_I).
cplx basis_eval(const BasisSpec& spec, const MultiIndex& index, const ChartPoint& mu);

/// (Psi_I(mu))_I in basis order.
Eigen::VectorXcd basis_values(const BasisSpec& spec, const ChartPoint& mu);

/// Coefficients conj(Psi_I(mu)) of the coherent state psi_mu.
Eigen::VectorXcd coherent_coefficients(const BasisSpec& spec, const ChartPoint& mu);

/// psi_mu / ||psi_mu||, computed in log-scaled arithmetic for large |mu|.
Eigen::VectorXcd coherent_coefficients_normalized(const BasisSpec& spec, const ChartPoint& mu);

/// psi_mu(nu) = (1 + conj(mu).nu)^m.
cplx coherent_eval(const BasisSpec& spec, const ChartPoint& mu, const ChartPoint& nu);

/// L_m(mu, conj(nu)) = (1 + mu.conj(nu))^m.
cplx kernel_L(const BasisSpec& spec, const ChartPoint& mu, const ChartPoint& nu);

/// ln L_m(mu, conj(mu)) = m ln(1 + |mu|^2).
double log_kernel_diag(const BasisSpec& spec, const ChartPoint& mu);

/// Element of the Hilbert space in the orthonormal basis.
struct HilbertVector {
  Eigen::VectorXcd coeffs;

  double norm2() const { return coeffs.squaredNorm(); }
};

HilbertVector basis_vector(const BasisSpec& spec, std::size_t position);
HilbertVector coherent_state(const BasisSpec& spec, const ChartPoint& mu);

/// The polynomial sum_I v_I Psi_I evaluated at mu.
cplx evaluate(const BasisSpec& spec, const HilbertVector& v, const ChartPoint& mu);

/// Quadrature nodes with the level-m weight c(m) (1+|nu|^2)^-m folded in and the
/// basis tabulated at every node. Shared by all numeric inner products.
class WeightedBasis {
 public:
  WeightedBasis(const BasisSpec& spec, quadrature::QuadratureRule rule);
  explicit WeightedBasis(const BasisSpec& spec);

  const BasisSpec& spec() const noexcept { return spec_; }
  const quadrature::QuadratureRule& rule() const noexcept { return rule_; }
  std::size_t nodes() const noexcept { return rule_.size(); }
  /// c(m) w_k (1+|nu_k|^2)^-m.
  const Eigen::VectorXd& weights() const noexcept { return weights_; }
  /// n x N matrix Psi_J(nu_k).
  const Eigen::MatrixXcd& values() const noexcept { return values_; }

 private:
  BasisSpec spec_;
  quadrature::QuadratureRule rule_;
  Eigen::VectorXd weights_;
  Eigen::MatrixXcd values_;
};

using Function = std::function<cplx(const ChartPoint&)>;

/// <f, g> = c(m) int conj(f) g (1+|nu|^2)^-m dV by quadrature.
cplx inner_product(const WeightedBasis& wb, const Function& f, const Function& g);

/// Numeric Gram matrix <Psi_I, Psi_J>.
Eigen::MatrixXcd gram_matrix(const WeightedBasis& wb);

/// |<psi_mu, v> - v(mu)| with <psi_mu, v> integrated numerically against the closed-form psi_mu.
double reproducing_residual(const WeightedBasis& wb, const HilbertVector& v, const ChartPoint& mu);

/// |c(m) int <v1, psi_mu><psi_mu, v2> (1+|mu|^2)^-m dV(mu) - <v1, v2>|.
double resolution_check(const WeightedBasis& wb, const HilbertVector& v1, const HilbertVector& v2);

/// The integral in resolution_check itself.
cplx resolution_integral(const WeightedBasis& wb, const HilbertVector& v1, const HilbertVector& v2);

}  // namespace berezin::hilbert
