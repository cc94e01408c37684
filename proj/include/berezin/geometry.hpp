#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "berezin/chart_point.hpp"

// Fubini-Study geometry on the affine chart U_0 = C^d of CP^d.
//
// Volume convention: |dmu ^ dmubar| = 2^d prod dx_i dy_i, so the Fubini-Study
// volume density against Lebesgue measure is 2^d (1 + |mu|^2)^-(d+1) and the
// total volume of CP^1 is 2*pi.
namespace berezin::geometry {

/// Pairs with |1 + mu.conj(nu)| below this are treated as lying on the excluded set T.
inline constexpr double kSingularPairTol = 1e-14;

/// log(1 + mu.conj(nu)) on the principal branch.
cplx fs_potential(const ChartPoint& mu, const ChartPoint& nu);

/// True when 1 + mu.conj(nu) is (numerically) a negative real, i.e. the pair sits on
/// the branch cut where fs_potential(mu, nu) and conj(fs_potential(nu, mu)) may disagree.
bool on_branch_cut(const ChartPoint& mu, const ChartPoint& nu, double tol = 1e-14);

/// g_ij = [(1+|mu|^2) delta_ij - conj(mu_i) mu_j] / (1+|mu|^2)^2.
Eigen::MatrixXcd fs_metric(const ChartPoint& mu);

/// Coefficients Omega_ij = i g_ij of the Kahler form sum Omega_ij dmu_i ^ dmubar_j.
Eigen::MatrixXcd fs_form(const ChartPoint& mu);

/// Inverse of fs_form(mu), in closed form -i (1+|mu|^2) (delta_ij + conj(mu_i) mu_j).
Eigen::MatrixXcd fs_form_inverse(const ChartPoint& mu);

/// Fubini-Study factor (1+|mu|^2)^-(d+1).
double volume_density(const ChartPoint& mu);

/// Density of dV against Lebesgue measure prod dx_i dy_i: 2^d (1+|mu|^2)^-(d+1).
double lebesgue_density(const ChartPoint& mu);

/// ln|1 + nu.conj(mu)|^2 - ln(1+|mu|^2) - ln(1+|nu|^2); non-positive, exactly zero on the diagonal.
double diastasis(const ChartPoint& mu, const ChartPoint& nu);

/// Function on the chart, optionally with analytic Wirtinger derivatives.
struct ScalarField {
  using Eval = std::function<cplx(const ChartPoint&)>;
  using Grad = std::function<std::vector<cplx>(const ChartPoint&)>;

  Eval value;
  Grad d_holo;      ///< (df/dmu_1, ..., df/dmu_d); empty means finite differences.
  Grad d_antiholo;  ///< (df/dmubar_1, ..., df/dmubar_d).

  cplx operator()(const ChartPoint& mu) const { return value(mu); }
};

struct Wirtinger {
  std::vector<cplx> holo;
  std::vector<cplx> antiholo;
};

/// Central-difference step used for Wirtinger derivatives at mu.
double fd_step(const ChartPoint& mu);

/// Wirtinger derivatives of f at mu, analytic when the field provides them.
Wirtinger wirtinger(const ScalarField& f, const ChartPoint& mu);

/// {t, s}(mu) = sum_ij W_ij (dt/dmubar_i ds/dmu_j - ds/dmubar_i dt/dmu_j) with W = fs_form_inverse(mu).
cplx poisson_bracket(const ScalarField& t, const ScalarField& s, const ChartPoint& mu);

}  // namespace berezin::geometry
