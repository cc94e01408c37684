#pragma once

#include <vector>

#include <Eigen/Dense>

#include "berezin/geometry.hpp"
#include "berezin/hilbert.hpp"

// Berezin-Toeplitz quantization on the chart: T_f = Pi^m (f .) restricted to the
// level-m space, with matrix entries <Psi_I, f Psi_J>.
namespace berezin::toeplitz {

/// Coefficients <Psi_I, g> of the orthogonal projection of g onto the level-m space.
hilbert::HilbertVector project(const hilbert::WeightedBasis& wb, const hilbert::Function& g);

Eigen::MatrixXcd toeplitz_matrix(const hilbert::WeightedBasis& wb, const hilbert::Function& f);

/// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& t);

/// Toeplitz matrix of the pointwise bracket {f, g}.
Eigen::MatrixXcd bracket_matrix(const hilbert::WeightedBasis& wb, const geometry::ScalarField& f,
                                const geometry::ScalarField& g);

/// || m [T_f, T_g] - i T_{f,g} ||.
double commutator_defect(const hilbert::WeightedBasis& wb, const geometry::ScalarField& f,
                         const geometry::ScalarField& g);

/// Estimate of sup |f| over CP^d: a compactified polar grid (including points near
/// chart infinity), refined by compass search around the best grid point.
double sup_estimate(const hilbert::Function& f, std::size_t d, unsigned grid = 64);

struct NormRow {
  unsigned m;
  double norm;
  double sup;
  double defect;  ///< sup - norm
};

std::vector<NormRow> norm_sweep(const hilbert::Function& f, std::size_t d, const std::vector<unsigned>& m_list);

struct CommutatorRow {
  unsigned m;
  double defect;
};

std::vector<CommutatorRow> commutator_sweep(const geometry::ScalarField& f, const geometry::ScalarField& g,
                                            std::size_t d, const std::vector<unsigned>& m_list);

}  // namespace berezin::toeplitz
