#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "berezin/geometry.hpp"

// Bounded rational symbols that extend continuously to CP^d, with analytic
// Wirtinger derivatives. With s = 1 + |mu|^2:
//   one  = 1
//   sx   = Re(mu_1) / s       (sup 1/2)
//   sy   = Im(mu_1) / s       (sup 1/2)
//   rho  = |mu|^2 / s         (sup 1, reached at chart infinity)
//   cap  = 1 / s              (sup 1, reached at the origin)
//   sx2  = sx^2               (sup 1/4)
//   sxy  = sx sy              (sup 1/8)
// The first five are affine in the coordinates of the round sphere, so their
// Toeplitz operators span a copy of su(2); sx2 and sxy are quadratic.
namespace berezin::test_functions {

/// Known supremum of |f| over CP^d for each shipped id.
double known_sup(std::string_view id);

/// Throws InvalidArgument for an unknown id.
geometry::ScalarField shipped(std::string_view id, std::size_t d);

std::vector<std::string> shipped_ids();

/// Pointwise product f g, derivatives by the product rule.
geometry::ScalarField product(const geometry::ScalarField& f, const geometry::ScalarField& g);

/// Real linear combination a f + b g, derivatives included.
geometry::ScalarField combine(double a, const geometry::ScalarField& f, double b, const geometry::ScalarField& g);

}  // namespace berezin::test_functions
