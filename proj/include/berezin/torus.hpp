#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "berezin/chart_point.hpp"
#include "berezin/pullback.hpp"

// Holonomy of the level-m connection on the torus cell.
//
// On the CP^1 chart the connection form is
//   theta_1 = Im(conj(mu) dmu) / (1 + |mu|^2),
// whose curvature 2 / (1+|mu|^2)^2 dx dy integrates to pi over the unit disk
// (the upper hemisphere). The level-m connection is m theta_1, m even.
// The generating loops A and B are carried to the quarter equator arcs
// E_1^1 (angle 0 -> pi/2) and E_1^2 (angle pi/2 -> pi).
namespace berezin::pullback {

/// Piecewise smooth chart curve on t in [0, segments]; each unit interval is smooth.
struct Curve {
  std::function<cplx(double)> point;
  /// d point / dt; central differences when empty.
  std::function<cplx(double)> velocity;
  std::size_t segments = 1;
};

inline constexpr std::size_t kMinSamplesPerSegment = 64;
inline constexpr double kPathRefineTol = 1e-6;

/// The constant curve at z.
Curve constant_curve(cplx z);

/// Arc of the unit circle (the equator) from angle a to angle b.
Curve equator_arc(double a, double b);

/// Counterclockwise circle of the given center and radius.
Curve circle(cplx center, double radius);

/// Image in the chart disk of a curve in the torus cell (0,1)^2.
Curve cell_curve(std::function<ManifoldPoint(double)> path, std::size_t segments = 1);

/// int_path theta_1 by composite Gauss-Legendre with the given nodes per segment.
double theta1_integral(const Curve& path, std::size_t samples_per_segment);

/// int_path m theta_1; the value at 2n nodes per segment, checked against n.
/// Throws OddLevel for odd m and PathTooCoarse when the two differ by more than 1e-6.
double connection_integral(const Curve& path, int m, std::size_t samples_per_segment = kMinSamplesPerSegment);

/// int_region omega over the disk of given center and radius, by polar Gauss-Legendre.
double disk_curvature(cplx center, double radius, std::size_t nodes = 64);

struct LoopSpec {
  long k1 = 0;
  long k2 = 0;
  /// Closed loop inside the open cell (|mu| < 1 on the chart).
  std::optional<Curve> tail;
};

struct HolonomyValue {
  cplx value;
  /// Unwrapped exponent: value = exp(i phase), phase = -m (k1 I1 + k2 I2 + I_tail).
  double phase;
};

HolonomyValue torus_holonomy(const LoopSpec& loop, int m, std::size_t samples_per_segment = kMinSamplesPerSegment);
cplx torus_holonomy(long k1, long k2, int m, const std::optional<Curve>& tail = std::nullopt,
                    std::size_t samples_per_segment = kMinSamplesPerSegment);

}  // namespace berezin::pullback
