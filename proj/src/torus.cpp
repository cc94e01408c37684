#include "berezin/torus.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "berezin/error.hpp"
#include "berezin/quadrature.hpp"

namespace berezin::pullback {

namespace {

constexpr double kPi = std::numbers::pi;

void require_even(int m) {
  if (m % 2 != 0) throw Error(ErrorKind::OddLevel, "level m = " + std::to_string(m) + " is odd; the torus needs m even");
  if (m <= 0) throw Error(ErrorKind::InvalidArgument, "level m must be positive");
}

cplx velocity_at(const Curve& c, double t) {
  if (c.velocity) return c.velocity(t);
  const double h = 1e-6;
  const double seg = std::floor(t);
  // Stay inside the current smooth piece.
  const double lo = std::max(seg, t - h), hi = std::min(seg + 1.0, t + h);
  return (c.point(hi) - c.point(lo)) / (hi - lo);
}

double theta1(cplx mu, cplx dmu) {
  const double im = mu.real() * dmu.imag() - mu.imag() * dmu.real();
  return im / (1.0 + std::norm(mu));
}

}  // namespace

Curve constant_curve(cplx z) {
  return {[z](double) { return z; }, [](double) { return cplx{}; }, 1};
}

Curve equator_arc(double a, double b) {
  return {[a, b](double t) { return std::polar(1.0, a + (b - a) * t); },
          [a, b](double t) { return cplx{0.0, b - a} * std::polar(1.0, a + (b - a) * t); }, 1};
}

Curve circle(cplx center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "circle radius must be positive");
  return {[center, radius](double t) { return center + std::polar(radius, 2 * kPi * t); },
          [radius](double t) { return cplx{0.0, 2 * kPi} * std::polar(radius, 2 * kPi * t); }, 1};
}

Curve cell_curve(std::function<ManifoldPoint(double)> path, std::size_t segments) {
  return {[path](double t) { return torus_cell_to_hemisphere(path(t)); }, {}, segments};
}

double theta1_integral(const Curve& path, std::size_t samples_per_segment) {
  if (path.segments == 0) throw Error(ErrorKind::InvalidArgument, "curve has no segments");
  std::vector<double> x, w;
  quadrature::gauss_legendre01(samples_per_segment, x, w);
  std::vector<cplx> terms;
  terms.reserve(path.segments * samples_per_segment);
  for (std::size_t s = 0; s < path.segments; ++s) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double t = static_cast<double>(s) + x[k];
      const double v = w[k] * theta1(path.point(t), velocity_at(path, t));
      if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteIntegrand, "non-finite connection integrand");
      terms.emplace_back(v, 0.0);
    }
  }
  return quadrature::pairwise_sum(terms).real();
}

double connection_integral(const Curve& path, int m, std::size_t samples_per_segment) {
  require_even(m);
  if (samples_per_segment < kMinSamplesPerSegment) {
    throw Error(ErrorKind::PathTooCoarse, "path needs at least " + std::to_string(kMinSamplesPerSegment) +
                                              " samples per segment");
  }
  const double coarse = m * theta1_integral(path, samples_per_segment);
  const double fine = m * theta1_integral(path, 2 * samples_per_segment);
  if (std::abs(fine - coarse) > kPathRefineTol) {
    throw Error(ErrorKind::PathTooCoarse, "connection integral changed by " + std::to_string(std::abs(fine - coarse)) +
                                              " under refinement");
  }
  return fine;
}

double disk_curvature(cplx center, double radius, std::size_t nodes) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "disk radius must be positive");
  std::vector<double> x, w;
  quadrature::gauss_legendre01(nodes, x, w);
  std::vector<cplx> terms;
  terms.reserve(nodes * 2 * nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double r = radius * x[i];
    for (std::size_t j = 0; j < 2 * nodes; ++j) {
      const double phi = 2 * kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(2 * nodes);
      const double s = 1.0 + std::norm(center + std::polar(r, phi));
      terms.emplace_back(w[i] * radius * r * (2 * kPi / static_cast<double>(2 * nodes)) * 2.0 / (s * s), 0.0);
    }
  }
  return quadrature::pairwise_sum(terms).real();
}

HolonomyValue torus_holonomy(const LoopSpec& loop, int m, std::size_t samples_per_segment) {
  require_even(m);
  const double a = connection_integral(equator_arc(0.0, kPi / 2), m, samples_per_segment);
  const double b = connection_integral(equator_arc(kPi / 2, kPi), m, samples_per_segment);
  double tail = 0.0;
  if (loop.tail) {
    const Curve& c = *loop.tail;
    if (std::abs(c.point(0.0) - c.point(static_cast<double>(c.segments))) > 1e-10) {
      throw Error(ErrorKind::InvalidArgument, "tail is not a closed loop");
    }
    std::vector<double> x, w;
    quadrature::gauss_legendre01(2 * samples_per_segment, x, w);
    for (std::size_t s = 0; s < c.segments; ++s) {
      for (double t : x) {
        if (!(std::abs(c.point(static_cast<double>(s) + t)) < 1.0)) {
          throw Error(ErrorKind::OutOfDomain, "tail leaves the open cell");
        }
      }
    }
    tail = connection_integral(c, m, samples_per_segment);
  }
  const double phase = -(static_cast<double>(loop.k1) * a + static_cast<double>(loop.k2) * b + tail);
  return {std::polar(1.0, phase), phase};
}

cplx torus_holonomy(long k1, long k2, int m, const std::optional<Curve>& tail, std::size_t samples_per_segment) {
  return torus_holonomy(LoopSpec{k1, k2, tail}, m, samples_per_segment).value;
}

}  // namespace berezin::pullback
