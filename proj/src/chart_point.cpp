#include "berezin/chart_point.hpp"

#include <cmath>
#include <string>

#include "berezin/error.hpp"

namespace berezin {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularPair: return "SingularPair";
    case ErrorKind::DerivativeFailure: return "DerivativeFailure";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DegenerateKernel: return "DegenerateKernel";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::OddLevel: return "OddLevel";
    case ErrorKind::PathTooCoarse: return "PathTooCoarse";
  }
  return "Unknown";
}

ChartPoint::ChartPoint(std::vector<cplx> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorKind::InvalidArgument, "chart point needs d >= 1");
  for (const auto& c : coords_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorKind::InvalidArgument, "chart point has a non-finite coordinate");
  }
}

double ChartPoint::norm2() const noexcept {
  double s = 0.0;
  for (const auto& c : coords_) s += std::norm(c);
  return s;
}

cplx pairing(std::span<const cplx> mu, std::span<const cplx> nu) noexcept {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double a = mu[i].real(), b = mu[i].imag();
    const double c = nu[i].real(), e = nu[i].imag();
    re += a * c + b * e;
    im += b * c - a * e;
  }
  return {re, im};
}

void require_same_dim(const ChartPoint& a, const ChartPoint& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::DimensionMismatch,
                "points of dimension " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
}

namespace {
// Explicit product; keeps conj-symmetry independent of how the compiler lowers complex mul.
inline cplx mul(cplx x, cplx y) noexcept {
  const double a = x.real(), b = x.imag(), c = y.real(), e = y.imag();
  return {a * c - b * e, a * e + b * c};
}
}  // namespace

cplx ipow(cplx z, unsigned n) noexcept {
  cplx result{1.0, 0.0};
  while (n != 0) {
    if (n & 1u) result = mul(result, z);
    n >>= 1u;
    if (n != 0) z = mul(z, z);
  }
  return result;
}

}  // namespace berezin
