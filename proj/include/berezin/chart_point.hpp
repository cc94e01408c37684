#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace berezin {

using cplx = std::complex<double>;

/// Affine coordinates (mu_1, ..., mu_d) of the point [1, mu_1, ..., mu_d] of CP^d.
class ChartPoint {
 public:
  explicit ChartPoint(std::vector<cplx> coords);
  ChartPoint(std::initializer_list<cplx> coords) : ChartPoint(std::vector<cplx>(coords)) {}

  static ChartPoint origin(std::size_t d) { return ChartPoint(std::vector<cplx>(d, cplx{})); }

  std::size_t dim() const noexcept { return coords_.size(); }
  const cplx& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const cplx> coords() const noexcept { return coords_; }

  /// |mu|^2 = sum_i |mu_i|^2.
  double norm2() const noexcept;

 private:
  std::vector<cplx> coords_;
};

/// mu . conj(nu), evaluated with explicit real arithmetic so that
/// pairing(mu, nu) == conj(pairing(nu, mu)) holds bit for bit.
cplx pairing(std::span<const cplx> mu, std::span<const cplx> nu) noexcept;
inline cplx pairing(const ChartPoint& mu, const ChartPoint& nu) noexcept {
  return pairing(mu.coords(), nu.coords());
}

void require_same_dim(const ChartPoint& a, const ChartPoint& b);

/// z^n by repeated squaring; conj(z)^n == conj(z^n) exactly.
cplx ipow(cplx z, unsigned n) noexcept;

}  // namespace berezin
