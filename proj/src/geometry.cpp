#include "berezin/geometry.hpp"

#include <cmath>
#include <numbers>

#include "berezin/error.hpp"

namespace berezin::geometry {

namespace {

cplx checked_pairing(const ChartPoint& mu, const ChartPoint& nu) {
  require_same_dim(mu, nu);
  const cplx p = cplx{1.0, 0.0} + pairing(mu, nu);
  if (std::abs(p) < kSingularPairTol) throw Error(ErrorKind::SingularPair, "1 + mu.conj(nu) vanishes");
  return p;
}

}  // namespace

cplx fs_potential(const ChartPoint& mu, const ChartPoint& nu) { return std::log(checked_pairing(mu, nu)); }

bool on_branch_cut(const ChartPoint& mu, const ChartPoint& nu, double tol) {
  require_same_dim(mu, nu);
  const cplx p = cplx{1.0, 0.0} + pairing(mu, nu);
  return p.real() < 0.0 && std::abs(p.imag()) <= tol * std::abs(p);
}

Eigen::MatrixXcd fs_metric(const ChartPoint& mu) {
  const auto d = static_cast<Eigen::Index>(mu.dim());
  const double s = 1.0 + mu.norm2();
  Eigen::MatrixXcd g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const cplx delta = (i == j) ? cplx{s, 0.0} : cplx{};
      g(i, j) = (delta - std::conj(mu[i]) * mu[j]) / (s * s);
    }
  }
  return g;
}

Eigen::MatrixXcd fs_form(const ChartPoint& mu) { return cplx{0.0, 1.0} * fs_metric(mu); }

Eigen::MatrixXcd fs_form_inverse(const ChartPoint& mu) {
  // g^-1 = (1+|mu|^2)(I + mu mu^dagger) (Sherman-Morrison on the rank-one update).
  const auto d = static_cast<Eigen::Index>(mu.dim());
  const double s = 1.0 + mu.norm2();
  Eigen::MatrixXcd w(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const cplx delta = (i == j) ? cplx{1.0, 0.0} : cplx{};
      w(i, j) = cplx{0.0, -1.0} * s * (delta + std::conj(mu[i]) * mu[j]);
    }
  }
  return w;
}

double volume_density(const ChartPoint& mu) {
  return std::pow(1.0 + mu.norm2(), -static_cast<double>(mu.dim() + 1));
}

double lebesgue_density(const ChartPoint& mu) {
  return std::ldexp(volume_density(mu), static_cast<int>(mu.dim()));
}

double diastasis(const ChartPoint& mu, const ChartPoint& nu) {
  const cplx p = checked_pairing(nu, mu);
  // 2 ln|p| - ln s - ln s is exactly 0 on the diagonal, where p = s bit for bit.
  const double value = 2.0 * std::log(std::abs(p)) - std::log(1.0 + mu.norm2()) - std::log(1.0 + nu.norm2());
  // Cauchy-Schwarz bounds the exact value by 0; clamp rounding noise.
  return std::min(value, 0.0);
}

double fd_step(const ChartPoint& mu) { return 1e-5 * std::max(1.0, std::sqrt(mu.norm2())); }

Wirtinger wirtinger(const ScalarField& f, const ChartPoint& mu) {
  const std::size_t d = mu.dim();
  Wirtinger out;
  if (f.d_holo && f.d_antiholo) {
    out.holo = f.d_holo(mu);
    out.antiholo = f.d_antiholo(mu);
    if (out.holo.size() != d || out.antiholo.size() != d)
      throw Error(ErrorKind::DimensionMismatch, "analytic gradient has the wrong length");
    return out;
  }
  const double h = fd_step(mu);
  out.holo.resize(d);
  out.antiholo.resize(d);
  std::vector<cplx> shifted(mu.coords().begin(), mu.coords().end());
  auto eval_at = [&](std::size_t k, cplx delta) {
    shifted[k] = mu[k] + delta;
    cplx v;
    try {
      v = f(ChartPoint(shifted));
    } catch (const Error& e) {
      throw Error(ErrorKind::DerivativeFailure, std::string("stencil evaluation failed: ") + e.what());
    }
    shifted[k] = mu[k];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::DerivativeFailure, "non-finite value on the difference stencil");
    return v;
  };
  for (std::size_t k = 0; k < d; ++k) {
    const cplx dx = (eval_at(k, {h, 0.0}) - eval_at(k, {-h, 0.0})) / (2.0 * h);
    const cplx dy = (eval_at(k, {0.0, h}) - eval_at(k, {0.0, -h})) / (2.0 * h);
    out.holo[k] = 0.5 * (dx - cplx{0.0, 1.0} * dy);
    out.antiholo[k] = 0.5 * (dx + cplx{0.0, 1.0} * dy);
  }
  return out;
}

cplx poisson_bracket(const ScalarField& t, const ScalarField& s, const ChartPoint& mu) {
  const Eigen::MatrixXcd w = fs_form_inverse(mu);
  const Wirtinger dt = wirtinger(t, mu);
  const Wirtinger ds = wirtinger(s, mu);
  cplx sum{};
  for (std::size_t i = 0; i < mu.dim(); ++i) {
    for (std::size_t j = 0; j < mu.dim(); ++j) {
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      sum += w(ii, jj) * (dt.antiholo[i] * ds.holo[j] - ds.antiholo[i] * dt.holo[j]);
    }
  }
  return sum;
}

}  // namespace berezin::geometry
