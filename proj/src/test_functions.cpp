#include "berezin/test_functions.hpp"

#include "berezin/error.hpp"

namespace berezin::test_functions {

namespace {

using geometry::ScalarField;
constexpr cplx kI{0.0, 1.0};

double s_of(const ChartPoint& mu) { return 1.0 + mu.norm2(); }

}  // namespace

std::vector<std::string> shipped_ids() { return {"one", "sx", "sy", "rho", "cap", "sx2", "sxy"}; }

double known_sup(std::string_view id) {
  if (id == "one" || id == "rho" || id == "cap") return 1.0;
  if (id == "sx" || id == "sy") return 0.5;
  if (id == "sx2") return 0.25;
  if (id == "sxy") return 0.125;
  throw Error(ErrorKind::InvalidArgument, "unknown test function '" + std::string(id) + "'");
}

ScalarField shipped(std::string_view id, std::size_t d) {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  if (id == "one") {
    auto zero = [d](const ChartPoint&) { return std::vector<cplx>(d); };
    return {[](const ChartPoint&) { return cplx{1.0, 0.0}; }, zero, zero};
  }
  if (id == "sx") {
    return {[](const ChartPoint& mu) { return cplx{mu[0].real() / s_of(mu), 0.0}; },
            [d](const ChartPoint& mu) {
              const double s = s_of(mu);
              const cplx two_re = 2.0 * mu[0].real();
              std::vector<cplx> g(d);
              for (std::size_t k = 0; k < d; ++k) g[k] = ((k == 0 ? s : 0.0) - two_re * std::conj(mu[k])) / (2.0 * s * s);
              return g;
            },
            [d](const ChartPoint& mu) {
              const double s = s_of(mu);
              const cplx two_re = 2.0 * mu[0].real();
              std::vector<cplx> g(d);
              for (std::size_t k = 0; k < d; ++k) g[k] = ((k == 0 ? s : 0.0) - two_re * mu[k]) / (2.0 * s * s);
              return g;
            }};
  }
  if (id == "sy") {
    return {[](const ChartPoint& mu) { return cplx{mu[0].imag() / s_of(mu), 0.0}; },
            [d](const ChartPoint& mu) {
              const double s = s_of(mu);
              const cplx diff = 2.0 * kI * mu[0].imag();  // mu_1 - conj(mu_1)
              std::vector<cplx> g(d);
              for (std::size_t k = 0; k < d; ++k) g[k] = ((k == 0 ? s : 0.0) - diff * std::conj(mu[k])) / (2.0 * kI * s * s);
              return g;
            },
            [d](const ChartPoint& mu) {
              const double s = s_of(mu);
              const cplx diff = 2.0 * kI * mu[0].imag();
              std::vector<cplx> g(d);
              for (std::size_t k = 0; k < d; ++k) g[k] = ((k == 0 ? -s : 0.0) - diff * mu[k]) / (2.0 * kI * s * s);
              return g;
            }};
  }
  if (id == "rho" || id == "cap") {
    const double sign = (id == "rho") ? 1.0 : -1.0;
    return {[sign](const ChartPoint& mu) {
              const double s = s_of(mu);
              return cplx{sign > 0 ? mu.norm2() / s : 1.0 / s, 0.0};
            },
            [d, sign](const ChartPoint& mu) {
              const double s = s_of(mu);
              std::vector<cplx> g(d);
              for (std::size_t k = 0; k < d; ++k) g[k] = sign * std::conj(mu[k]) / (s * s);
              return g;
            },
            [d, sign](const ChartPoint& mu) {
              const double s = s_of(mu);
              std::vector<cplx> g(d);
              for (std::size_t k = 0; k < d; ++k) g[k] = sign * mu[k] / (s * s);
              return g;
            }};
  }
  if (id == "sx2") return product(shipped("sx", d), shipped("sx", d));
  if (id == "sxy") return product(shipped("sx", d), shipped("sy", d));
  throw Error(ErrorKind::InvalidArgument, "unknown test function '" + std::string(id) + "'");
}

ScalarField product(const ScalarField& f, const ScalarField& g) {
  ScalarField out;
  out.value = [=](const ChartPoint& mu) { return f(mu) * g(mu); };
  if (f.d_holo && f.d_antiholo && g.d_holo && g.d_antiholo) {
    auto rule = [](cplx fv, std::vector<cplx> df, cplx gv, const std::vector<cplx>& dg) {
      for (std::size_t k = 0; k < df.size(); ++k) df[k] = df[k] * gv + fv * dg[k];
      return df;
    };
    out.d_holo = [=](const ChartPoint& mu) { return rule(f(mu), f.d_holo(mu), g(mu), g.d_holo(mu)); };
    out.d_antiholo = [=](const ChartPoint& mu) { return rule(f(mu), f.d_antiholo(mu), g(mu), g.d_antiholo(mu)); };
  }
  return out;
}

ScalarField combine(double a, const ScalarField& f, double b, const ScalarField& g) {
  ScalarField out;
  out.value = [=](const ChartPoint& mu) { return a * f(mu) + b * g(mu); };
  if (f.d_holo && f.d_antiholo && g.d_holo && g.d_antiholo) {
    auto mix = [a, b](std::vector<cplx> x, const std::vector<cplx>& y) {
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = a * x[k] + b * y[k];
      return x;
    };
    out.d_holo = [=](const ChartPoint& mu) { return mix(f.d_holo(mu), g.d_holo(mu)); };
    out.d_antiholo = [=](const ChartPoint& mu) { return mix(f.d_antiholo(mu), g.d_antiholo(mu)); };
  }
  return out;
}

}  // namespace berezin::test_functions
