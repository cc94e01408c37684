#include <doctest.h>

#include <cmath>
#include <limits>

#include "berezin/error.hpp"
#include "berezin/quadrature.hpp"
#include "support.hpp"

using namespace berezin;
using namespace berezin::quadrature;
using testing_support::moment_oracle;

TEST_CASE("gauss-legendre on [0,1] is exact to degree 2n-1") {
  std::vector<double> x, w;
  gauss_legendre01(7, x, w);
  for (int k = 0; k <= 13; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
    CHECK(std::abs(s - 1.0 / (k + 1)) < 1e-15);
  }
}

TEST_CASE("build_rule invariants") {
  for (std::size_t d : {1u, 2u}) {
    for (unsigned level : {1u, 2u, 3u}) {
      const auto rule = build_rule(d, level);
      CHECK(rule.weights().minCoeff() > 0.0);
      CHECK(rule.radial_count() >= 8 * level);
      CHECK(rule.angular_count() >= 4 * level);
      const auto again = build_rule(d, level);
      CHECK(rule.nodes() == again.nodes());
      CHECK(rule.weights() == again.weights());
    }
  }
  try {
    build_rule(2, 40);
    FAIL("expected ResourceLimit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceLimit);
  }
  for (unsigned m = 1; m <= 64; ++m) CHECK(m_max(level_for(m)) >= m);
  CHECK(m_max(1) == 3);
}

TEST_CASE("integrate: constants, symmetry and zero") {
  const auto rule = build_rule(1, 1);
  CHECK(std::abs(integrate([](const ChartPoint&) { return cplx{1.0, 0.0}; }, rule).value - 2 * M_PI) < 1e-10);
  for (int k = 1; k <= 4; ++k) {
    auto odd = [k](const ChartPoint& p) { return p[0] / std::pow(1.0 + p.norm2(), k); };
    CHECK(std::abs(integrate(odd, build_rule(1, 2)).value) < 1e-12);
  }
  const auto zero = integrate([](const ChartPoint&) { return cplx{}; }, rule);
  CHECK(zero.value == cplx{});
  CHECK(zero.error_estimate == 0.0);
}

TEST_CASE("integrate reports non-finite integrands") {
  const auto rule = build_rule(1, 1);
  const auto target = rule.point(5);
  auto f = [&](const ChartPoint& p) {
    return p[0] == target[0] ? cplx{std::numeric_limits<double>::quiet_NaN(), 0.0} : cplx{1.0, 0.0};
  };
  try {
    integrate(f, rule);
    FAIL("expected NonFiniteIntegrand");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFiniteIntegrand);
    CHECK(std::string(e.what()).find("node 5") != std::string::npos);
  }
}

TEST_CASE("moment closed form") {
  CHECK(std::abs(moment(MultiIndex({0}), 0, 1) - 2 * M_PI) < 1e-14);
  const double numeric =
      integrate([](const ChartPoint& p) { return cplx{p.norm2() / std::pow(1.0 + p.norm2(), 2), 0.0}; }, build_rule(1, 1))
          .value.real();
  CHECK(std::abs(moment(MultiIndex({1}), 2, 1) - numeric) < 1e-10);
  for (unsigned m = 1; m <= 6; ++m) {
    auto f = [m](const ChartPoint& p) { return cplx{std::pow(1.0 + p.norm2(), -static_cast<double>(m)), 0.0}; };
    CHECK(std::abs(integrate(f, build_rule(1, level_for(m))).value.real() - moment(MultiIndex({0}), m, 1)) < 1e-10);
  }
  try {
    moment(MultiIndex({3}), 2, 1);
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndexOutOfRange);
  }
  CHECK(std::abs(log_moment(MultiIndex({2, 1}), 7, 2) - std::log(moment_oracle({2, 1}, 7, 2))) < 1e-13);
}

TEST_CASE("exactness on the monomial family") {
  for (std::size_t d : {1u, 2u}) {
    for (unsigned m = 0; m <= 16; ++m) {
      const auto rule = build_rule(d, level_for(std::max(1u, m)));
      for (const auto& idx : enumerate_indices(d, m)) {
        auto f = [&](const ChartPoint& p) {
          double v = std::pow(1.0 + p.norm2(), -static_cast<double>(m));
          for (std::size_t i = 0; i < d; ++i) v *= std::pow(std::norm(p[i]), idx[i]);
          return cplx{v, 0.0};
        };
        const double exact = moment_oracle(idx.exponents(), m, d);
        CHECK(std::abs(integrate(f, rule).value.real() - exact) / exact <= 1e-10);
      }
    }
  }
}

TEST_CASE("error estimate decreases with level down to rounding") {
  for (unsigned q : {0u, 3u, 8u}) {
    const unsigned m = 10;
    auto f = [&](const ChartPoint& p) {
      return cplx{std::pow(std::norm(p[0]), q) * std::pow(1.0 + p.norm2(), -static_cast<double>(m)), 0.0};
    };
    double prev = std::numeric_limits<double>::infinity();
    for (unsigned level = 1; level <= 5; ++level) {
      const auto r = integrate(f, build_rule(1, level));
      CHECK(r.error_estimate >= 0.0);
      CHECK(r.error_estimate <= prev + 1e-14 * std::abs(r.value));
      prev = r.error_estimate;
    }
  }
}

TEST_CASE("integration is deterministic") {
  const auto rule = build_rule(2, 2);
  auto f = [](const ChartPoint& p) { return std::exp(p[0] * std::conj(p[1])) / std::pow(1.0 + p.norm2(), 3); };
  const auto a = integrate(f, rule), b = integrate(f, rule);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
}
