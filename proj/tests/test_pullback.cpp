#include <doctest.h>

#include <cmath>
#include <random>

#include "berezin/error.hpp"
#include "berezin/geometry.hpp"
#include "berezin/hilbert.hpp"
#include "berezin/operators.hpp"
#include "berezin/pullback.hpp"
#include "berezin/test_functions.hpp"
#include "berezin/toeplitz.hpp"
#include "support.hpp"

using namespace berezin;
using namespace berezin::pullback;
using testing_support::random_matrix;

namespace {

ManifoldPoint random_parameter(std::mt19937_64& rng, const DiffeoChart& chart) {
  std::uniform_real_distribution<double> cube(0.05, 0.95), plane(-2.0, 2.0);
  ManifoldPoint p(2 * chart.d);
  for (auto& x : p) x = chart.domain == ParameterDomain::UnitCube ? cube(rng) : plane(rng);
  return p;
}

hilbert::HilbertVector random_vector(std::mt19937_64& rng, const hilbert::BasisSpec& spec) {
  return {random_matrix(rng, static_cast<Eigen::Index>(spec.size()), 1).col(0)};
}

cplx tan_map(double u, double v) { return {std::tan(M_PI * u - M_PI / 2), std::tan(M_PI * v - M_PI / 2)}; }

}  // namespace

TEST_CASE("identity and torus chart geometry") {
  const auto id = identity_chart(1);
  CHECK(id.map({0.3, -0.4})[0] == cplx{0.3, -0.4});
  const auto torus = torus_chart();
  CHECK(std::abs(torus.map({0.5, 0.5})[0]) < 1e-15);
  CHECK(torus_cell_to_hemisphere({0.5, 0.5}) == cplx{});
  for (const ManifoldPoint& bad : {ManifoldPoint{0.0, 0.5}, ManifoldPoint{1.0, 0.3}, ManifoldPoint{0.2, 1.0}}) {
    try {
      torus.map(bad);
      FAIL("expected OutOfDomain");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::OutOfDomain);
    }
  }
  CHECK_THROWS_AS(torus.map({0.5}), Error);
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const ManifoldPoint p{0.05 + 0.09 * i, 0.05 + 0.09 * j};
      const auto z = torus.map(p);
      CHECK(std::abs(z[0] - tan_map(p[0], p[1])) <= 1e-12 * (1.0 + std::abs(z[0])));
      const auto back = torus.unmap(z);
      CHECK(std::abs(back[0] - p[0]) <= 1e-10);
      CHECK(std::abs(back[1] - p[1]) <= 1e-10);
      const auto jac = torus.jacobian_at(p);
      CHECK(jac.determinant() > 0.0);
      CHECK(std::abs(torus_cell_to_hemisphere(p)) < 1.0);
    }
  }
}

TEST_CASE("finite-difference jacobian matches the analytic one") {
  auto torus = torus_chart();
  auto fd = torus;
  fd.jacobian = nullptr;
  for (const ManifoldPoint& p : {ManifoldPoint{0.3, 0.6}, ManifoldPoint{0.5, 0.5}, ManifoldPoint{0.71, 0.22}}) {
    const Eigen::MatrixXd a = torus.jacobian_at(p), b = fd.jacobian_at(p);
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-6 * a.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("chart descriptors") {
  const auto t = torus_chart().to_json();
  CHECK(t["descriptor"].get<std::string>().find("torus") != std::string::npos);
  const auto s = scaled(identity_chart(1), cplx{2.0, 0.0});
  CHECK(s.descriptor != identity_chart(1).descriptor);
  CHECK(std::abs(s.map({0.5, 0.25})[0] - cplx{1.0, 0.5}) < 1e-15);
}

TEST_CASE("pull_section") {
  const auto spec = hilbert::build_basis(1, 3);
  const auto torus = torus_chart();
  const auto& D = spec.normalizations();
  const auto v0 = hilbert::basis_vector(spec, 0), v1 = hilbert::basis_vector(spec, 1);
  for (const ManifoldPoint& p : {ManifoldPoint{0.2, 0.7}, ManifoldPoint{0.5, 0.5}, ManifoldPoint{0.9, 0.1}}) {
    CHECK(std::abs(pull_section(torus, spec, v0, p) - 1.0 / std::sqrt(D[0])) <= 1e-14);
    CHECK(std::abs(pull_section(torus, spec, v1, p) - tan_map(p[0], p[1]) / std::sqrt(D[1])) <=
          1e-12 * (1.0 + std::abs(tan_map(p[0], p[1]))));
  }
  std::mt19937_64 rng(41);
  const auto id = identity_chart(1);
  for (int k = 0; k < 20; ++k) {
    const auto v = random_vector(rng, spec);
    const auto p = random_parameter(rng, id);
    CHECK(pull_section(id, spec, v, p) == hilbert::evaluate(spec, v, ChartPoint{cplx{p[0], p[1]}}));
  }
}

TEST_CASE("pulled operators delegate to the chart") {
  std::mt19937_64 rng(42);
  const auto spec = hilbert::build_basis(1, 4);
  const auto n = static_cast<Eigen::Index>(spec.size());
  for (const auto& chart : {identity_chart(1), torus_chart()}) {
    const PulledOperator id{operators::OperatorMatrix::identity(spec), chart};
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(n, n);
    proj(0, 0) = 1.0;
    const PulledOperator p0{operators::OperatorMatrix(spec, proj), chart};
    const PulledOperator a{operators::OperatorMatrix(spec, random_matrix(rng, n, n)), chart};
    const PulledOperator b{operators::OperatorMatrix(spec, random_matrix(rng, n, n)), chart};
    for (int k = 0; k < 10; ++k) {
      const auto p = random_parameter(rng, chart), q = random_parameter(rng, chart);
      const auto v = random_vector(rng, spec);
      const auto zp = chart.map(p), zq = chart.map(q);
      CHECK(std::abs(pulled_apply(id, v, p) - pull_section(chart, spec, v, p)) <= 1e-12 * (1 + std::abs(pull_section(chart, spec, v, p))));
      CHECK(std::abs(pulled_apply(p0, hilbert::basis_vector(spec, 1), p)) == 0.0);
      const cplx two_step = hilbert::evaluate(spec, hilbert::HilbertVector{a.base.entries * v.coeffs}, zp);
      CHECK(std::abs(pulled_apply(a, v, p) - two_step) <= 1e-12 * (1 + std::abs(two_step)));
      CHECK(pulled_symbol(a, p, q) == operators::symbol_eval(a.base, zp, zq));
      CHECK(std::abs(pulled_symbol(id, p, p) - 1.0) <= 1e-12);
      CHECK(pulled_star(a, b, p) == operators::star_product(a.base, b.base, zp));
      const cplx sym = operators::symbol_eval(a.base, zp, zp);
      CHECK(std::abs(pulled_star(id, a, p) - sym) <= 1e-8 * a.base.entries.norm());
    }
  }
  const PulledOperator x{operators::OperatorMatrix::identity(spec), identity_chart(1)};
  const PulledOperator y{operators::OperatorMatrix::identity(spec), torus_chart()};
  try {
    pulled_star(x, y, {0.5, 0.5});
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("identity chart reproduces the chart correspondence sweep") {
  const ChartPoint mu{cplx{0.3, 0.2}};
  const std::vector<unsigned> grid{4, 8};
  auto builder = [](std::string_view fid) {
    return [fid](unsigned m) {
      const auto spec = hilbert::build_basis(1, m);
      return operators::OperatorMatrix(spec, toeplitz::toeplitz_matrix(hilbert::WeightedBasis(spec),
                                                                       test_functions::shipped(fid, 1).value));
    };
  };
  const auto table = operators::correspondence_sweep(builder("sx"), builder("sy"), grid, mu);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const PulledOperator a{builder("sx")(grid[k]), identity_chart(1)};
    const PulledOperator b{builder("sy")(grid[k]), identity_chart(1)};
    const ManifoldPoint p{0.3, 0.2};
    const double e0 = std::abs(pulled_star(a, b, p) - pulled_symbol(a, p, p) * pulled_symbol(b, p, p));
    CHECK(e0 == table.rows[k].e0);
  }
}

TEST_CASE("measure factor integrates to the total volume") {
  for (const auto& chart : {identity_chart(1), torus_chart()}) {
    const auto rule = parameter_rule(chart);
    for (const auto& density : {std::function<double(const ManifoldPoint&)>{},
                                std::function<double(const ManifoldPoint&)>{
                                    [](const ManifoldPoint& p) { return 1.0 + p[0] * p[0]; }}}) {
      const auto h = measure_factor(chart, density);
      double total = 0.0;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const auto& p = rule.nodes[k];
        CHECK(h(p) > 0.0);
        total += rule.weights[k] * h(p) * h.dS(p);
      }
      CHECK(std::abs(total - 2.0 * M_PI) <= 1e-8);
    }
  }
}

TEST_CASE("manifold inner products and Toeplitz matrices match the chart") {
  std::mt19937_64 rng(43);
  const auto spec = hilbert::build_basis(1, 4);
  const hilbert::WeightedBasis wb(spec);
  const auto n = static_cast<Eigen::Index>(spec.size());
  const auto rho = test_functions::shipped("rho", 1).value;
  const auto chart_t = toeplitz::toeplitz_matrix(wb, rho);
  for (const auto& chart : {identity_chart(1), torus_chart()}) {
    const auto h = measure_factor(chart);
    const auto rule = parameter_rule(chart);
    const auto gram = pulled_toeplitz(chart, h, spec, [](const ManifoldPoint&) { return cplx{1.0, 0.0}; }, rule);
    CHECK((gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-8);
    const auto zero = hilbert::HilbertVector{Eigen::VectorXcd::Zero(n)};
    CHECK(inner_product_on_manifold(chart, h, spec, zero, zero, rule) == cplx{});
    for (int k = 0; k < 5; ++k) {
      const auto v = random_vector(rng, spec);
      const double norm2 = v.coeffs.squaredNorm();
      CHECK(std::abs(inner_product_on_manifold(chart, h, spec, v, v, rule) - norm2) <= 1e-8 * norm2);
    }
    const auto pulled = pulled_toeplitz(chart, h, spec, [&](const ManifoldPoint& p) { return rho(chart.map(p)); }, rule);
    CHECK((pulled - chart_t).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(std::abs(toeplitz::operator_norm(pulled) - toeplitz::operator_norm(chart_t)) <= 1e-8);
  }
}

TEST_CASE("equivalence check") {
  const auto spec = hilbert::build_basis(1, 4);
  for (const auto& chart : {identity_chart(1), torus_chart()}) {
    const auto same = equivalence_check(chart, chart, identity_map(), spec);
    CHECK(same.equivalent);
    CHECK(same.inner_product_deviation <= 1e-10);
    CHECK(same.kernel_deviation <= 1e-10);
    const cplx rot = std::polar(1.0, 0.7);
    const auto rotated = equivalence_check(chart, scaled(chart, rot), induced_map(chart, rot), spec);
    CHECK(rotated.equivalent);
    CHECK(rotated.inner_product_deviation <= 1e-8);
    CHECK(rotated.kernel_deviation <= 1e-8);
    const auto stretched = equivalence_check(chart, scaled(chart, 2.0), identity_map(), spec);
    CHECK_FALSE(stretched.equivalent);
    CHECK(stretched.kernel_deviation > 1e-3);
  }
}
