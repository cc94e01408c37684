#include "berezin/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "berezin/error.hpp"

namespace berezin::hilbert {

BasisSpec::BasisSpec(std::size_t d, unsigned m, unsigned level)
    : d_(d), m_(m), level_(level), indices_(enumerate_indices(d, m)) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "level m must be >= 1");
  if (level == 0) throw Error(ErrorKind::InvalidArgument, "quadrature level must be >= 1");
  const MultiIndex zero(std::vector<unsigned>(d, 0));
  const double log_inv_c = quadrature::log_moment(zero, m, d);
  c_m_ = std::exp(-log_inv_c);
  D_.reserve(indices_.size());
  log_D_.reserve(indices_.size());
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    const double log_d = quadrature::log_moment(indices_[k], m, d) - log_inv_c;
    log_D_.push_back(log_d);
    D_.push_back(std::exp(log_d));
    lookup_.emplace(indices_[k], k);
  }
}

std::size_t BasisSpec::position(const MultiIndex& index) const {
  const auto it = lookup_.find(index);
  if (it == lookup_.end())
    throw Error(ErrorKind::IndexOutOfRange, "index " + index.to_string() + " is not in the level-" +
                                                std::to_string(m_) + " basis");
  return it->second;
}

nlohmann::json BasisSpec::to_json() const {
  nlohmann::json idx = nlohmann::json::array();
  for (const auto& i : indices_) idx.push_back(i.exponents());
  return {{"d", d_}, {"m", m_}, {"N", indices_.size()}, {"quadrature_level", level_},
          {"hbar", hbar()}, {"c_m", c_m_}, {"order", "graded-lex"}, {"indices", idx}, {"D", D_}};
}

BasisSpec build_basis(std::size_t d, unsigned m) { return BasisSpec(d, m, quadrature::level_for(m)); }

BasisSpec build_basis(std::size_t d, unsigned m, unsigned level) { return BasisSpec(d, m, level); }

BasisSpec basis_from_json(const nlohmann::json& doc) {
  BasisSpec spec(doc.at("d").get<std::size_t>(), doc.at("m").get<unsigned>(), doc.at("quadrature_level").get<unsigned>());
  if (doc.at("N").get<std::size_t>() != spec.size())
    throw Error(ErrorKind::InvalidArgument, "stored N does not match C(m+d, d)");
  const auto stored = doc.at("D").get<std::vector<double>>();
  for (std::size_t k = 0; k < stored.size(); ++k) {
    if (std::abs(stored[k] - spec.normalizations()[k]) > 1e-12 * spec.normalizations()[k])
      throw Error(ErrorKind::InvalidArgument, "stored D differs from the closed form at position " + std::to_string(k));
  }
  return spec;
}

cplx basis_eval(const BasisSpec& spec, const MultiIndex& index, const ChartPoint& mu) {
  if (mu.dim() != spec.dim()) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from basis");
  const std::size_t pos = spec.position(index);
  cplx v{1.0, 0.0};
  for (std::size_t i = 0; i < mu.dim(); ++i) v *= ipow(mu[i], index[i]);
  return v / std::sqrt(spec.normalizations()[pos]);
}

namespace {

// powers[i][q] = mu_i^q for q <= m.
std::vector<std::vector<cplx>> power_table(const ChartPoint& mu, unsigned m) {
  std::vector<std::vector<cplx>> table(mu.dim(), std::vector<cplx>(m + 1));
  for (std::size_t i = 0; i < mu.dim(); ++i) {
    table[i][0] = 1.0;
    for (unsigned q = 1; q <= m; ++q) table[i][q] = table[i][q - 1] * mu[i];
  }
  return table;
}

}  // namespace

Eigen::VectorXcd basis_values(const BasisSpec& spec, const ChartPoint& mu) {
  if (mu.dim() != spec.dim()) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from basis");
  const auto table = power_table(mu, spec.level_m());
  Eigen::VectorXcd out(static_cast<Eigen::Index>(spec.size()));
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const auto& idx = spec.indices()[k];
    cplx v{1.0, 0.0};
    for (std::size_t i = 0; i < mu.dim(); ++i) v *= table[i][idx[i]];
    out(static_cast<Eigen::Index>(k)) = v / std::sqrt(spec.normalizations()[k]);
  }
  return out;
}

Eigen::VectorXcd coherent_coefficients(const BasisSpec& spec, const ChartPoint& mu) {
  return basis_values(spec, mu).conjugate();
}

Eigen::VectorXcd coherent_coefficients_normalized(const BasisSpec& spec, const ChartPoint& mu) {
  if (mu.dim() != spec.dim()) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from basis");
  if (std::sqrt(mu.norm2()) < kLogScaleRadius) {
    Eigen::VectorXcd c = coherent_coefficients(spec, mu);
    return c / std::sqrt(std::exp(log_kernel_diag(spec, mu)));
  }
  const double half_log_l = 0.5 * log_kernel_diag(spec, mu);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(spec.size()));
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const auto& idx = spec.indices()[k];
    double log_mag = -0.5 * spec.log_D_[k] - half_log_l;
    double phase = 0.0;
    bool zero = false;
    for (std::size_t i = 0; i < mu.dim(); ++i) {
      if (idx[i] == 0) continue;
      const double r = std::abs(mu[i]);
      if (r == 0.0) {
        zero = true;
        break;
      }
      log_mag += idx[i] * std::log(r);
      phase -= idx[i] * std::arg(mu[i]);
    }
    out(static_cast<Eigen::Index>(k)) = zero ? cplx{} : std::polar(std::exp(log_mag), phase);
  }
  return out;
}

cplx coherent_eval(const BasisSpec& spec, const ChartPoint& mu, const ChartPoint& nu) {
  require_same_dim(mu, nu);
  return ipow(cplx{1.0, 0.0} + pairing(nu, mu), spec.level_m());
}

cplx kernel_L(const BasisSpec& spec, const ChartPoint& mu, const ChartPoint& nu) {
  require_same_dim(mu, nu);
  return ipow(cplx{1.0, 0.0} + pairing(mu, nu), spec.level_m());
}

double log_kernel_diag(const BasisSpec& spec, const ChartPoint& mu) {
  return static_cast<double>(spec.level_m()) * std::log1p(mu.norm2());
}

HilbertVector basis_vector(const BasisSpec& spec, std::size_t position) {
  if (position >= spec.size()) throw Error(ErrorKind::IndexOutOfRange, "basis position out of range");
  HilbertVector v{Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(spec.size()))};
  v.coeffs(static_cast<Eigen::Index>(position)) = 1.0;
  return v;
}

HilbertVector coherent_state(const BasisSpec& spec, const ChartPoint& mu) {
  return HilbertVector{coherent_coefficients(spec, mu)};
}

cplx evaluate(const BasisSpec& spec, const HilbertVector& v, const ChartPoint& mu) {
  if (v.coeffs.size() != static_cast<Eigen::Index>(spec.size()))
    throw Error(ErrorKind::DimensionMismatch, "vector length differs from N");
  return basis_values(spec, mu).transpose() * v.coeffs;
}

WeightedBasis::WeightedBasis(const BasisSpec& spec, quadrature::QuadratureRule rule)
    : spec_(spec), rule_(std::move(rule)) {
  if (rule_.dim() != spec.dim()) throw Error(ErrorKind::DimensionMismatch, "rule dimension differs from basis");
  const auto n = static_cast<Eigen::Index>(rule_.size());
  const auto big_n = static_cast<Eigen::Index>(spec.size());
  weights_.resize(n);
  values_.resize(n, big_n);
  const double m = static_cast<double>(spec.level_m());
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    weights_(k) = spec.c_m() * rule_.weights()(k) * std::pow(rule_.one_plus_norm2(kk), -m);
    values_.row(k) = basis_values(spec, rule_.point(kk)).transpose();
  }
}

WeightedBasis::WeightedBasis(const BasisSpec& spec)
    : WeightedBasis(spec, quadrature::build_rule(spec.dim(), spec.quadrature_level())) {}

cplx inner_product(const WeightedBasis& wb, const Function& f, const Function& g) {
  std::vector<cplx> terms(wb.nodes());
  for (std::size_t k = 0; k < wb.nodes(); ++k) {
    const ChartPoint p = wb.rule().point(k);
    terms[k] = std::conj(f(p)) * g(p);
  }
  return quadrature::weighted_sum(terms, wb.weights());
}

Eigen::MatrixXcd gram_matrix(const WeightedBasis& wb) {
  return wb.values().adjoint() * wb.weights().asDiagonal() * wb.values();
}

double reproducing_residual(const WeightedBasis& wb, const HilbertVector& v, const ChartPoint& mu) {
  const BasisSpec& spec = wb.spec();
  const Eigen::VectorXcd at_nodes = wb.values() * v.coeffs;
  std::vector<cplx> terms(wb.nodes());
  for (std::size_t k = 0; k < wb.nodes(); ++k) {
    const cplx psi = coherent_eval(spec, mu, wb.rule().point(k));
    terms[k] = std::conj(psi) * at_nodes(static_cast<Eigen::Index>(k));
  }
  const cplx projected = quadrature::weighted_sum(terms, wb.weights());
  return std::abs(projected - evaluate(spec, v, mu));
}

cplx resolution_integral(const WeightedBasis& wb, const HilbertVector& v1, const HilbertVector& v2) {
  // <v, psi_mu> = v^dagger c(mu) = sum_I conj(v_I) conj(Psi_I(mu)), and <psi_mu, v> = v(mu).
  const Eigen::VectorXcd left = (wb.values() * v1.coeffs).conjugate();
  const Eigen::VectorXcd right = wb.values() * v2.coeffs;
  std::vector<cplx> terms(wb.nodes());
  for (std::size_t k = 0; k < wb.nodes(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    terms[k] = left(kk) * right(kk);
  }
  return quadrature::weighted_sum(terms, wb.weights());
}

double resolution_check(const WeightedBasis& wb, const HilbertVector& v1, const HilbertVector& v2) {
  const cplx exact = v1.coeffs.dot(v2.coeffs);  // Eigen's dot conjugates the first argument.
  return std::abs(resolution_integral(wb, v1, v2) - exact);
}

}  // namespace berezin::hilbert
