#include "berezin/cli.hpp"

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "berezin/error.hpp"
#include "berezin/hilbert.hpp"
#include "berezin/operators.hpp"
#include "berezin/test_functions.hpp"
#include "berezin/toeplitz.hpp"
#include "berezin/torus.hpp"

namespace berezin::cli {

namespace {

constexpr double kKernelTol = 1e-8;
constexpr double kMultiplicativityTol = 1e-10;
const std::vector<unsigned> kDefaultSweep{4, 8, 16, 32, 64};

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file " + path);
  f << text;
  if (!f) throw ConfigError("failed writing " + path);
}

// Data to cfg.out when set, otherwise to the data stream.
void emit(const RunConfig& cfg, std::ostream& data, const std::string& text) {
  if (cfg.out.empty()) {
    data << text;
  } else {
    write_text(cfg.out, text);
  }
}

void emit_sidecar(const RunConfig& cfg, const json& doc) {
  if (!cfg.out.empty()) write_text(cfg.out + ".json", doc.dump(2) + "\n");
}

std::string commutator_path(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension(".commutator.csv");
  return p.string();
}

json config_json(const RunConfig& cfg) {
  json j{{"command", cfg.command}, {"d", cfg.d},     {"m", cfg.m}, {"level", cfg.level},
         {"f", cfg.f},             {"g", cfg.g},     {"seed", cfg.seed}, {"mu", {cfg.mu_re, cfg.mu_im}},
         {"k_max", cfg.k_max}};
  j["m_list"] = cfg.m_list ? json(*cfg.m_list) : json(nullptr);
  return j;
}

json slope_json(const std::optional<double>& s) { return s ? json(*s) : json(nullptr); }

std::string slope_text(const std::optional<double>& s) {
  return s ? format_double(*s) : std::string("n/a");
}

ChartPoint config_point(const RunConfig& cfg) {
  std::vector<cplx> z(static_cast<std::size_t>(cfg.d), cplx{});
  z[0] = {cfg.mu_re, cfg.mu_im};
  return ChartPoint(std::move(z));
}

std::vector<unsigned> levels_or(const RunConfig& cfg, const std::vector<unsigned>& fallback) {
  if (!cfg.m_list) return fallback;
  return parse_m_list(*cfg.m_list);
}

void validate(const RunConfig& cfg) {
  bool known = false;
  for (const auto& c : commands()) known = known || c == cfg.command;
  if (!known) throw ConfigError("unknown command '" + cfg.command + "'");
  if (cfg.d < 1) throw ConfigError("d must be positive");
  if (cfg.m < 1) throw ConfigError("m must be positive");
  if (cfg.level < 0) throw ConfigError("level must be positive (0 selects it automatically)");
  if (cfg.k_max < 0) throw ConfigError("k-max must be non-negative");
  if (cfg.m_list) parse_m_list(*cfg.m_list);
}

int cmd_basis(const RunConfig& cfg, std::ostream& data, std::ostream& info) {
  const auto d = static_cast<std::size_t>(cfg.d);
  const auto m = static_cast<unsigned>(cfg.m);
  const auto spec = cfg.level > 0 ? hilbert::build_basis(d, m, static_cast<unsigned>(cfg.level))
                                  : hilbert::build_basis(d, m);
  emit(cfg, data, spec.to_json().dump(2) + "\n");
  (cfg.out.empty() ? info : data) << "N=" << spec.size() << " c_m=" << format_double(spec.c_m()) << "\n";
  return kSuccess;
}

int cmd_kernel_check(const RunConfig& cfg, std::ostream& data, std::ostream& info) {
  const auto d = static_cast<std::size_t>(cfg.d);
  const auto ms = levels_or(cfg, {static_cast<unsigned>(cfg.m)});
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> coord(-1.4, 1.4);

  std::ostringstream csv;
  csv << "m,gram_deviation,reproducing_residual,resolution_defect\n";
  bool pass = true;
  json rows = json::array();
  for (unsigned m : ms) {
    const auto spec = cfg.level > 0 ? hilbert::build_basis(d, m, static_cast<unsigned>(cfg.level))
                                    : hilbert::build_basis(d, m);
    const hilbert::WeightedBasis wb(spec);
    const auto n = static_cast<Eigen::Index>(spec.size());
    const double gram = (hilbert::gram_matrix(wb) - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();

    double repro = 0.0;
    for (int s = 0; s < 20; ++s) {
      std::vector<cplx> z(d);
      for (auto& c : z) c = {coord(rng), coord(rng)};
      const ChartPoint mu(std::move(z));
      for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto v = hilbert::basis_vector(spec, i);
        const double r = hilbert::reproducing_residual(wb, v, mu) / (1.0 + std::abs(hilbert::evaluate(spec, v, mu)));
        repro = std::max(repro, r);
      }
    }

    double resolution = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      for (std::size_t j = 0; j < spec.size(); ++j) {
        resolution = std::max(resolution, hilbert::resolution_check(wb, hilbert::basis_vector(spec, i),
                                                                    hilbert::basis_vector(spec, j)));
      }
    }
    pass = pass && gram <= kKernelTol && repro <= kKernelTol && resolution <= kKernelTol;
    csv << m << ',' << format_double(gram) << ',' << format_double(repro) << ',' << format_double(resolution) << "\n";
    rows.push_back({{"m", m}, {"quadrature_level", spec.quadrature_level()}});
  }
  emit(cfg, data, csv.str());
  emit_sidecar(cfg, {{"config", config_json(cfg)}, {"tolerance", kKernelTol}, {"levels", rows}, {"pass", pass}});
  info << (pass ? "kernel-check: all residuals <= 1e-8\n" : "kernel-check: residual above 1e-8\n");
  return pass ? kSuccess : kSuiteFailure;
}

int cmd_star_sweep(const RunConfig& cfg, std::ostream& data, std::ostream& info) {
  const auto d = static_cast<std::size_t>(cfg.d);
  const auto ms = levels_or(cfg, kDefaultSweep);
  const auto f = test_functions::shipped(cfg.f, d);
  const auto g = test_functions::shipped(cfg.g, d);
  auto builder = [d](const geometry::ScalarField& field) {
    return [d, field](unsigned m) {
      const auto spec = hilbert::build_basis(d, m);
      const hilbert::WeightedBasis wb(spec);
      return operators::OperatorMatrix(spec, toeplitz::toeplitz_matrix(wb, field.value));
    };
  };
  const auto table = operators::correspondence_sweep(builder(f), builder(g), ms, config_point(cfg));

  std::ostringstream csv;
  csv << "m,e0,e1\n";
  for (const auto& r : table.rows) csv << r.m << ',' << format_double(r.e0) << ',' << format_double(r.e1) << "\n";
  emit(cfg, data, csv.str());
  emit_sidecar(cfg, {{"config", config_json(cfg)},
                     {"slope_e0", slope_json(table.slope_e0)},
                     {"slope_e1", slope_json(table.slope_e1)}});
  info << "slope_e0=" << slope_text(table.slope_e0) << " slope_e1=" << slope_text(table.slope_e1) << "\n";
  return kSuccess;
}

int cmd_toeplitz_sweep(const RunConfig& cfg, std::ostream& data, std::ostream& info) {
  const auto d = static_cast<std::size_t>(cfg.d);
  const auto ms = levels_or(cfg, kDefaultSweep);
  const auto f = test_functions::shipped(cfg.f, d);
  const auto g = test_functions::shipped(cfg.g, d);
  const auto norms = toeplitz::norm_sweep(f.value, d, ms);
  const auto comm = toeplitz::commutator_sweep(f, g, d, ms);

  std::ostringstream a, b;
  a << "m,norm,defect\n";
  b << "m,commutator_defect\n";
  std::vector<double> mx, defect, cdefect;
  for (const auto& r : norms) {
    a << r.m << ',' << format_double(r.norm) << ',' << format_double(r.defect) << "\n";
    mx.push_back(r.m);
    defect.push_back(r.defect);
  }
  for (const auto& r : comm) {
    b << r.m << ',' << format_double(r.defect) << "\n";
    cdefect.push_back(r.defect);
  }
  const auto slope_norm = operators::fit_loglog_slope(mx, defect);
  const auto slope_comm = operators::fit_loglog_slope(mx, cdefect);
  if (cfg.out.empty()) {
    data << a.str() << "\n" << b.str();
  } else {
    write_text(cfg.out, a.str());
    write_text(commutator_path(cfg.out), b.str());
  }
  emit_sidecar(cfg, {{"config", config_json(cfg)},
                     {"sup_estimate", norms.empty() ? json(nullptr) : json(norms.front().sup)},
                     {"slope_defect", slope_json(slope_norm)},
                     {"slope_commutator_defect", slope_json(slope_comm)},
                     {"commutator_csv", cfg.out.empty() ? json(nullptr) : json(commutator_path(cfg.out))}});
  info << "slope_defect=" << slope_text(slope_norm) << " slope_commutator_defect=" << slope_text(slope_comm) << "\n";
  return kSuccess;
}

int cmd_torus_holonomy(const RunConfig& cfg, std::ostream& data, std::ostream& info) {
  const int m = static_cast<int>(cfg.m);
  const long k = cfg.k_max;
  std::ostringstream csv;
  csv << "k1,k2,m,re,im,phase\n";
  std::map<std::pair<long, long>, cplx> grid;
  for (long k1 = -k; k1 <= k; ++k1) {
    for (long k2 = -k; k2 <= k; ++k2) {
      const auto h = pullback::torus_holonomy(pullback::LoopSpec{k1, k2, std::nullopt}, m);
      grid[{k1, k2}] = h.value;
      csv << k1 << ',' << k2 << ',' << m << ',' << format_double(h.value.real()) << ','
          << format_double(h.value.imag()) << ',' << format_double(h.phase) << "\n";
    }
  }
  double worst = 0.0;
  for (const auto& [a, ha] : grid) {
    for (const auto& [b, hb] : grid) {
      const auto sum = grid.find({a.first + b.first, a.second + b.second});
      if (sum != grid.end()) worst = std::max(worst, std::abs(sum->second - ha * hb));
    }
  }
  const bool pass = worst <= kMultiplicativityTol;
  emit(cfg, data, csv.str());
  emit_sidecar(cfg, {{"config", config_json(cfg)},
                     {"multiplicativity_max_deviation", worst},
                     {"multiplicativity_pass", pass}});
  info << "multiplicativity max deviation=" << format_double(worst) << (pass ? " (ok)\n" : " (FAILED)\n");
  return pass ? kSuccess : kSuiteFailure;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::OddLevel:
    case ErrorKind::ResourceLimit:
      return kConfigError;
    default:
      return kNumericFailure;
  }
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"basis", "kernel-check", "star-sweep", "toeplitz-sweep",
                                              "torus-holonomy"};
  return names;
}

std::vector<unsigned> parse_m_list(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "m-list entry '" + item + "' is not an integer");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size() || v < 1) {
      throw Error(ErrorKind::InvalidArgument, "m-list entry '" + item + "' is not a positive integer");
    }
    out.push_back(static_cast<unsigned>(v));
  }
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "m-list is empty");
  return out;
}

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int run(const RunConfig& cfg, std::ostream& data, std::ostream& info) {
  try {
    validate(cfg);
    if (cfg.command == "basis") return cmd_basis(cfg, data, info);
    if (cfg.command == "kernel-check") return cmd_kernel_check(cfg, data, info);
    if (cfg.command == "star-sweep") return cmd_star_sweep(cfg, data, info);
    if (cfg.command == "toeplitz-sweep") return cmd_toeplitz_sweep(cfg, data, info);
    return cmd_torus_holonomy(cfg, data, info);
  } catch (const ConfigError& e) {
    info << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    info << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    info << "error: " << e.what() << "\n";
    return kNumericFailure;
  }
}

}  // namespace berezin::cli
