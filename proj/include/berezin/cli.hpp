#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "berezin/chart_point.hpp"

// Command implementations behind the berezin executable. Argument parsing
// lives in the executable; everything here works on a filled RunConfig.
namespace berezin::cli {

enum ExitCode : int { kSuccess = 0, kSuiteFailure = 1, kConfigError = 2, kNumericFailure = 3 };

struct RunConfig {
  std::string command;
  long d = 1;
  long m = 4;
  /// Comma-separated. Unset: kernel-check uses {m}, the sweeps use 4,8,16,32,64.
  std::optional<std::string> m_list;
  /// 0 selects the quadrature level automatically.
  long level = 0;
  std::string f = "sx";
  std::string g = "sy";
  /// CSV or JSON destination; empty writes the data to the data stream and skips sidecars.
  std::string out;
  std::uint64_t seed = 1;
  double mu_re = 0.3;
  double mu_im = 0.2;
  /// torus-holonomy grid is |k1|, |k2| <= k_max.
  long k_max = 3;
};

const std::vector<std::string>& commands();

/// Parses "4,8,16"; throws InvalidArgument on malformed or non-positive entries.
std::vector<unsigned> parse_m_list(const std::string& text);

/// %.17g.
std::string format_double(double x);

/// Runs one command. Tabular data goes to cfg.out (or `data`), human summaries to `info`.
/// Library errors are mapped to exit codes; nothing is thrown.
int run(const RunConfig& cfg, std::ostream& data, std::ostream& info);

}  // namespace berezin::cli
