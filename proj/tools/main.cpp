#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "berezin/cli.hpp"

int main(int argc, char** argv) {
  berezin::cli::RunConfig cfg;
  CLI::App app{"Berezin and Berezin-Toeplitz quantization experiments"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.add_option("command", cfg.command, "basis | kernel-check | star-sweep | toeplitz-sweep | torus-holonomy")
      ->required();
  app.add_option("--d", cfg.d, "complex dimension");
  app.add_option("--m", cfg.m, "level m");
  std::vector<std::string> m_list;
  auto* list_opt = app.add_option("--m-list", m_list, "comma-separated levels")->delimiter(',');
  app.add_option("--level", cfg.level, "quadrature level (0 = automatic)");
  app.add_option("--f", cfg.f, "first shipped function id");
  app.add_option("--g", cfg.g, "second shipped function id");
  app.add_option("--out", cfg.out, "output file (sidecar JSON at <out>.json)");
  app.add_option("--seed", cfg.seed, "seed for sampled points");
  app.add_option("--mu-re", cfg.mu_re, "Re of the evaluation point (first coordinate)");
  app.add_option("--mu-im", cfg.mu_im, "Im of the evaluation point (first coordinate)");
  app.add_option("--k-max", cfg.k_max, "torus grid bound |k1|, |k2| <= k-max");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return berezin::cli::kConfigError;
  }
  if (list_opt->count() > 0) {
    std::string joined;
    for (std::size_t i = 0; i < m_list.size(); ++i) joined += (i ? "," : "") + m_list[i];
    cfg.m_list = joined;
  }
  return berezin::cli::run(cfg, std::cout, std::cerr);
}
