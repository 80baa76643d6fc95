#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ymflow/runner.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ymflow::IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ymflow::RunConfig load(const std::string& path) {
  return ymflow::parse_config(slurp(path));
}

int print_report(const ymflow::RunReport& rep) {
  for (const auto& v : rep.verdicts) std::cout << v.line() << '\n';
  std::cout << "output: " << rep.dir.string() << '\n';
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Yang-Mills heat flow on cubical lattices"};
  app.require_subcommand(1);

  std::string config, checkpoint, loops, v0, dir, resume_config;
  double until = 0.0;
  bool force = false;

  auto* run = app.add_subcommand("run", "integrate the flow described by a config");
  run->add_option("config", config)->required()->check(CLI::ExistingFile);

  auto* resume = app.add_subcommand("resume", "continue from a checkpoint");
  resume->add_option("checkpoint", checkpoint)->required()->check(CLI::ExistingFile);
  resume->add_option("--until", until, "new end time")->required();
  resume->add_flag("--force", force, "ignore a config hash mismatch");
  resume->add_option("--config", resume_config, "config to check against the checkpoint")
      ->check(CLI::ExistingFile);

  auto* wilson = app.add_subcommand("wilson", "Wilson loops of a checkpointed connection");
  wilson->add_option("checkpoint", checkpoint)->required()->check(CLI::ExistingFile);
  wilson->add_option("--loops", loops)->required()->check(CLI::ExistingFile);

  auto* oracle = app.add_subcommand("compare-oracle", "compare a U(1) run against the exact solution");
  oracle->add_option("config", config)->required()->check(CLI::ExistingFile);

  auto* variational = app.add_subcommand("variational", "integrate the linearized flow");
  variational->add_option("config", config)->required()->check(CLI::ExistingFile);
  variational->add_option("--v0", v0, "random:SEED[:SCALE], smooth:SEED[:SCALE] or vertical:SEED[:SCALE]")
      ->required();

  auto* report = app.add_subcommand("report", "summarize an output directory");
  report->add_option("dir", dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return print_report(ymflow::run(load(config)));
    if (*resume) {
      std::optional<std::string> text;
      if (!resume_config.empty()) text = slurp(resume_config);
      return print_report(ymflow::resume(checkpoint, until, force, text));
    }
    if (*wilson) {
      const auto w = ymflow::wilson_from_checkpoint(checkpoint, ymflow::read_loops(loops));
      for (std::size_t k = 0; k < w.size(); ++k) {
        std::printf("%zu %.17g %.17g\n", k, w[k].real(), w[k].imag());
      }
      return 0;
    }
    if (*oracle) {
      const auto rep = ymflow::compare_oracle(load(config));
      const auto& s = rep.series.at("oracle_rel_error");
      for (std::size_t k = 0; k < s.t.size(); ++k) {
        std::printf("%.6e %.6e\n", s.t[k], s.value[k]);
      }
      return print_report(rep);
    }
    if (*variational) {
      const auto rep = ymflow::run_variational(load(config), v0);
      const auto& s = rep.tangent_norm;
      std::printf("steps %zu final_t %.6e |v| %.6e -> %.6e\n", s.t.size() - 1,
                  s.t.back(), s.value.front(), s.value.back());
      if (!rep.vertical_residual.t.empty()) {
        std::printf("vertical residual sup %.6e\n", rep.vertical_residual.sup());
      }
      std::cout << "checkpoint: " << rep.checkpoint.string() << '\n';
      return 0;
    }
    if (*report) {
      const auto rep = ymflow::aggregate(dir);
      if (rep.series_lines.empty()) {
        std::cerr << "no series found in " << dir << '\n';
        return 1;
      }
      for (const auto& l : rep.verdict_lines) std::cout << l << '\n';
      for (const auto& l : rep.series_lines) std::cout << l << '\n';
      return rep.ok ? 0 : 1;
    }
  } catch (const ymflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
