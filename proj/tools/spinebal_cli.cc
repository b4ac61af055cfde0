#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinebal/config.h"
#include "spinebal/errors.h"
#include "spinebal/experiment.h"
#include "spinebal/trace_io.h"

namespace {

namespace fs = std::filesystem;
using namespace spinebal;

enum ExitCode {
  kOk = 0,
  kConfigFailure = 1,
  kBracketFailure = 2,
  kParameterFailure = 3,
  kIoFailure = 4,
};

struct Options {
  std::string config_path;
  std::string out_dir;
  std::string controller;
  unsigned jobs = 1;
  std::optional<std::uint64_t> seed;
};

ExperimentConfig Resolve(const Options& opt) {
  ExperimentConfig c =
      opt.config_path.empty() ? ExperimentConfig{} : LoadConfig(opt.config_path);
  if (!opt.out_dir.empty()) c.output_dir = opt.out_dir;
  if (!opt.controller.empty()) c.controller.kind = ParseControllerKind(opt.controller);
  if (opt.seed) c.seed = *opt.seed;
  c.Validate();
  return c;
}

void PrintWarnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int CmdSolve(const Options& opt) {
  const ExperimentConfig c = Resolve(opt);
  const SolverResult r = SolveForConfig(c);
  PrintWarnings(r.warnings);
  std::cout << SolverReportToJson(r).dump(2) << "\n";
  return kOk;
}

int CmdSimulate(const Options& opt) {
  const ExperimentConfig c = Resolve(opt);
  const fs::path dir = c.output_dir;
  const SweepResult s = RunSweep(c, c.controller.kind, opt.jobs, dir);
  PrintWarnings(s.plan.warnings);
  const fs::path summary =
      dir / (std::string(ControllerKindName(c.controller.kind)) + "_summary.json");
  WriteJsonFile(SummaryToJson(c, s), summary);
  std::cout << "wrote " << s.records.size() << " traces and " << summary.string()
            << "\n";
  return kOk;
}

int CmdSweep(const Options& opt) {
  const ExperimentConfig base = Resolve(opt);
  for (ControllerKind kind : kAllControllers) {
    ExperimentConfig c = base;
    c.controller.kind = kind;
    const fs::path dir = fs::path(c.output_dir) / std::string(ControllerKindName(kind));
    const SweepResult s = RunSweep(c, kind, opt.jobs, dir);
    PrintWarnings(s.plan.warnings);
    WriteJsonFile(SummaryToJson(c, s), dir / "summary.json");
    std::cout << ControllerKindName(kind) << ": " << s.records.size()
              << " traces in " << dir.string() << "\n";
  }
  return kOk;
}

int CmdCompare(const Options& opt) {
  const ExperimentConfig c = Resolve(opt);
  const CompareResult r = RunCompare(c, opt.jobs);
  if (r.solved) PrintWarnings(r.solved->warnings);
  std::cout << CompareTable(r);
  const fs::path path = fs::path(c.output_dir) / "compare.json";
  WriteJsonFile(CompareToJson(r), path);
  std::cout << "wrote " << path.string() << "\n";
  return kOk;
}

int CmdPrintDefault() {
  std::cout << ConfigToJson(ExperimentConfig{}).dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balance analysis of a trotting quadruped with a lateral spine"};
  app.require_subcommand(0, 1);
  Options opt;
  bool print_default = false;
  app.add_flag("--print-default-config", print_default,
               "Print the default configuration as JSON and exit");

  auto add_common = [&](CLI::App* sub, bool with_controller) {
    sub->add_option("--config", opt.config_path, "Experiment config (JSON)")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "Output directory");
    sub->add_option("--jobs", opt.jobs, "Parallel runs")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "Override the config seed");
    if (with_controller) {
      sub->add_option("--controller", opt.controller,
                      "non-spine | spine | balance-spine")
          ->check(CLI::IsMember({"non-spine", "spine", "balance-spine",
                                 "non_spine", "balance_spine"}));
    }
  };
  CLI::App* solve = app.add_subcommand("solve", "Solve for the balancing flexion R'");
  add_common(solve, false);
  CLI::App* simulate =
      app.add_subcommand("simulate", "Run the frequency sweep for one controller");
  add_common(simulate, true);
  CLI::App* sweep =
      app.add_subcommand("sweep", "Run the frequency sweep for all controllers");
  add_common(sweep, false);
  CLI::App* compare =
      app.add_subcommand("compare", "Compare the three controllers across the sweep");
  add_common(compare, false);
  CLI::App* print_cfg =
      app.add_subcommand("print-default-config", "Print the default configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigFailure;
  }

  try {
    if (print_default || print_cfg->parsed()) return CmdPrintDefault();
    if (solve->parsed()) return CmdSolve(opt);
    if (simulate->parsed()) return CmdSimulate(opt);
    if (sweep->parsed()) return CmdSweep(opt);
    if (compare->parsed()) return CmdCompare(opt);
    std::cout << app.help();
    return kConfigFailure;
  } catch (const NoRootError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBracketFailure;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParameterFailure;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigFailure;
  }
}
