// Command-line front end: run / learn / replay / analyze / verify.
// Machine-read lines go to stdout; warnings and progress notes to stderr.
// Any library failure prints "error: <code>: <message>" and exits non-zero.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "auvfl/acceptance.hpp"
#include "auvfl/analysis.hpp"
#include "auvfl/errors.hpp"
#include "auvfl/scenario.hpp"
#include "auvfl/sim.hpp"
#include "auvfl/trace_csv.hpp"

namespace {

using namespace auvfl;

bool verbose() {
  const char* v = std::getenv("AUVFL_VERBOSE");
  return v != nullptr && std::string(v) != "0";
}

void note(const std::string& line) {
  if (verbose()) std::cerr << line << std::endl;
}

// --scenario accepts either a file path or a bare preset name.
sim::SimConfig load_scenario(const std::string& arg) {
  if (!std::filesystem::exists(arg) && sim::is_preset_name(arg)) {
    return sim::preset(arg);
  }
  return sim::parse_scenario(arg);
}

std::vector<dynamics::Vec3> offsets_of(const sim::SimConfig& cfg) {
  std::vector<dynamics::Vec3> out;
  for (const auto& a : cfg.agents) out.push_back(a.d_star);
  return out;
}

std::vector<dynamics::VehicleParams> params_of(const sim::SimConfig& cfg) {
  std::vector<dynamics::VehicleParams> out;
  for (const auto& a : cfg.agents) out.push_back(a.params);
  return out;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << std::endl;
}

sim::SimTrace run_and_report(const sim::SimConfig& cfg) {
  note("integrating " + std::to_string(cfg.sim.t_end) + " s at dt " +
       std::to_string(cfg.sim.dt));
  sim::SimTrace trace = sim::run_scenario(cfg);
  print_warnings(trace.warnings);
  std::cout << "simulated " << trace.t.back() << " s, " << trace.n_samples()
            << " samples, " << trace.n_agents() << " agents\n";
  return trace;
}

int cmd_run(const std::string& scenario, const std::string& out, bool dump) {
  if (dump) {
    if (!std::filesystem::exists(scenario) && sim::is_preset_name(scenario)) {
      std::cout << sim::preset_text(scenario);
    } else {
      std::cout << sim::serialize_scenario(sim::parse_scenario(scenario));
    }
    return 0;
  }
  const sim::SimConfig cfg = load_scenario(scenario);
  const sim::SimTrace trace = run_and_report(cfg);
  if (!out.empty()) {
    sim::write_trace_csv(trace, out);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_learn(const std::string& scenario, const std::string& window,
              const std::string& prefix, const std::string& out,
              const std::string& warm_start) {
  sim::SimConfig cfg = load_scenario(scenario);
  cfg.mode = sim::ControllerMode::adaptive;  // learn always adapts
  if (!warm_start.empty()) cfg.warm_start_prefix = warm_start;
  const sim::SimTrace trace = run_and_report(cfg);

  double a, b;
  if (window.empty()) {  // default: the final quarter of the run
    const int n = trace.n_samples();
    a = trace.t[n - std::max(1, n / 4)];
    b = trace.t[n - 1];
  } else {
    char* end = nullptr;
    a = std::strtod(window.c_str(), &end);
    if (end == window.c_str() || *end != ',') {
      raise(Errc::ParseError, "--window expects two comma-separated times");
    }
    const char* second = end + 1;
    b = std::strtod(second, &end);
    if (end == second || *end != '\0') {
      raise(Errc::ParseError, "--window expects two comma-separated times");
    }
  }
  note("averaging weights over [" + std::to_string(a) + ", " +
       std::to_string(b) + "]");
  for (const auto& path : sim::export_learned_weights(trace, a, b, prefix)) {
    std::cout << "wrote " << path << "\n";
  }
  if (!out.empty()) {
    sim::write_trace_csv(trace, out);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_replay(const std::string& scenario, const std::string& weights,
               const std::string& out) {
  sim::SimConfig cfg = load_scenario(scenario);
  cfg.mode = sim::ControllerMode::pretrained;
  if (!weights.empty()) cfg.weights_prefix = weights;
  if (cfg.weights_prefix.empty()) {
    raise(Errc::MissingWeightsFile,
          "no weights given: pass --weights PREFIX or set weights_prefix in "
          "the scenario");
  }
  const sim::SimTrace trace = run_and_report(cfg);
  if (!out.empty()) {
    sim::write_trace_csv(trace, out);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_analyze(const std::string& trace_path, const std::string& scenario,
                const std::string& report_path, const std::string& figures_dir,
                const std::string& weights) {
  const sim::SimConfig cfg = load_scenario(scenario);
  sim::SimTrace trace = sim::read_trace_csv(trace_path);
  if (trace.n_agents() != cfg.n_agents()) {
    raise(Errc::DimensionMismatch,
          "trace has " + std::to_string(trace.n_agents()) +
              " agents but the scenario has " + std::to_string(cfg.n_agents()));
  }
  trace.nn = cfg.nn;  // the CSV does not carry the grid; the scenario does

  std::vector<Eigen::MatrixXd> w_bar;
  if (!weights.empty()) {
    for (int i = 1; i <= cfg.n_agents(); ++i) {
      w_bar.push_back(
          rbf::load_weights(weights + std::to_string(i) + ".rbfw").weights);
    }
  }

  analysis::Thresholds th;
  for (int k = 0; k < 3; ++k) {  // grade the LSQ floor with the law's leak
    th.lsq_ridge(k) = cfg.gains.sigma(k) * cfg.gains.K2(k, k);
  }
  const analysis::ConvergenceReport report = analysis::build_report(
      trace, offsets_of(cfg), params_of(cfg), w_bar, th);
  const std::string text = analysis::report_text(report);
  if (report_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(report_path, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) {
      raise(Errc::IoError, "cannot write " + report_path);
    }
    std::cout << "wrote " << report_path << "\n";
  }
  if (!figures_dir.empty()) {
    for (const auto& p :
         analysis::write_figure_csvs(trace, offsets_of(cfg), figures_dir)) {
      std::cout << "wrote " << p << "\n";
    }
  }
  return 0;
}

int cmd_verify(const std::string& preset, const std::string& work, bool full) {
  note("running acceptance pipeline on " + preset);
  std::vector<acceptance::CriterionResult> results =
      acceptance::run_acceptance(preset, work);
  if (full) {
    note("running full-scale smoke (minutes)");
    results.push_back(acceptance::run_fullscale_smoke());
  }
  std::cout << acceptance::format_results(results);
  int passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  const bool ok = acceptance::all_pass(results);
  std::cout << "verify: " << (ok ? "PASS" : "FAIL") << " (" << passed << "/"
            << results.size() << " criteria)\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::cout << std::unitbuf;  // keep stdout line-ordered even when piped
  std::cerr << std::unitbuf;

  CLI::App app{"formation-learning control simulator for 3-DOF vehicle fleets"};
  app.require_subcommand(1);

  std::string scenario, out, window, weights, trace_path, report_path;
  std::string figures_dir, warm_start;
  std::string preset_name = "desk-5auv", work_dir = "acceptance-work";
  bool dump = false, full = false;

  CLI::App* run = app.add_subcommand(
      "run", "integrate a scenario and write its trace");
  run->add_option("--scenario", scenario, "scenario file or preset name")
      ->required();
  run->add_option("--out", out, "trace CSV path");
  run->add_flag("--dump", dump,
                "print the scenario text instead of running it");

  CLI::App* learn = app.add_subcommand(
      "learn", "adaptive run, then consolidate and export the learned weights");
  learn->add_option("--scenario", scenario, "scenario file or preset name")
      ->required();
  learn->add_option("--window", window,
                    "averaging window 'a,b' in seconds (default: final 25%)");
  learn->add_option("--weights-out", weights, "output prefix for .rbfw files")
      ->required();
  learn->add_option("--out", out, "also write the adaptive trace CSV here");
  learn->add_option("--warm-start", warm_start,
                    "continue adaptation from these .rbfw files instead of "
                    "starting blank");

  CLI::App* replay = app.add_subcommand(
      "replay", "re-run with frozen learned weights (no adaptation)");
  replay->add_option("--scenario", scenario, "scenario file or preset name")
      ->required();
  replay->add_option("--weights", weights, "prefix of the .rbfw files");
  replay->add_option("--out", out, "trace CSV path");

  CLI::App* analyze = app.add_subcommand(
      "analyze", "convergence report and figure CSVs from a recorded trace");
  analyze->add_option("--trace", trace_path, "trace CSV to analyze")
      ->required();
  analyze->add_option("--scenario", scenario,
                      "scenario the trace came from (file or preset name)")
      ->required();
  analyze->add_option("--report", report_path,
                      "write the report here instead of stdout");
  analyze->add_option("--figures", figures_dir, "directory for figure CSVs");
  analyze->add_option("--weights", weights,
                      "consolidated .rbfw prefix to grade against the trace");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the acceptance pipeline and print pass/fail per criterion");
  verify->add_option("--preset", preset_name, "scenario preset to grade");
  verify->add_option("--work", work_dir, "scratch directory for run products");
  verify->add_flag("--full", full,
                   "also run the full-scale smoke criterion (minutes of CPU)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(scenario, out, dump);
    if (learn->parsed()) {
      return cmd_learn(scenario, window, weights, out, warm_start);
    }
    if (replay->parsed()) return cmd_replay(scenario, weights, out);
    if (analyze->parsed()) {
      return cmd_analyze(trace_path, scenario, report_path, figures_dir,
                         weights);
    }
    if (verify->parsed()) return cmd_verify(preset_name, work_dir, full);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Unexpected: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
