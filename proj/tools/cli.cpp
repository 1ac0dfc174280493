#include "cli.hpp"

#include <filesystem>
#include <thread>

#include "CLI11.hpp"
#include "commands.hpp"
#include "manifest.hpp"
#include "verify.hpp"

namespace mslln::cli {

namespace {

void add_statistic_options(CLI::App& cmd, StatisticOptions& stat) {
  cmd.add_option("--s-list", stat.s_list, "Powers s, comma separated")->capture_default_str();
  cmd.add_option("--exponents", stat.exponents, "Exponents 1/p, comma separated")->capture_default_str();
  cmd.add_option("--epsilon", stat.epsilon, "Smoothing rate of the running mean")->capture_default_str();
  cmd.add_option("--rho", stat.rho, "Smoothing rate of the running s-th moment")->capture_default_str();
  cmd.add_option("--start", stat.start, "Initialisation length")->capture_default_str();
  cmd.add_flag("--proportional", stat.proportional, "Scale start and averaging offsets to the series length");
}

void add_jobs(CLI::App& cmd, int& jobs) {
  cmd.add_option("--jobs,-j", jobs, "Worker threads (0 = all cores)")->capture_default_str()->check(CLI::NonNegativeNumber);
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

int rerun(const std::string& manifest_path, const std::string& out_override, std::ostream& out, std::ostream& err) {
  auto manifest = RunManifest::load(manifest_path);
  auto args = manifest.argv;
  if (args.empty()) throw DataError("manifest has an empty argv");
  if (!out_override.empty()) {
    // Drop every spelling of the recorded output flag, then append the new one.
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
      const auto& a = args[i];
      if (a == "--out" || a == "-o") {
        ++i;
      } else if (!(a.rfind("--out=", 0) == 0 || (a.size() > 2 && a.rfind("-o", 0) == 0))) {
        kept.push_back(a);
      }
    }
    args = std::move(kept);
    args.push_back("--out");
    args.push_back(out_override);
  }
  return run(args, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Long-memory, heavy-tail diagnostics for linear processes and price series", "mslln"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate a linear-process ensemble");
  simulate->add_option("--config", sim.config, "INI file with [process] and [innovations] sections");
  simulate->add_option("--s", sim.s, "Number of product factors");
  simulate->add_option("--sigma", sim.sigma, "Decay exponent(s), one or s comma-separated values");
  simulate->add_option("--family", sim.family, "gaussian, student_t or symmetric_pareto");
  simulate->add_option("--alpha", sim.alpha, "Tail index (or degrees of freedom)");
  simulate->add_option("--innovation-scale", sim.innov_scale, "Innovation scale");
  simulate->add_option("--scale", sim.scale, "Coefficient scale L");
  simulate->add_option("--center", sim.center, "Value of c_0");
  simulate->add_option("--length,-n", sim.length, "Series length");
  simulate->add_option("--window", sim.window, "Truncation half-width M");
  simulate->add_option("--sharing", sim.sharing, "shared or independent");
  simulate->add_option("--method", sim.method, "Convolution: fft or direct")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  simulate->add_option("--out,-o", sim.out, "Output directory")->required();

  AnalyzeOptions an;
  auto* analyze = app.add_subcommand("analyze", "Verdict table and f(n) traces for price or series files");
  analyze->add_option("inputs", an.inputs, "Price CSV, ensemble TSV or one-column series")->required();
  analyze->add_option("--column", an.column, "Column to analyse (default: Adj Close for prices, d for ensembles)");
  analyze->add_option("--label", an.label, "Series label (single input)");
  analyze->add_option("--window", an.window, "auto, dates, offsets or full")->capture_default_str();
  analyze->add_flag("!--no-traces", an.traces, "Skip the per-cell trace files");
  add_statistic_options(*analyze, an.stat);
  add_jobs(*analyze, an.jobs);
  analyze->add_option("--out,-o", an.out, "Output directory");

  EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "Estimate sigma and alpha_1 from verdict tables or raw series");
  estimate->add_option("inputs", est.inputs, "Verdict TSV or data files")->required();
  estimate->add_option("--column", est.column, "Column to analyse for raw inputs");
  estimate->add_option("--window", est.window, "auto, dates, offsets or full")->capture_default_str();
  add_statistic_options(*estimate, est.stat);
  add_jobs(*estimate, est.jobs);
  estimate->add_option("--out,-o", est.out, "Output directory");

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Run the numerical verification suites");
  verify->add_option("suite", ver.suite, "kernel, mslln, tensor or all")->capture_default_str();
  verify->add_option("--seed", ver.seed, "Base seed of the replicates")->capture_default_str();
  verify->add_option("--radius", ver.radius, "Summation radius of the kernel sums")->capture_default_str();
  verify->add_option("--reps", ver.reps, "Replicates per Monte Carlo check (0 = defaults)")->capture_default_str();
  add_jobs(*verify, ver.jobs);
  verify->add_option("--out,-o", ver.out, "Output directory for evidence");

  PredictOptions pred;
  auto* predict = app.add_subcommand("table-predict", "Verdict table implied by the rate bounds");
  predict->add_option("--sigma", pred.sigma, "Decay exponent")->capture_default_str();
  predict->add_option("--alpha1", pred.alpha1, "Tail index of the innovations (inf allowed)")->capture_default_str();
  predict->add_option("--s-list", pred.s_list, "Powers s")->capture_default_str();
  predict->add_option("--exponents", pred.exponents, "Exponents 1/p")->capture_default_str();
  predict->add_option("--label", pred.label, "Series label")->capture_default_str();
  predict->add_option("--out,-o", pred.out, "Output directory");

  std::string manifest_path, rerun_out;
  auto* again = app.add_subcommand("rerun", "Repeat the run recorded in a manifest");
  again->add_option("manifest", manifest_path, "manifest.json of an earlier run")->required();
  again->add_option("--out,-o", rerun_out, "Write into this directory instead");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  Context ctx{{args.begin(), args.end()}, out, err};

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }
    an.jobs = resolve_jobs(an.jobs);
    est.jobs = resolve_jobs(est.jobs);
    ver.jobs = resolve_jobs(ver.jobs);
    if (*simulate) return run_simulate(sim, ctx);
    if (*analyze) return run_analyze(an, ctx);
    if (*estimate) return run_estimate(est, ctx);
    if (*verify) return run_verify(ver, ctx);
    if (*predict) return run_predict(pred, ctx);
    if (*again) return rerun(manifest_path, rerun_out, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace mslln::cli
