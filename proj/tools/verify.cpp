#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "cli.hpp"
#include "manifest.hpp"
#include "mslln/experiments.hpp"
#include "mslln/format.hpp"
#include "mslln/kernel.hpp"
#include "mslln/linproc.hpp"
#include "mslln/tensor.hpp"

namespace mslln::cli {

namespace {

std::size_t reps_or(const VerifyOptions& opt, std::size_t fallback) {
  return opt.reps > 0 ? static_cast<std::size_t>(opt.reps) : fallback;
}

std::string ratio_evidence(const RatioStudy& st) {
  std::ostringstream out;
  out << "replicate";
  for (const double p : st.p_values) out << "\tratio_p" << format_real(p);
  out << '\n';
  for (std::size_t r = 0; r < st.ratios.front().size(); ++r) {
    out << (r + 1);
    for (const auto& col : st.ratios) out << '\t' << format_real(col[r]);
    out << '\n';
  }
  return out.str();
}

CheckResult ratio_check(std::string name, const RatioStudy& st, double below, double above) {
  CheckResult c;
  c.name = std::move(name);
  c.passed = st.medians[0] < below && st.medians[1] > above;
  c.detail = "median p=" + format_real(st.p_values[0]) + ": " + format_real(st.medians[0]) + " (< " +
             format_real(below) + "), p=" + format_real(st.p_values[1]) + ": " + format_real(st.medians[1]) +
             " (> " + format_real(above) + ")";
  c.evidence = ratio_evidence(st);
  return c;
}

}  // namespace

std::vector<CheckResult> kernel_suite(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const auto add = [&](double gamma, KernelPairing pairing, const std::string& tag) {
    const auto report = verify_kernel_bound(gamma, 1000, opt.radius, pairing, opt.jobs);
    CheckResult c;
    c.name = "kernel." + tag + "_g" + format_real(gamma);
    c.passed = std::isfinite(report.spread()) && report.spread() < 10.0;
    c.detail = "ratio spread " + format_real(report.spread()) + " over lags 2..1000 (< 10)";
    c.evidence = to_tsv(report);
    out.push_back(std::move(c));
  };
  for (const double g : {0.6, 0.75, 1.0, 1.5}) add(g, KernelPairing::equal, "equal");
  add(0.75, KernelPairing::mixed, "mixed");
  return out;
}

std::vector<CheckResult> mslln_suite(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  InnovationSpec gaussian;

  {
    const auto config = ProcessConfig::uniform(1, 0.8, gaussian, 1 << 16, 1 << 14);
    const auto seeds = replicate_seeds(opt.seed, reps_or(opt, 32));
    const std::vector<double> p{1.2, 1.8};
    out.push_back(ratio_check("mslln.lrd_ratio", partial_sum_ratio_study(config, seeds, 1 << 12, 1 << 16, p, opt.jobs),
                              0.5, 0.7));
  }
  {
    InnovationSpec pareto{InnovationFamily::symmetric_pareto, 1.5, 1.0, true};
    const auto source = [&pareto](std::uint64_t seed) { return sample(pareto, 1 << 16, seed); };
    const auto seeds = replicate_seeds(opt.seed, reps_or(opt, 32));
    const std::vector<double> p{1.3, 1.8};
    out.push_back(ratio_check("mslln.ht_ratio",
                              partial_sum_ratio_study(source, 0.0, seeds, 1 << 12, 1 << 16, p, opt.jobs), 0.6, 0.7));
  }
  for (const double sigma : {0.7, 0.9}) {
    const auto config = ProcessConfig::uniform(1, sigma, gaussian, 1 << 14, 1 << 14);
    const auto st = variance_study(config, replicate_seeds(opt.seed, reps_or(opt, 64)), opt.jobs);
    CheckResult c;
    c.name = "mslln.variance_s" + format_real(sigma);
    c.passed = st.relative_error() < 0.05;
    c.detail = "mean square " + format_real(st.simulated) + " vs " + format_real(st.expected) + ", relative error " +
               format_real(st.relative_error()) + " (< 0.05)";
    c.evidence = "simulated\texpected\n" + format_real(st.simulated) + '\t' + format_real(st.expected) + '\n';
    out.push_back(std::move(c));
  }
  {
    const double sigma = 0.7;
    const auto config = ProcessConfig::uniform(1, sigma, gaussian, 1 << 14, 1 << 14);
    const auto acov = mean_autocovariance(config, replicate_seeds(opt.seed, reps_or(opt, 64)), 64, opt.jobs);
    std::vector<double> lags, values;
    for (std::size_t h = 8; h <= 64; ++h) {
      lags.push_back(static_cast<double>(h));
      values.push_back(acov[h - 1]);
    }
    std::optional<double> slope;
    if (std::all_of(values.begin(), values.end(), [](double v) { return v > 0.0; })) {
      slope = loglog_slope(lags, values);
    }
    const double target = 1.0 - 2.0 * sigma;
    CheckResult c;
    c.name = "mslln.autocovariance_slope";
    c.passed = slope && std::abs(*slope - target) <= 0.15;
    c.detail = "slope " + (slope ? format_real(*slope) : std::string("undefined")) + " vs " + format_real(target) +
               " (+-0.15)";
    std::ostringstream ev;
    ev << "lag\tautocovariance\n";
    for (std::size_t h = 1; h <= acov.size(); ++h) ev << h << '\t' << format_real(acov[h - 1]) << '\n';
    c.evidence = ev.str();
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CheckResult> tensor_suite(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  {
    TensorConfig tc;
    tc.m = 1;
    tc.d_out = 1;
    tc.s = 2;
    tc.sigmas = {0.8};
    tc.length = 1 << 10;
    tc.exponents = {1.0 / 1.2};
    const auto tensors = simulate_tensor_paths(tc, opt.seed);
    const auto scalar = simulate_paths(
        ProcessConfig::uniform(2, 0.8, tc.innov, tc.length, tc.window, Sharing::independent), opt.seed);
    double worst = 0.0;
    for (std::size_t k = 0; k < scalar.d.size(); ++k) {
      const double diff = std::abs(tensors.tensors[k] - scalar.d[k]) / std::max(1.0, std::abs(scalar.d[k]));
      worst = std::max(worst, diff);
    }
    CheckResult c;
    c.name = "tensor.scalar_degeneracy";
    c.passed = worst <= 1e-12;
    c.detail = "max relative difference " + format_real(worst) + " (<= 1e-12)";
    c.evidence = "max_relative_difference\n" + format_real(worst) + '\n';
    out.push_back(std::move(c));
  }
  {
    TensorConfig tc;
    tc.m = 2;
    tc.d_out = 2;
    tc.s = 2;
    tc.sigmas = {0.8};
    tc.length = 1 << 14;
    tc.exponents = {1.0 / 1.2};
    tc.keep_tensors = false;
    const auto seeds = replicate_seeds(opt.seed, reps_or(opt, 16));
    std::vector<double> ratios;
    std::ostringstream ev;
    ev << "replicate\tnorm_n1024\tnorm_n16384\n";
    for (std::size_t r = 0; r < seeds.size(); ++r) {
      const auto paths = simulate_tensor_paths(tc, seeds[r]);
      const auto& norms = paths.normalized_norms[0];
      const double early = norms[(1 << 10) - 1];
      const double late = norms.back();
      ratios.push_back(late / early);
      ev << (r + 1) << '\t' << format_real(early) << '\t' << format_real(late) << '\n';
    }
    const double med = median(ratios);
    CheckResult c;
    c.name = "tensor.normalized_norm_decreasing";
    c.passed = med < 1.0;
    c.detail = "median norm(16384)/norm(1024) " + format_real(med) + " at p=1.2 (< 1)";
    c.evidence = ev.str();
    out.push_back(std::move(c));
  }
  return out;
}

int run_verify(const VerifyOptions& opt, Context& ctx) {
  const auto& s = opt.suite;
  if (s != "all" && s != "kernel" && s != "mslln" && s != "tensor") {
    throw UsageError("unknown suite '" + s + "' (kernel, mslln, tensor, all)");
  }
  if (opt.radius < 2000) throw UsageError("--radius must be at least 2000 for lags up to 1000");
  std::vector<CheckResult> results;
  const auto append = [&results](std::vector<CheckResult> more) {
    for (auto& r : more) results.push_back(std::move(r));
  };
  if (s == "all" || s == "kernel") append(kernel_suite(opt));
  if (s == "all" || s == "mslln") append(mslln_suite(opt));
  if (s == "all" || s == "tensor") append(tensor_suite(opt));

  bool all_passed = true;
  std::ostringstream summary;
  summary << "check\tstatus\tdetail\n";
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    ctx.out << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << '\n';
    summary << r.name << '\t' << (r.passed ? "pass" : "fail") << '\t' << r.detail << '\n';
  }
  if (!opt.out.empty()) {
    OutputDir dir(opt.out);
    dir.write_text("verify.tsv", manifest_comment() + summary.str());
    for (const auto& r : results) dir.write_text("evidence/" + r.name + ".tsv", manifest_comment("../manifest.json") + r.evidence);
    RunManifest manifest;
    manifest.command = "verify";
    manifest.argv = ctx.argv;
    manifest.seeds = {opt.seed};
    manifest.config = {{"suite", opt.suite}, {"radius", opt.radius}, {"reps", opt.reps}};
    dir.write_manifest(std::move(manifest));
  }
  return all_passed ? kExitOk : kExitVerification;
}

}  // namespace mslln::cli
