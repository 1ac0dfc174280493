#include "commands.hpp"

#include <cmath>
#include <sstream>

#include "cli.hpp"
#include "inputs.hpp"
#include "manifest.hpp"
#include "mslln/format.hpp"
#include "mslln/keyvalue.hpp"
#include "mslln/linproc.hpp"
#include "mslln/rates.hpp"
#include "mslln/statistic.hpp"

namespace mslln::cli {

namespace {

using nlohmann::json;

RunManifest start_manifest(std::string command, const Context& ctx) {
  RunManifest m;
  m.command = std::move(command);
  m.argv = ctx.argv;
  return m;
}

json with_manifest(std::string_view body, std::string_view key) {
  return {{"manifest", std::string(kManifestName)}, {std::string(key), json::parse(body)}};
}

std::vector<int> parse_powers(const std::string& text) {
  try {
    return parse_int_list(text);
  } catch (const Error& e) {
    throw UsageError(std::string("--s-list: ") + e.what());
  }
}

std::vector<double> parse_exponents(const std::string& text) {
  try {
    return parse_real_list(text);
  } catch (const Error& e) {
    throw UsageError(std::string("--exponents: ") + e.what());
  }
}

TableRequest make_request(const StatisticOptions& stat, std::size_t length, std::string label, int jobs) {
  TableRequest req;
  req.label = std::move(label);
  req.s_list = parse_powers(stat.s_list);
  req.exponents = parse_exponents(stat.exponents);
  req.cfg.epsilon = stat.epsilon;
  req.cfg.rho = stat.rho;
  req.cfg.start = stat.start;
  req.jobs = jobs;
  try {
    req.cfg.validate();
    if (stat.proportional) make_proportional(static_cast<std::int64_t>(length), req.cfg, req.rule);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return req;
}

json statistic_json(const StatisticOptions& stat) {
  return {{"s_list", stat.s_list},         {"exponents", stat.exponents}, {"epsilon", stat.epsilon},
          {"rho", stat.rho},               {"start", stat.start},         {"proportional", stat.proportional}};
}

void set_if(KeyValueSection& sec, const char* key, const std::optional<double>& v) {
  if (v) sec.set(key, format_real(*v));
}

void set_if(KeyValueSection& sec, const char* key, const std::optional<std::int64_t>& v) {
  if (v) sec.set(key, std::to_string(*v));
}

void set_if(KeyValueSection& sec, const char* key, const std::string& v) {
  if (!v.empty()) sec.set(key, v);
}

ProcessConfig resolve_process(const SimulateOptions& opt) {
  auto doc = opt.config.empty() ? KeyValueDocument{} : KeyValueDocument::load(opt.config);
  auto& proc = doc.section_mut("process");
  auto& innov = doc.section_mut("innovations");
  if (opt.s) proc.set("s", std::to_string(*opt.s));
  set_if(proc, "sigma", opt.sigma);
  set_if(proc, "scale", opt.scale);
  set_if(proc, "center", opt.center);
  set_if(proc, "length", opt.length);
  set_if(proc, "window", opt.window);
  set_if(proc, "sharing", opt.sharing);
  set_if(innov, "family", opt.family);
  set_if(innov, "alpha", opt.alpha);
  set_if(innov, "scale", opt.innov_scale);
  if (!proc.has("length")) throw UsageError("series length required (--length or [process] length)");
  if (!proc.has("sigma")) proc.set("sigma", format_real(CoefficientSpec{}.sigma));
  try {
    auto config = process_config_from_keyvalue(doc.to_string());
    if (config.length < 1) throw UsageError("length must be at least 1");
    return config;
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

ConvolutionMethod parse_method(const std::string& text) {
  if (text == "fft") return ConvolutionMethod::fft;
  if (text == "direct") return ConvolutionMethod::direct;
  throw UsageError("unknown convolution method '" + text + "' (fft, direct)");
}

std::string trace_name(const std::string& label, int s, double e) {
  return "traces/" + label + "_s" + std::to_string(s) + "_e" + format_real(e) + ".csv";
}

std::string describe(const Estimate& e) {
  switch (e.kind) {
    case BoundKind::point: return "= " + format_real(e.value);
    case BoundKind::lower_bound: return ">= " + format_real(e.value);
    case BoundKind::upper_bound: return "<= " + format_real(e.value);
    case BoundKind::unknown: break;
  }
  return "unknown";
}

}  // namespace

int run_simulate(const SimulateOptions& opt, Context& ctx) {
  const auto config = resolve_process(opt);
  const auto method = parse_method(opt.method);
  std::vector<std::string> warnings;
  try {
    warnings = config.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  for (const auto& w : warnings) ctx.err << "warning: " << w << '\n';

  OutputDir dir(opt.out);
  auto manifest = start_manifest("simulate", ctx);
  manifest.seeds = {opt.seed};

  const auto ensemble = simulate_paths(config, opt.seed, method);
  dir.write_text("ensemble.tsv", manifest_comment() + to_tsv(ensemble));
  dir.write_bytes("ensemble.f64", to_binary(ensemble));
  auto sidecar = json::parse(sidecar_json(ensemble, "ensemble.f64"));
  sidecar["manifest"] = std::string(kManifestName);
  dir.write_text("ensemble.json", sidecar.dump(2) + "\n");

  manifest.config = sidecar["config"];
  manifest.config["method"] = opt.method;
  dir.write_manifest(std::move(manifest));

  double second_moment = 0.0;
  for (const double v : ensemble.x[0]) second_moment += v * v;
  second_moment /= static_cast<double>(ensemble.x[0].size());
  const double oracle = coefficient_energy(config.coeffs[0]) * innovation_variance(config.innov);
  ctx.out << "length\t" << ensemble.length() << '\n'
          << "components\t" << config.s << '\n'
          << "truncation_bound\t" << format_real(ensemble.truncation_bound) << '\n'
          << "mean_square_x1\t" << format_real(second_moment) << '\n'
          << "closed_form_variance\t" << format_real(oracle) << '\n'
          << "output\t" << dir.root().string() << '\n';
  return kExitOk;
}

int run_analyze(const AnalyzeOptions& opt, Context& ctx) {
  if (opt.inputs.empty()) throw UsageError("analyze needs at least one input file");
  if (!opt.label.empty() && opt.inputs.size() > 1) throw UsageError("--label applies to a single input");
  const auto mode = parse_window_mode(opt.window);

  std::optional<OutputDir> dir;
  if (!opt.out.empty()) dir.emplace(opt.out);

  std::vector<VerdictTable> tables;
  json inputs = json::array();
  for (const auto& path : opt.inputs) {
    const auto in = load_series(path, opt.column, opt.label, mode);
    auto req = make_request(opt.stat, in.values.size(), in.label, opt.jobs);
    req.keep_traces = opt.traces && dir.has_value();
    auto result = verdict_table(in.values, req);
    ctx.out << "# " << in.label << ": " << to_string(in.kind) << ", " << in.values.size() << " points, window "
            << in.window << '\n';
    inputs.push_back({{"path", path}, {"label", in.label}, {"kind", std::string(to_string(in.kind))},
                      {"points", in.values.size()}, {"window", in.window}, {"start", req.cfg.start},
                      {"offset_half", req.rule.offset_half}, {"offset_quarter", req.rule.offset_quarter}});
    if (dir) {
      if (in.prices) {
        dir->write_text("data/" + in.label + "_prices.tsv", manifest_comment("../manifest.json") + to_tsv(*in.prices));
        dir->write_text("data/" + in.label + "_window.csv",
                        manifest_comment("../manifest.json") + to_column_csv(in.values, "logreturn"));
      }
      for (std::size_t i = 0; i < result.traces.size(); ++i) {
        for (std::size_t j = 0; j < result.traces[i].size(); ++j) {
          dir->write_text(trace_name(in.label, req.s_list[i], req.exponents[j]),
                          manifest_comment("../manifest.json") + trace_csv(result.traces[i][j], req.cfg.start + 1));
        }
      }
    }
    tables.push_back(std::move(result.table));
  }

  const auto tsv = to_tsv(tables);
  ctx.out << tsv;
  if (dir) {
    dir->write_text("verdicts.tsv", manifest_comment() + tsv);
    dir->write_text("verdicts.json", with_manifest(to_json(tables), "tables").dump(2) + "\n");
    auto manifest = start_manifest("analyze", ctx);
    manifest.config = statistic_json(opt.stat);
    manifest.config["inputs"] = inputs;
    manifest.config["column"] = opt.column;
    manifest.config["window"] = opt.window;
    dir->write_manifest(std::move(manifest));
  }
  return kExitOk;
}

int run_estimate(const EstimateOptions& opt, Context& ctx) {
  if (opt.inputs.empty()) throw UsageError("estimate needs at least one input file");
  const auto mode = parse_window_mode(opt.window);

  std::vector<VerdictTable> tables;
  for (const auto& path : opt.inputs) {
    const auto text = read_file(path);
    if (looks_like_table_tsv(text)) {
      for (auto& t : tables_from_tsv(text)) tables.push_back(std::move(t));
      continue;
    }
    const auto in = load_series(path, opt.column, {}, mode);
    const auto req = make_request(opt.stat, in.values.size(), in.label, opt.jobs);
    tables.push_back(verdict_table(in.values, req).table);
  }

  std::vector<ParamEstimate> estimates;
  for (const auto& t : tables) estimates.push_back(estimate_parameters(t));
  const auto body = to_json(estimates);

  if (opt.out.empty()) {
    ctx.out << body;
    return kExitOk;
  }
  OutputDir dir(opt.out);
  dir.write_text("estimate.json", with_manifest(body, "estimates").dump(2) + "\n");
  dir.write_text("verdicts.tsv", manifest_comment() + to_tsv(tables));
  auto manifest = start_manifest("estimate", ctx);
  manifest.config = statistic_json(opt.stat);
  manifest.config["inputs"] = opt.inputs;
  manifest.config["window"] = opt.window;
  dir.write_manifest(std::move(manifest));
  for (const auto& e : estimates) {
    ctx.out << e.label << "\tsigma " << describe(e.sigma) << "\talpha1 " << describe(e.alpha1) << "\tinterval ["
            << format_real(e.alpha1_low) << ", " << format_real(e.alpha1_high) << "]\n";
  }
  return kExitOk;
}

int run_predict(const PredictOptions& opt, Context& ctx) {
  double alpha1 = 0.0;
  if (!parse_real(opt.alpha1, alpha1)) throw UsageError("--alpha1 must be a number or inf");
  const auto powers = parse_powers(opt.s_list);
  const auto exponents = parse_exponents(opt.exponents);
  VerdictTable table;
  try {
    table = predict_table(opt.sigma, alpha1, powers, exponents, opt.label);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const std::vector<VerdictTable> tables{table};
  const auto tsv = to_tsv(tables);
  ctx.out << tsv;
  if (!opt.out.empty()) {
    OutputDir dir(opt.out);
    dir.write_text("predicted.tsv", manifest_comment() + tsv);
    auto manifest = start_manifest("table-predict", ctx);
    manifest.config = {{"sigma", opt.sigma}, {"alpha1", opt.alpha1}, {"s_list", opt.s_list},
                       {"exponents", opt.exponents}, {"label", opt.label}};
    dir.write_manifest(std::move(manifest));
  }
  return kExitOk;
}

}  // namespace mslln::cli
