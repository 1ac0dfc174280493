#include "mslln/linproc.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "mslln/error.hpp"
#include "mslln/format.hpp"
#include "mslln/keyvalue.hpp"
#include "mslln/rng.hpp"

namespace mslln {

std::string_view to_string(Sharing sharing) {
  return sharing == Sharing::shared ? "shared" : "independent";
}

Sharing parse_sharing(std::string_view name) {
  if (name == "shared") return Sharing::shared;
  if (name == "independent") return Sharing::independent;
  throw ConfigError("unknown sharing mode '" + std::string(name) + "'");
}

std::vector<std::string> ProcessConfig::validate() const {
  if (s < 1) throw ConfigError("process needs s >= 1 components");
  if (static_cast<int>(coeffs.size()) != s) {
    throw ConfigError("process has " + std::to_string(coeffs.size()) + " coefficient specs for s = " +
                      std::to_string(s));
  }
  if (length < 1) throw LengthError("process length must be >= 1");
  if (window < 1) throw ConfigError("process window must be >= 1");
  for (const auto& c : coeffs) {
    c.validate();
    if (c.window != window) throw ConfigError("coefficient window differs from process window");
  }
  innov.validate();

  std::vector<std::string> warnings;
  const double needed = std::max(s, 2);
  if (!(tail_coefficient(innov) > needed)) {
    warnings.push_back("innovation tail coefficient " + format_real(tail_coefficient(innov)) +
                       " does not exceed s v 2 = " + format_real(needed) +
                       "; the moment condition fails (stress-test regime)");
  }
  return warnings;
}

ProcessConfig ProcessConfig::uniform(int s, double sigma, InnovationSpec innov, std::int64_t length,
                                     std::int64_t window, Sharing sharing) {
  ProcessConfig c;
  c.s = s;
  c.innov = innov;
  c.length = length;
  c.window = window;
  c.sharing = sharing;
  CoefficientSpec spec;
  spec.sigma = sigma;
  spec.window = window;
  c.coeffs.assign(static_cast<std::size_t>(std::max(s, 0)), spec);
  return c;
}

ProcessConfig process_config_from_keyvalue(std::string_view text) {
  const auto doc = KeyValueDocument::parse(text);
  const auto& proc = doc.section("process");
  proc.reject_unknown({"s", "sigma", "scale", "center", "window", "length", "sharing"});
  ProcessConfig c;
  c.s = static_cast<int>(proc.has("s") ? proc.get_int("s") : 1);
  c.length = proc.get_int("length");
  if (proc.has("window")) c.window = proc.get_int("window");
  c.sharing = parse_sharing(proc.get_or("sharing", "shared"));
  c.innov = innovation_from_section(doc.section("innovations"));

  const auto sigmas = proc.get_real_list("sigma");
  if (sigmas.size() != 1 && static_cast<int>(sigmas.size()) != c.s) {
    throw ConfigError("sigma list must have 1 or s entries");
  }
  for (int r = 0; r < c.s; ++r) {
    CoefficientSpec spec;
    spec.sigma = sigmas.size() == 1 ? sigmas[0] : sigmas[static_cast<std::size_t>(r)];
    if (proc.has("scale")) spec.scale = proc.get_real("scale");
    if (proc.has("center")) spec.center_value = proc.get_real("center");
    spec.window = c.window;
    c.coeffs.push_back(spec);
  }
  return c;
}

std::string to_keyvalue(const ProcessConfig& config) {
  std::ostringstream out;
  std::vector<double> sigmas;
  for (const auto& c : config.coeffs) sigmas.push_back(c.sigma);
  out << "[process]\n";
  out << "s = " << config.s << '\n';
  out << "sigma = " << join_reals(sigmas) << '\n';
  if (!config.coeffs.empty()) {
    out << "scale = " << format_real(config.coeffs.front().scale) << '\n';
    out << "center = " << format_real(config.coeffs.front().center_value) << '\n';
  }
  out << "window = " << config.window << '\n';
  out << "length = " << config.length << '\n';
  out << "sharing = " << to_string(config.sharing) << "\n\n";
  out << "[innovations]\n" << to_keyvalue(config.innov);
  return out.str();
}

std::size_t innovation_count(const ProcessConfig& config) {
  return static_cast<std::size_t>(config.length + 2 * config.window);
}

std::uint64_t component_stream_seed(std::uint64_t seed, Sharing sharing, int component) {
  const auto index = sharing == Sharing::shared ? 0 : static_cast<std::uint64_t>(component);
  return derive_stream(seed, index);
}

double truncation_error_bound(const CoefficientSpec& spec, std::int64_t window, double innov_variance) {
  if (!(spec.sigma > 0.5)) throw DomainError("truncation bound diverges for sigma <= 1/2");
  if (window < 1) throw ConfigError("truncation window must be >= 1");
  if (!(innov_variance > 0.0)) throw DomainError("innovation variance must be positive");
  const double m = static_cast<double>(window);
  return innov_variance * spec.scale * spec.scale * 2.0 * std::pow(m, 1.0 - 2.0 * spec.sigma) /
         (2.0 * spec.sigma - 1.0);
}

PathEnsemble simulate_paths_from_innovations(const ProcessConfig& config,
                                             std::span<const std::vector<double>> innovations,
                                             ConvolutionMethod method) {
  PathEnsemble ens;
  ens.warnings = config.validate();
  ens.config = config;
  const auto streams = config.sharing == Sharing::shared ? 1u : static_cast<std::size_t>(config.s);
  if (innovations.size() != streams) {
    throw ConfigError("expected " + std::to_string(streams) + " innovation streams, got " +
                      std::to_string(innovations.size()));
  }
  const auto count = innovation_count(config);
  for (const auto& v : innovations) {
    if (v.size() != count) throw LengthError("innovation stream must hold length + 2 window values");
  }

  ens.x.resize(static_cast<std::size_t>(config.s));
  for (int r = 0; r < config.s; ++r) {
    const auto& spec = config.coeffs[static_cast<std::size_t>(r)];
    const auto& xi = innovations[config.sharing == Sharing::shared ? 0 : static_cast<std::size_t>(r)];
    const bool same_filter = r > 0 && config.sharing == Sharing::shared &&
                             spec.sigma == config.coeffs[0].sigma && spec.scale == config.coeffs[0].scale &&
                             spec.center_value == config.coeffs[0].center_value;
    if (same_filter) {
      ens.x[static_cast<std::size_t>(r)] = ens.x[0];
      continue;
    }
    // The kernel is symmetric, so convolution and correlation coincide.
    const auto kernel = coefficient_kernel(spec);
    ens.x[static_cast<std::size_t>(r)] = convolve_valid(xi, kernel, method);
  }
  ens.d = products(ens.x);

  const double var = innovation_variance(config.innov);
  ens.truncation_bound = 0.0;
  for (const auto& spec : config.coeffs) {
    ens.truncation_bound = std::isfinite(var)
                               ? std::max(ens.truncation_bound, truncation_error_bound(spec, config.window, var))
                               : std::numeric_limits<double>::infinity();
  }
  return ens;
}

PathEnsemble simulate_paths(const ProcessConfig& config, std::uint64_t seed, ConvolutionMethod method) {
  (void)config.validate();
  const auto streams = config.sharing == Sharing::shared ? 1 : config.s;
  std::vector<std::vector<double>> innovations;
  innovations.reserve(static_cast<std::size_t>(streams));
  for (int r = 0; r < streams; ++r) {
    innovations.push_back(
        sample(config.innov, innovation_count(config), component_stream_seed(seed, config.sharing, r)));
  }
  auto ens = simulate_paths_from_innovations(config, innovations, method);
  ens.seed = seed;
  return ens;
}

std::vector<double> products(std::span<const std::vector<double>> paths) {
  if (paths.empty()) throw ConfigError("products needs at least one path");
  std::vector<double> d = paths[0];
  for (std::size_t r = 1; r < paths.size(); ++r) {
    if (paths[r].size() != d.size()) throw LengthError("component paths differ in length");
    for (std::size_t k = 0; k < d.size(); ++k) d[k] *= paths[r][k];
  }
  return d;
}

std::vector<double> products(const PathEnsemble& ensemble) { return products(ensemble.x); }

double expected_product(const ProcessConfig& config) {
  (void)config.validate();
  if (config.s == 1 || config.sharing == Sharing::independent) return 0.0;
  if (config.s != 2) throw ConfigError("expected_product supports shared innovations only for s <= 2");
  const double var = innovation_variance(config.innov);
  if (!std::isfinite(var)) throw DomainError("expected_product needs finite innovation variance");
  const auto a = coefficient_kernel(config.coeffs[0]);
  const auto b = coefficient_kernel(config.coeffs[1]);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return var * acc;
}

std::string to_tsv(const PathEnsemble& ensemble) {
  std::ostringstream out;
  out << "k";
  for (std::size_t r = 0; r < ensemble.x.size(); ++r) out << "\tx_" << (r + 1);
  out << "\td\n";
  for (std::size_t k = 0; k < ensemble.d.size(); ++k) {
    out << (k + 1);
    for (const auto& path : ensemble.x) out << '\t' << format_real(path[k]);
    out << '\t' << format_real(ensemble.d[k]) << '\n';
  }
  return out.str();
}

namespace {

void append_le(std::vector<unsigned char>& out, double value) {
  auto bits = std::bit_cast<std::uint64_t>(value);
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<unsigned char>(bits & 0xFF));
    bits >>= 8;
  }
}

nlohmann::json real_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

std::vector<unsigned char> to_binary(const PathEnsemble& ensemble) {
  std::vector<unsigned char> out;
  out.reserve((ensemble.x.size() + 1) * ensemble.d.size() * 8);
  for (const auto& path : ensemble.x) {
    for (const double v : path) append_le(out, v);
  }
  for (const double v : ensemble.d) append_le(out, v);
  return out;
}

std::string sidecar_json(const PathEnsemble& ensemble, std::string_view binary_name) {
  nlohmann::json j;
  const auto& c = ensemble.config;
  j["format"] = "float64-le-planar";
  j["file"] = std::string(binary_name);
  j["length"] = ensemble.d.size();
  std::vector<std::string> columns;
  for (int r = 1; r <= c.s; ++r) columns.push_back("x_" + std::to_string(r));
  columns.push_back("d");
  j["columns"] = columns;
  j["seed"] = ensemble.seed;
  j["truncation_bound"] = real_or_null(ensemble.truncation_bound);
  nlohmann::json cfg;
  cfg["s"] = c.s;
  cfg["window"] = c.window;
  cfg["length"] = c.length;
  cfg["sharing"] = std::string(to_string(c.sharing));
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& spec : c.coeffs) {
    coeffs.push_back({{"sigma", spec.sigma}, {"scale", spec.scale}, {"center_value", spec.center_value}});
  }
  cfg["coeffs"] = coeffs;
  cfg["innovations"] = {{"family", std::string(to_string(c.innov.family))},
                        {"alpha", c.innov.df_or_alpha},
                        {"scale", c.innov.scale}};
  j["config"] = cfg;
  j["warnings"] = ensemble.warnings;
  return j.dump(2) + "\n";
}

}  // namespace mslln
