#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mslln::cli {

struct Context {
  std::vector<std::string> argv;
  std::ostream& out;
  std::ostream& err;
};

struct StatisticOptions {
  std::string s_list = "1,2,3";
  std::string exponents = "0.5,0.6,0.7,0.8,0.9,1";
  double epsilon = 0.005;
  double rho = 0.005;
  std::int64_t start = 601;
  bool proportional = false;
};

struct SimulateOptions {
  std::string config;
  std::optional<int> s;
  std::string sigma;
  std::string family;
  std::optional<double> alpha;
  std::optional<double> innov_scale;
  std::optional<double> scale;
  std::optional<double> center;
  std::optional<std::int64_t> length;
  std::optional<std::int64_t> window;
  std::string sharing;
  std::string method = "fft";
  std::uint64_t seed = 1;
  std::string out;
};

struct AnalyzeOptions {
  std::vector<std::string> inputs;
  std::string column;
  std::string label;
  std::string window = "auto";
  StatisticOptions stat;
  bool traces = true;
  int jobs = 1;
  std::string out;
};

struct EstimateOptions {
  std::vector<std::string> inputs;
  std::string column;
  std::string window = "auto";
  StatisticOptions stat;
  int jobs = 1;
  std::string out;
};

struct PredictOptions {
  double sigma = 0.75;
  std::string alpha1 = "inf";
  std::string s_list = "1,2,3";
  std::string exponents = "0.5,0.6,0.7,0.8,0.9,1";
  std::string label = "predicted";
  std::string out;
};

int run_simulate(const SimulateOptions& opt, Context& ctx);
int run_analyze(const AnalyzeOptions& opt, Context& ctx);
int run_estimate(const EstimateOptions& opt, Context& ctx);
int run_predict(const PredictOptions& opt, Context& ctx);

}  // namespace mslln::cli
