#include <algorithm>
#include <cmath>
#include <cstring>

#include "doctest.h"
#include "json.hpp"
#include "mslln/error.hpp"
#include "mslln/experiments.hpp"
#include "mslln/linproc.hpp"
#include "mslln/tensor.hpp"
#include "support.hpp"

using namespace mslln;

namespace {

double closed_form_variance(const ProcessConfig& c) {
  double energy = 0.0;
  for (std::int64_t l = -c.window; l <= c.window; ++l) {
    const double cl = l == 0 ? c.coeffs[0].center_value
                             : c.coeffs[0].scale * std::pow(static_cast<double>(std::llabs(l)), -c.coeffs[0].sigma);
    energy += cl * cl;
  }
  return energy * innovation_variance(c.innov);
}

}  // namespace

TEST_CASE("simulated variance matches sum c_l^2 Var(xi)") {
  const auto config = ProcessConfig::uniform(1, 0.75, InnovationSpec{}, 1 << 12, 1 << 14);
  const auto st = variance_study(config, replicate_seeds(3, 64));
  CHECK(st.expected == doctest::Approx(closed_form_variance(config)).epsilon(1e-12));
  CHECK(st.relative_error() < 0.05);
}

TEST_CASE("zero innovations give a zero process") {
  const auto config = ProcessConfig::uniform(1, 0.75, InnovationSpec{}, 500, 64);
  const std::vector<std::vector<double>> zeros{std::vector<double>(innovation_count(config), 0.0)};
  const auto ens = simulate_paths_from_innovations(config, zeros);
  CHECK(std::all_of(ens.x[0].begin(), ens.x[0].end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("moving-average definition with explicit innovations") {
  auto config = ProcessConfig::uniform(1, 0.9, InnovationSpec{}, 40, 5);
  config.coeffs[0].center_value = 0.7;
  test_support::Gen g(8);
  const std::vector<std::vector<double>> xi{g.normals(innovation_count(config))};
  for (const auto method : {ConvolutionMethod::fft, ConvolutionMethod::direct}) {
    const auto ens = simulate_paths_from_innovations(config, xi, method);
    for (std::int64_t k = 1; k <= config.length; ++k) {
      // xi[0] is the innovation at index 1 - M.
      double expected = 0.0;
      for (std::int64_t l = k - config.window; l <= k + config.window; ++l) {
        expected += coefficient(config.coeffs[0], k - l) * xi[0][static_cast<std::size_t>(l - (1 - config.window))];
      }
      CHECK(ens.x[0][static_cast<std::size_t>(k - 1)] == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("shared innovations with equal coefficients give equal components") {
  const auto config = ProcessConfig::uniform(2, 0.8, InnovationSpec{}, 1000, 256, Sharing::shared);
  const auto ens = simulate_paths(config, 5);
  CHECK(ens.x[0] == ens.x[1]);
  CHECK(std::all_of(ens.d.begin(), ens.d.end(), [](double v) { return v >= 0.0; }));
  for (std::size_t k = 0; k < ens.d.size(); ++k) CHECK(ens.d[k] == ens.x[0][k] * ens.x[0][k]);
}

TEST_CASE("independent components differ") {
  const auto config = ProcessConfig::uniform(2, 0.8, InnovationSpec{}, 1000, 256, Sharing::independent);
  const auto ens = simulate_paths(config, 5);
  CHECK(ens.x[0] != ens.x[1]);
}

TEST_CASE("products") {
  auto config = ProcessConfig::uniform(1, 0.8, InnovationSpec{}, 300, 32);
  auto ens = simulate_paths(config, 1);
  CHECK(products(ens) == ens.x[0]);
  CHECK(ens.d == ens.x[0]);

  config = ProcessConfig::uniform(3, 0.8, InnovationSpec{}, 300, 32, Sharing::independent);
  test_support::Gen g(9);
  const auto count = innovation_count(config);
  const std::vector<std::vector<double>> xi{g.normals(count), std::vector<double>(count, 0.0), g.normals(count)};
  ens = simulate_paths_from_innovations(config, xi);
  CHECK(std::all_of(ens.d.begin(), ens.d.end(), [](double v) { return v == 0.0; }));
  CHECK_THROWS_AS(products(std::vector<std::vector<double>>{}), ConfigError);
}

// With one stream and one coefficient family d_k = x_k^s.
TEST_CASE("property: shared innovations and even s give nonnegative products") {
  for (const int s : {2, 4, 6}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto d = simulate_paths(ProcessConfig::uniform(s, 0.7, InnovationSpec{}, 2000, 512), seed).d;
      CHECK(std::all_of(d.begin(), d.end(), [](double v) { return v >= 0.0; }));
    }
  }
}

TEST_CASE("truncation error bound") {
  CoefficientSpec spec;
  spec.sigma = 0.75;
  CHECK(truncation_error_bound(spec, 10'000, 1.0) == doctest::Approx(0.04).epsilon(1e-12));
  spec.sigma = 1.0;
  CHECK(truncation_error_bound(spec, 10'000, 1.0) == doctest::Approx(2e-4).epsilon(1e-12));
  spec.sigma = 0.5;
  CHECK_THROWS_AS(truncation_error_bound(spec, 10'000, 1.0), DomainError);
}

TEST_CASE("truncation bound dominates the dropped coefficient mass") {
  CoefficientSpec spec;
  spec.sigma = 0.8;
  spec.window = 100;
  double dropped = 0.0;
  for (std::int64_t l = 101; l <= 10'000'000; ++l) dropped += 2.0 * std::pow(static_cast<double>(l), -1.6);
  CHECK(dropped <= truncation_error_bound(spec, 100, 1.0));
}

TEST_CASE("fft and direct convolution agree on n = 2^10") {
  for (const double sigma : {0.6, 0.8, 1.0}) {
    const auto config = ProcessConfig::uniform(1, sigma, InnovationSpec{}, 1 << 10, 1 << 10);
    const auto a = simulate_paths(config, 77, ConvolutionMethod::fft);
    const auto b = simulate_paths(config, 77, ConvolutionMethod::direct);
    for (std::size_t k = 0; k < a.d.size(); ++k) {
      CHECK(std::abs(a.x[0][k] - b.x[0][k]) <= 1e-10 * std::max(1.0, std::abs(b.x[0][k])));
    }
  }
}

TEST_CASE("simulation is deterministic") {
  const auto config = ProcessConfig::uniform(2, 0.7, {InnovationFamily::symmetric_pareto, 3.0, 1.0, true}, 3000, 1000,
                                             Sharing::independent);
  const auto a = simulate_paths(config, 123);
  const auto b = simulate_paths(config, 123);
  CHECK(a.x == b.x);
  CHECK(a.d == b.d);
  CHECK(to_binary(a) == to_binary(b));
  CHECK(simulate_paths(config, 124).d != a.d);
}

TEST_CASE("config validation") {
  auto config = ProcessConfig::uniform(1, 0.75, InnovationSpec{}, 0, 10);
  CHECK_THROWS_AS(config.validate(), LengthError);
  CHECK_THROWS_AS(simulate_paths(config, 1), LengthError);

  config = ProcessConfig::uniform(1, 0.75, {InnovationFamily::symmetric_pareto, 1.5, 1.0, true}, 10, 10);
  CHECK(config.validate().size() == 1);
  config = ProcessConfig::uniform(3, 0.75, {InnovationFamily::symmetric_pareto, 3.5, 1.0, true}, 10, 10);
  CHECK(config.validate().empty());
  config = ProcessConfig::uniform(3, 0.75, {InnovationFamily::symmetric_pareto, 3.0, 1.0, true}, 10, 10);
  CHECK(config.validate().size() == 1);

  config = ProcessConfig::uniform(2, 0.75, InnovationSpec{}, 10, 10);
  config.coeffs.pop_back();
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = ProcessConfig::uniform(1, 0.75, InnovationSpec{}, 10, 10);
  config.coeffs[0].window = 11;
  CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("config key-value round trip") {
  const auto config = process_config_from_keyvalue(
      "[process]\ns = 2\nsigma = 0.7, 0.9\nwindow = 128\nlength = 64\nsharing = independent\n"
      "[innovations]\nfamily = student_t\ndf = 5\n");
  CHECK(config.s == 2);
  CHECK(config.coeffs[1].sigma == 0.9);
  CHECK(config.coeffs[1].window == 128);
  CHECK(config.sharing == Sharing::independent);
  CHECK(config.innov.family == InnovationFamily::student_t);
  const auto back = process_config_from_keyvalue(to_keyvalue(config));
  CHECK(back.coeffs[0].sigma == 0.7);
  CHECK(back.length == 64);
  CHECK(back.innov.df_or_alpha == 5.0);
  CHECK_THROWS_AS(process_config_from_keyvalue("[process]\nlength = 4\nsigma = 0.7,0.8\n"), ConfigError);
  CHECK_THROWS_AS(process_config_from_keyvalue("[process]\nlength = 4\nsigma = 0.7\nbogus = 1\n"), ConfigError);
}

TEST_CASE("expected product") {
  auto config = ProcessConfig::uniform(2, 0.8, InnovationSpec{InnovationFamily::gaussian, 2.0, 2.0, true}, 10, 50);
  double cross = 0.0;
  for (std::int64_t l = -50; l <= 50; ++l) cross += std::pow(coefficient(config.coeffs[0], l), 2.0);
  CHECK(expected_product(config) == doctest::Approx(4.0 * cross));
  config.sharing = Sharing::independent;
  CHECK(expected_product(config) == 0.0);
  CHECK(expected_product(ProcessConfig::uniform(1, 0.8, InnovationSpec{}, 10, 50)) == 0.0);
  CHECK_THROWS_AS(expected_product(ProcessConfig::uniform(3, 0.8, InnovationSpec{}, 10, 50)), ConfigError);
}

TEST_CASE("ensemble exports") {
  const auto config = ProcessConfig::uniform(2, 0.8, InnovationSpec{}, 5, 8, Sharing::independent);
  const auto ens = simulate_paths(config, 4);
  const auto tsv = to_tsv(ens);
  CHECK(tsv.rfind("k\tx_1\tx_2\td\n1\t", 0) == 0);
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 6);

  const auto bin = to_binary(ens);
  REQUIRE(bin.size() == 3 * 5 * 8);
  double first = 0.0;
  std::memcpy(&first, bin.data(), 8);  // little-endian host
  CHECK(first == ens.x[0][0]);
  double last = 0.0;
  std::memcpy(&last, bin.data() + bin.size() - 8, 8);
  CHECK(last == ens.d.back());

  const auto j = nlohmann::json::parse(sidecar_json(ens, "e.f64"));
  CHECK(j["file"] == "e.f64");
  CHECK(j["length"] == 5);
  CHECK(j["seed"] == 4);
  CHECK(j["columns"].size() == 3);
  CHECK(j["truncation_bound"].get<double>() == doctest::Approx(ens.truncation_bound));
}

TEST_CASE("stationarity probe: autocovariance decays like h^(1 - 2 sigma)") {
  const double sigma = 0.7;
  const auto config = ProcessConfig::uniform(1, sigma, InnovationSpec{}, 1 << 14, 1 << 14);
  const auto acov = mean_autocovariance(config, replicate_seeds(21, 64), 64);
  std::vector<double> h, g;
  for (std::size_t lag = 8; lag <= 64; ++lag) {
    h.push_back(static_cast<double>(lag));
    g.push_back(acov[lag - 1]);
  }
  CHECK(std::abs(loglog_slope(h, g) - (1.0 - 2.0 * sigma)) <= 0.15);
}

TEST_CASE("experiment helpers") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
  CHECK_THROWS_AS(median({}), LengthError);
  const std::vector<double> x{1, 2, 4, 8};
  const std::vector<double> y{3, 12, 48, 192};
  CHECK(loglog_slope(x, y) == doctest::Approx(2.0));
  const auto acov = autocovariance(std::vector<double>{1, -1, 1, -1}, 2);
  CHECK(acov[0] == doctest::Approx(-0.75));
  CHECK(acov[1] == doctest::Approx(0.5));
  CHECK(replicate_seeds(1, 3) == replicate_seeds(1, 3));
  CHECK(replicate_seeds(1, 3)[0] != replicate_seeds(2, 3)[0]);
}

TEST_CASE("tensor pipeline degenerates to the scalar pipeline") {
  TensorConfig tc;
  tc.m = 1;
  tc.d_out = 1;
  tc.s = 2;
  tc.sigmas = {0.8};
  tc.length = 1 << 10;
  tc.window = 1 << 12;
  tc.exponents = {0.5, 1.0};
  const auto tensors = simulate_tensor_paths(tc, 31);
  const auto scalar = simulate_paths(ProcessConfig::uniform(2, 0.8, tc.innov, tc.length, tc.window, Sharing::independent), 31);
  REQUIRE(tensors.entries == 1);
  REQUIRE(tensors.tensors.size() == scalar.d.size());
  double partial = 0.0;
  for (std::size_t k = 0; k < scalar.d.size(); ++k) {
    CHECK(std::abs(tensors.tensors[k] - scalar.d[k]) <= 1e-12 * std::max(1.0, std::abs(scalar.d[k])));
    partial += scalar.d[k];
    const double expected = std::abs(partial) / std::pow(static_cast<double>(k + 1), 0.5);
    CHECK(tensors.normalized_norms[0][k] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("tensor with zero innovations is zero") {
  TensorConfig tc;
  tc.m = 2;
  tc.d_out = 2;
  tc.s = 2;
  tc.sigmas = {0.8};
  tc.length = 100;
  tc.window = 16;
  tc.exponents = {1.0};
  const std::vector<std::vector<double>> zeros(4, std::vector<double>(132, 0.0));
  const auto t = simulate_tensor_paths_from_innovations(tc, zeros);
  CHECK(t.entries == 4);
  CHECK(std::all_of(t.tensors.begin(), t.tensors.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("tensor entries are outer products") {
  TensorConfig tc;
  tc.m = 3;
  tc.d_out = 2;
  tc.s = 3;
  tc.sigmas = {0.7, 0.8, 0.9};
  tc.length = 20;
  tc.window = 8;
  tc.exponents = {1.0};
  const auto t = simulate_tensor_paths(tc, 2);
  REQUIRE(t.entries == 8);
  // Every component vector has identical coordinates (all-ones pattern), so
  // every tensor entry at time k is the same number.
  for (std::size_t k = 0; k < 20; ++k) {
    for (std::size_t a = 1; a < 8; ++a) CHECK(t.tensors[k * 8 + a] == doctest::Approx(t.tensors[k * 8]));
  }
  tc.max_entries = 7;
  CHECK_THROWS_AS(simulate_tensor_paths(tc, 2), ConfigError);
}

TEST_CASE("tensor normalised norms decrease inside the convergence range") {
  TensorConfig tc;
  tc.m = 2;
  tc.d_out = 2;
  tc.s = 2;
  tc.sigmas = {0.8};
  tc.length = 1 << 14;
  tc.exponents = {1.0 / 1.2};
  tc.keep_tensors = false;
  std::vector<double> ratios;
  for (const auto seed : replicate_seeds(5, 16)) {
    const auto f = simulate_tensor_paths(tc, seed).normalized_norms[0];
    ratios.push_back(f.back() / f[(1 << 10) - 1]);
  }
  CHECK(median(ratios) < 1.0);
}
