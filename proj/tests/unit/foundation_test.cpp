#include <cmath>
#include <limits>

#include "doctest.h"
#include "mslln/convolution.hpp"
#include "mslln/error.hpp"
#include "mslln/format.hpp"
#include "mslln/keyvalue.hpp"
#include "mslln/rng.hpp"
#include "support.hpp"

using namespace mslln;
using test_support::Gen;

TEST_CASE("mix64 matches the SplitMix64 reference stream") {
  // First outputs of SplitMix64 seeded with 0.
  CounterRng rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next() == 0x06C45D188009454FULL);
}

TEST_CASE("counter rng is random access") {
  CounterRng a(42);
  for (int i = 0; i < 10; ++i) a.next();
  CounterRng b(42, 10);
  CHECK(a.next() == b.next());
  CHECK(CounterRng(42).at(10) == CounterRng(42, 10).next());
}

TEST_CASE("uniforms are in the open unit interval") {
  CHECK(CounterRng::to_open_unit(0) > 0.0);
  CHECK(CounterRng::to_open_unit(~0ULL) < 1.0);
  CounterRng rng(7);
  double sum = 0.0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) sum += rng.uniform();
  CHECK(std::abs(sum / n - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / n) * 1.5);
}

TEST_CASE("derived streams differ") {
  CHECK(derive_stream(1, 0) != derive_stream(1, 1));
  CHECK(derive_stream(1, 0) != derive_stream(2, 0));
  CHECK(derive_stream(9, 3) == derive_stream(9, 3));
}

TEST_CASE("format_real round-trips") {
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_real(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_real(std::nan("")) == "nan");
  Gen g(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = g.normal() * std::pow(10.0, g.uniform(-300, 300));
    double back = 0.0;
    REQUIRE(parse_real(format_real(v), back));
    CHECK(back == v);
  }
}

TEST_CASE("parse_real and lists") {
  double v = 0.0;
  CHECK(parse_real(" 2.5 ", v));
  CHECK(v == 2.5);
  CHECK(parse_real("Inf", v));
  CHECK(std::isinf(v));
  CHECK(parse_real("+3", v));
  CHECK(v == 3.0);
  CHECK_FALSE(parse_real("3x", v));
  CHECK_FALSE(parse_real("", v));
  CHECK_FALSE(parse_real("null", v));
  CHECK(parse_real_list("0.5, 0.6,1") == std::vector<double>{0.5, 0.6, 1.0});
  CHECK(parse_int_list("1,2,3") == std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(parse_int_list("1,x"), ConfigError);
  CHECK_THROWS_AS(parse_int_list("1.5"), ConfigError);
  CHECK(join_reals(std::vector<double>{0.5, 1.0}) == "0.5,1");
}

TEST_CASE("key-value documents") {
  const auto doc = KeyValueDocument::parse(
      "# comment\n"
      "top = 1\n"
      "[process]\n"
      "s = 2\n"
      "sigma = 0.7, 0.9   # trailing\n"
      "\n"
      "[innovations]\n"
      "family = symmetric_pareto\n");
  CHECK(doc.section("").get_int("top") == 1);
  CHECK(doc.section("process").get_int("s") == 2);
  CHECK(doc.section("process").get_real_list("sigma") == std::vector<double>{0.7, 0.9});
  CHECK(doc.section("innovations").get("family") == "symmetric_pareto");
  CHECK_FALSE(doc.has_section("missing"));
  CHECK(doc.section("missing").entries().empty());
  CHECK_THROWS_AS(doc.section("process").get("nope"), ConfigError);
  CHECK_THROWS_AS(doc.section("process").reject_unknown({"s"}), ConfigError);
  CHECK_NOTHROW(doc.section("process").reject_unknown({"s", "sigma"}));

  const auto again = KeyValueDocument::parse(doc.to_string());
  CHECK(again.section("process").get("sigma") == doc.section("process").get("sigma"));
  CHECK_THROWS_AS(KeyValueDocument::parse("[broken\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueDocument::parse("no equals sign\n"), ConfigError);
}

TEST_CASE("FFT convolution matches direct convolution") {
  Gen g(5);
  for (const std::size_t n : {std::size_t{1} << 10, std::size_t{3000}}) {
    for (const std::size_t k : {std::size_t{1}, std::size_t{33}, std::size_t{513}}) {
      const auto signal = g.normals(n + k - 1);
      const auto kernel = g.normals(k);
      const auto direct = convolve_valid_direct(signal, kernel);
      const auto fft = convolve_valid(signal, kernel, ConvolutionMethod::fft);
      REQUIRE(direct.size() == n);
      REQUIRE(fft.size() == n);
      double scale = 0.0;
      for (const double v : direct) scale = std::max(scale, std::abs(v));
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(fft[i] - direct[i]) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("direct convolution definition") {
  const std::vector<double> signal{1, 2, 3, 4};
  const std::vector<double> kernel{1, 10};
  // out[i] = kernel[0] signal[i + 1] + kernel[1] signal[i]
  CHECK(convolve_valid_direct(signal, kernel) == std::vector<double>{12, 23, 34});
}

TEST_CASE("FftConvolver is reusable and deterministic") {
  Gen g(6);
  const auto kernel = g.normals(65);
  FftConvolver conv(kernel, 1000);
  CHECK(conv.kernel_length() == 65);
  CHECK(conv.signal_length() == 1000);
  const auto s = g.normals(1000);
  CHECK(conv.apply(s) == conv.apply(s));
  CHECK_THROWS_AS(conv.apply(g.normals(999)), LengthError);
}
