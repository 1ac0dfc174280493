#include <cmath>
#include <sstream>

#include "doctest.h"
#include "mslln/error.hpp"
#include "mslln/ingest.hpp"
#include "support.hpp"

using namespace mslln;
using namespace std::chrono;

namespace {

PriceSeries parse(const std::string& text) {
  std::istringstream in(text);
  return parse_prices(in);
}

std::vector<double> iota_series(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i + 1);
  return v;
}

}  // namespace

TEST_CASE("price parsing drops missing prices") {
  const auto p = parse("Date,Adj Close\n2020-01-02,10\n2020-01-03,null\n2020-01-06,11\n");
  REQUIRE(p.size() == 2);
  CHECK(p.adj_close == std::vector<double>{10.0, 11.0});
  CHECK(p.dates[1] == year_month_day{year{2020}, month{1}, day{6}});

  const auto tabbed = parse("Date\tAdj Close\n01/02/2020\t5.5\n01/03/2020\tNA\n01/06/2020\t\n");
  REQUIRE(tabbed.size() == 1);
  CHECK(tabbed.adj_close[0] == 5.5);

  CHECK_THROWS_AS(parse("Date,Adj Close\n"), DataError);
  CHECK_THROWS_AS(parse("Date,Adj Close\n2020-01-02,null\n"), DataError);
  CHECK_THROWS_AS(parse("Date,Close\n2020-01-02,1\n"), SchemaError);
  CHECK_THROWS_AS(parse(""), DataError);
}

TEST_CASE("price fixture") {
  const auto p = load_prices(test_support::fixture("prices_small.csv").string());
  CHECK(p.size() == 4);
  CHECK(p.adj_close.back() == 8.9);
  const auto by_close = load_prices(test_support::fixture("prices_small.csv").string(), "Close");
  CHECK(by_close.size() == 5);
  CHECK_THROWS_AS(load_prices(test_support::fixture("missing.csv").string()), Error);
}

TEST_CASE("log returns") {
  CHECK(log_returns(std::vector<double>(5, 7.0)) == std::vector<double>(5, 0.0));
  const auto r = log_returns(std::vector<double>{1.0, std::exp(1.0)});
  CHECK(r[0] == 0.0);
  CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-15));
  const auto r2 = log_returns(std::vector<double>{100.0, 101.0});
  CHECK(r2[1] == doctest::Approx(std::log(1.01)).epsilon(1e-14));
  CHECK(r2[1] == doctest::Approx(0.00995).epsilon(1e-3));
  CHECK_THROWS_AS(log_returns(std::vector<double>{1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(log_returns(std::vector<double>{-1.0, 1.0}), DomainError);
}

TEST_CASE("property: exponential prices give constant returns") {
  test_support::Gen g(21);
  for (int trial = 0; trial < 50; ++trial) {
    const double rate = g.uniform(-0.01, 0.01);
    const double start = g.uniform(1.0, 500.0);
    std::vector<double> prices(400);
    for (std::size_t i = 0; i < prices.size(); ++i) prices[i] = start * std::exp(rate * static_cast<double>(i));
    const auto r = log_returns(prices);
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] == doctest::Approx(rate).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("reference window") {
  const auto a = select_window(iota_series(2701));
  REQUIRE(a.size() == 2601);
  CHECK(a.front() == 1.0);
  CHECK(a.back() == 2601.0);
  CHECK_THROWS_AS(select_window(iota_series(2700)), LengthError);
  const auto b = select_window(iota_series(5000));
  REQUIRE(b.size() == 2601);
  CHECK(b.front() == 2300.0);
  CHECK(b.back() == 4900.0);
  for (const std::size_t n : {2701, 3000, 4096, 10000}) CHECK(select_window(iota_series(n)).size() == 2601);
  CHECK(select_window(iota_series(50), 0, 50).size() == 50);
}

TEST_CASE("dates") {
  CHECK(parse_date("2009-10-23") == kReferenceFrom);
  CHECK(parse_date("02/25/2020") == kReferenceTo);
  CHECK_FALSE(parse_date("2020-02-30").has_value());
  CHECK_FALSE(parse_date("yesterday").has_value());
  CHECK(format_date(kReferenceFrom) == "2009-10-23");

  const auto p = load_prices(test_support::fixture("prices_small.csv").string());
  const auto range = date_range(p, year_month_day{year{2009}, month{10}, day{23}},
                                year_month_day{year{2009}, month{10}, day{27}});
  REQUIRE(range.has_value());
  CHECK(range->first == 1);
  CHECK(range->last == 2);
  CHECK_FALSE(date_range(p, kReferenceFrom, kReferenceTo).has_value());
}

TEST_CASE("save and load round trip") {
  const auto dir = test_support::scratch_dir("ingest");
  auto p = load_prices(test_support::fixture("prices_small.csv").string());
  p.adj_close[0] = 0.1 + 0.2;
  const auto path = (dir / "clean.tsv").string();
  save_prices(p, path);
  const auto q = load_prices(path);
  CHECK(q.adj_close == p.adj_close);
  CHECK(q.dates == p.dates);

  const std::vector<double> values{1.0 / 3.0, -2.5e-7, 4.0};
  std::istringstream in(to_column_csv(values, "logreturn"));
  CHECK(parse_column(in, "logreturn") == values);
}
