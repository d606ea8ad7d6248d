#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "cvrpisa/stats.hpp"

using namespace cvrpisa;

TEST_CASE("summaries agree with the two-pass reference") {
  std::mt19937_64 rng(11);
  const auto close = [](double a, long double b) {
    const double ref = static_cast<double>(b);
    return std::abs(a - ref) <= 1e-12 * std::max(1.0, std::abs(ref));
  };
  for (int c = 0; c < 400; ++c) {
    std::uniform_int_distribution<int> nd(1, 60);
    std::vector<double> x(static_cast<std::size_t>(nd(rng)));
    const int shape = c % 4;
    for (auto& v : x) {
      if (shape == 0) v = std::normal_distribution<double>(5.0, 2.0)(rng);
      if (shape == 1) v = std::exponential_distribution<double>(0.3)(rng);
      if (shape == 2) v = std::uniform_int_distribution<int>(0, 4)(rng);
      if (shape == 3) v = std::uniform_real_distribution<double>(-1e3, 1e3)(rng);
    }
    const auto s = summarize(x);
    const auto r = oracle::two_pass(x);
    CAPTURE(c);
    CHECK(close(s.min, r.min));
    CHECK(close(s.max, r.max));
    CHECK(close(s.mean, r.mean));
    CHECK(close(s.median, r.median));
    CHECK(close(s.sd, r.sd));
    CHECK(close(s.var, r.var));
    CHECK(close(s.skew, r.skew));
    CHECK(close(s.kurtosis, r.kurt));
    CHECK(s.min <= s.median);
    CHECK(s.median <= s.max);
  }
}

TEST_CASE("constant and empty samples summarize without NaN") {
  const std::vector<double> c(5, 3.0);
  const auto s = summarize(c);
  CHECK(s.sd == 0.0);
  CHECK(s.var == 0.0);
  CHECK(s.skew == 0.0);
  CHECK(s.kurtosis == 0.0);
  CHECK(s.mean == 3.0);
  const auto e = summarize(std::vector<double>{});
  CHECK(e.max == 0.0);
  CHECK(e.mean == 0.0);
}

TEST_CASE("scaled summary equals the summary of the scaled sample") {
  const std::vector<double> x{1, 2, 2, 5, 9, 11};
  std::vector<double> y;
  for (double v : x) y.push_back(4 * v);
  const auto a = summarize(x).scaled(4.0);
  const auto b = summarize(y);
  CHECK(a.mean == doctest::Approx(b.mean));
  CHECK(a.sd == doctest::Approx(b.sd));
  CHECK(a.var == doctest::Approx(b.var));
  CHECK(a.skew == doctest::Approx(b.skew));
  CHECK(a.kurtosis == doctest::Approx(b.kurtosis));
  CHECK(a.median == doctest::Approx(b.median));
}

TEST_CASE("type-7 quantiles") {
  const std::vector<double> x{4, 1, 3, 2};
  CHECK(quantile(x, 0.0) == 1.0);
  CHECK(quantile(x, 1.0) == 4.0);
  CHECK(quantile(x, 0.5) == 2.5);
  CHECK(quantile(x, 0.25) == doctest::Approx(1.75));
}

TEST_CASE("Pearson is symmetric, bounded and exact on itself") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int c = 0; c < 200; ++c) {
    std::vector<double> a(20), b(20);
    for (auto& v : a) v = g(rng);
    for (auto& v : b) v = g(rng);
    const double r = pearson(a, b);
    CHECK(r == doctest::Approx(pearson(b, a)).epsilon(1e-15));
    CHECK(r >= -1.0);
    CHECK(r <= 1.0);
    CHECK(pearson(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(pearson(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}) == 0.0);
  CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}) == doctest::Approx(-1.0));
}
