#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "cvrpisa/dbscan.hpp"

using namespace cvrpisa;

TEST_CASE("DBSCAN agrees with brute-force density reachability") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int c = 0; c < 200; ++c) {
    const std::size_t n = 1 + static_cast<std::size_t>(c % 60);
    std::vector<Point> pts(n);
    for (auto& p : pts) p = {u(rng), u(rng)};
    const DbscanParams params{0.05 + 0.1 * (c % 3), 2 + static_cast<std::size_t>(c % 4)};
    const auto got = dbscan(pts, params);
    const auto ref = oracle::density_structure(pts, params.eps, params.min_pts);
    CAPTURE(c);
    REQUIRE(got.cluster_count == static_cast<int>(ref.components));
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      ok = ok && (got.labels[i] == DbscanResult::kNoise) == ref.noise[i];
      for (std::size_t j = 0; j < n; ++j)
        if (ref.core[i] && ref.core[j])
          ok = ok && (got.labels[i] == got.labels[j]) == (ref.core_component[i] == ref.core_component[j]);
    }
    CHECK(ok);
  }
}

TEST_CASE("two separated blobs form two clusters of 20") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g(0.0, 0.02);
  std::vector<Point> pts;
  for (int i = 0; i < 20; ++i) pts.push_back({0.1 + g(rng), 0.1 + g(rng)});
  for (int i = 0; i < 20; ++i) pts.push_back({0.9 + g(rng), 0.9 + g(rng)});
  const auto r = dbscan(pts, {});
  CHECK(r.cluster_count == 2);
  std::vector<int> size(2, 0);
  for (int l : r.labels) {
    REQUIRE(l >= 0);
    ++size[static_cast<std::size_t>(l)];
  }
  CHECK(size[0] == 20);
  CHECK(size[1] == 20);
}
