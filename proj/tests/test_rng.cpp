#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "popmatch/rng.hpp"
#include "test_util.hpp"

using popmatch::Rng;
using popmatch::derive_seed;

TEST_CASE("same seed, same stream") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("derived streams are distinct and order independent") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 4; ++s)
    for (std::uint64_t i = 0; i < 64; ++i) seeds.insert(derive_seed(s, i));
  CHECK(seeds.size() == 4 * 64);
  CHECK(derive_seed(7, 3, 9) == derive_seed(derive_seed(7, 3), 9));
}

TEST_CASE("below stays in range and is uniform") {
  Rng rng(123);
  for (int i = 0; i < 10000; ++i) CHECK(rng.below(7) < 7);
  CHECK(rng.below(1) == 0);

  std::vector<std::uint64_t> counts(6, 0);
  Rng rng2(99);
  for (int i = 0; i < 600000; ++i) ++counts[rng2.below(6)];
  CHECK(testutil::chi_square_uniform(counts) < testutil::kChi2_999_df5);
}

TEST_CASE("unit lies in [0, 1)") {
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("poisson mean matches, including the splitting path") {
  for (const double mean : {0.5, 3.0, 100.0}) {
    Rng rng(7);
    const int draws = 100000;
    double sum = 0;
    for (int i = 0; i < draws; ++i) sum += static_cast<double>(rng.poisson(mean));
    const double sample_mean = sum / draws;
    const double tolerance = 5.0 * std::sqrt(mean / draws);
    CHECK(std::abs(sample_mean - mean) < tolerance);
  }
  Rng rng(1);
  CHECK(rng.poisson(0.0) == 0);
}

TEST_CASE("binomial mean matches on both halves of p") {
  for (const double p : {0.3, 0.7}) {
    Rng rng(11);
    const std::uint64_t n = 50;
    const int draws = 100000;
    double sum = 0;
    for (int i = 0; i < draws; ++i) sum += static_cast<double>(rng.binomial(n, p));
    const double mean = static_cast<double>(n) * p;
    const double sd = std::sqrt(static_cast<double>(n) * p * (1 - p));
    CHECK(std::abs(sum / draws - mean) < 5.0 * sd / std::sqrt(draws));
  }
  Rng rng(2);
  CHECK(rng.binomial(10, 0.0) == 0);
  CHECK(rng.binomial(10, 1.0) == 10);
}
