#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "votelab/rules.hpp"
#include "votelab/scenarios.hpp"
#include "votelab/spatial.hpp"

using namespace votelab;

TEST_CASE("inverse normal CDF agrees with bisection to 1e-9") {
  double worst = 0;
  for (int i = 0; i <= 20000; ++i) {
    // Log-spaced in the tails, linear in the middle.
    const double t = static_cast<double>(i) / 20000.0;
    const double p = t < 0.5 ? 1e-6 * std::pow(0.5 / 1e-6, 2 * t) : 1.0 - 1e-6 * std::pow(0.5 / 1e-6, 2 * (1 - t));
    if (!(p > 0 && p < 1)) continue;
    worst = std::max(worst, std::abs(inverse_normal_cdf(p) - oracle::normal_quantile(p)));
  }
  for (int i = 1; i < 1000; ++i) {
    const double p = i / 1000.0;
    worst = std::max(worst, std::abs(inverse_normal_cdf(p) - oracle::normal_quantile(p)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("inverse normal CDF reference points") {
  CHECK(inverse_normal_cdf(0.01) == doctest::Approx(-2.326347874).epsilon(1e-10));
  CHECK(inverse_normal_cdf(0.5) == 0.0);
  CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959963985).epsilon(1e-9));
  // Exact mirror whenever 1 - p is representable; otherwise within rounding.
  for (int k = 1; k < 512; ++k) {
    const double p = k / 1024.0;
    REQUIRE(inverse_normal_cdf(p) == -inverse_normal_cdf(1.0 - p));
  }
  CHECK(inverse_normal_cdf(0.3) == doctest::Approx(-inverse_normal_cdf(0.7)).epsilon(1e-14));
  CHECK_THROWS_AS(inverse_normal_cdf(0.0), Error);
  CHECK_THROWS_AS(inverse_normal_cdf(1.0), Error);
}

TEST_CASE("percentile grid is symmetric and increasing") {
  for (std::size_t n : {1u, 2u, 15u, 98u, 99u}) {
    const auto pos = percentile_grid(n).positions;
    REQUIRE(pos.size() == n);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(pos[i] == -pos[n - 1 - i]);
    for (std::size_t i = 1; i < n; ++i) REQUIRE(pos[i] > pos[i - 1]);
  }
  const auto grid = percentile_grid(99).positions;
  CHECK(grid[0] == doctest::Approx(-2.326347874));
  CHECK(grid[49] == 0.0);
  std::size_t below = 0;
  for (double x : grid) below += x < 0.5 ? 1 : 0;
  CHECK(below == 69);
}

TEST_CASE("sampled voters look standard normal and repeat per seed") {
  Rng rng(2024);
  const auto v = sample_voters(10000, rng).positions;
  double mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size() - 1);
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.05);

  const SpatialConfig cfg{{0.0, 0.3}, NormalSample{55, 7}, 3.0};
  CHECK(generate_rated_profile(cfg) == generate_rated_profile(cfg));
  const SpatialConfig other{{0.0, 0.3}, NormalSample{55, 8}, 3.0};
  CHECK_FALSE(generate_rated_profile(cfg) == generate_rated_profile(other));
  CHECK(generate_rated_profile(scenarios::centrist_vs_offset_config()) == scenarios::centrist_vs_offset());
}

TEST_CASE("sincere ratings fall with distance") {
  CHECK(sincere_rating(0.0, 0.5, 3.0) == 2.5);
  CHECK(sincere_rating(-1.0, 0.5, 3.0) == 1.5);
  const auto p = scenarios::centrist_vs_offset();
  CHECK(p.scale().kind() == ScaleKind::kContinuous);
  CHECK(p.scale().max() == 3.0);
  CHECK(p.scale().min() == doctest::Approx(0.1737).epsilon(1e-3));
}

TEST_CASE("nearest-candidate ballots") {
  const double positions[] = {0.0, 0.5, -1.0};
  CHECK(nearest_candidate_ballot(0.1, positions).ranking ==
        std::vector<CandidateId>{candidate(0), candidate(1), candidate(2)});
  CHECK(nearest_candidate_ballot(-0.8, positions).ranking ==
        std::vector<CandidateId>{candidate(2), candidate(0), candidate(1)});
  // Midpoint of A and B: no preference between them.
  CHECK(nearest_candidate_ballot(0.25, std::span<const double>(positions, 2)).ranking.empty());
  // Tie for second place leaves both at the bottom.
  const double line[] = {0.0, 1.0, -1.0};
  CHECK(nearest_candidate_ballot(0.0, line).ranking == std::vector<CandidateId>{candidate(0)});
}

TEST_CASE("nearest vote agrees with sincere ratings on two candidates") {
  Rng rng(99);
  const double positions[] = {0.0, 0.37};
  const auto voters = sample_voters(2000, rng);
  const Profile ranked = nearest_candidate_profile(voters, positions);
  const Profile rated = rated_profile(voters, positions, 3.0);
  CHECK(pairwise_tally(ranked) == pairwise_tally(rated));
}

TEST_CASE("the median candidate wins majority rule on odd percentile grids") {
  for (std::size_t n : {1u, 3u, 15u, 55u, 95u, 99u, 101u}) {
    for (double b : {-1.2, -0.3, 0.01, 0.1, 0.5, 2.0}) {
      const double positions[] = {0.0, b};
      const Outcome o = majority_rule(rated_profile(percentile_grid(n), positions, 3.0));
      REQUIRE(o.winner == candidate(0));
    }
  }
}
