#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "votelab/ballots.hpp"
#include "votelab/random.hpp"

namespace votelab {

/// Quantile function of the standard normal distribution, p in (0, 1).
double inverse_normal_cdf(double p);

/// Voters placed at the i/(n+1) quantiles of N(0, 1), i = 1..n.
struct PercentileGrid {
  std::size_t voters = 99;
};

/// Voters drawn independently from N(0, 1) with a seeded generator.
struct NormalSample {
  std::size_t voters = 99;
  std::uint64_t seed = 0;
};

using Placement = std::variant<PercentileGrid, NormalSample>;

/// A one-dimensional left-right model: candidates and voters are points on a line.
struct SpatialConfig {
  std::vector<double> candidate_positions;
  Placement placement = PercentileGrid{};
  double rating_offset = 3.0;
};

struct VoterSet {
  std::vector<double> positions;
};

VoterSet percentile_grid(std::size_t n);
VoterSet sample_voters(std::size_t n, Rng& rng);
VoterSet place_voters(const Placement& placement);

/// offset minus the distance between voter and candidate.
constexpr double sincere_rating(double voter, double candidate_position, double offset) {
  const double d = voter - candidate_position;
  return offset - (d < 0 ? -d : d);
}

/// Continuous-scale profile of sincere ratings; the scale spans the ratings attained.
Profile generate_rated_profile(const SpatialConfig& config);
Profile rated_profile(const VoterSet& voters, std::span<const double> candidate_positions,
                      double offset);

/// Candidates ordered nearest first. Equidistant candidates end the ranking,
/// so a voter at the midpoint of two candidates abstains on that pair.
RankedBallot nearest_candidate_ballot(double voter, std::span<const double> candidate_positions);

/// Nearest-candidate ranked ballots for every voter.
Profile nearest_candidate_profile(const VoterSet& voters, std::span<const double> candidate_positions);

}  // namespace votelab
