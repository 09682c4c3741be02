#include "votelab/scenarios.hpp"

#include <string>

namespace votelab::scenarios {

namespace {

std::vector<std::string> six_grades() { return {"1", "2", "3", "4", "5", "6"}; }

void repeat(std::vector<RatedBallot>& out, std::size_t times, std::vector<double> ratings) {
  for (std::size_t i = 0; i < times; ++i) out.push_back({ratings});
}

void repeat(std::vector<RankedBallot>& out, std::size_t times, std::vector<CandidateId> ranking) {
  for (std::size_t i = 0; i < times; ++i) out.push_back({ranking});
}

}  // namespace

Profile overwhelming_favorite_graded() {
  std::vector<RatedBallot> ballots;
  repeat(ballots, 49, {2, 1});
  repeat(ballots, 49, {6, 5});
  repeat(ballots, 1, {3, 4});
  return Profile::rated(2, RatingScale::graded(six_grades()), std::move(ballots));
}

Profile overwhelming_favorite_range() {
  std::vector<RatedBallot> ballots;
  repeat(ballots, 98, {50, 49});
  repeat(ballots, 1, {0, 99});
  return Profile::rated(2, RatingScale::integer(0, 99), std::move(ballots));
}

Profile nine_voter_opinions() {
  std::vector<RatedBallot> ballots;
  repeat(ballots, 4, {8, 9});
  repeat(ballots, 4, {1, 2});
  repeat(ballots, 1, {5.5, 4.5});
  return Profile::rated(2, RatingScale::continuous(0, 10), std::move(ballots));
}

Profile approvals_above(const Profile& opinions, double threshold) {
  std::vector<RatedBallot> ballots;
  for (const auto& b : opinions.rated_ballots()) {
    RatedBallot approval;
    for (double r : b.ratings) approval.ratings.push_back(r > threshold ? 1.0 : 0.0);
    ballots.push_back(std::move(approval));
  }
  return Profile::rated(opinions.candidate_count(), RatingScale::integer(0, 1), std::move(ballots),
                        std::vector<std::uint32_t>(opinions.weights().begin(), opinions.weights().end()));
}

Profile three_team_league() {
  const CandidateId a = candidate(0);
  const CandidateId b = candidate(1);
  const CandidateId c = candidate(2);
  std::vector<RankedBallot> games;
  repeat(games, 9, {a, b});
  repeat(games, 9, {b, c});
  repeat(games, 5, {c, a});
  repeat(games, 4, {a, c});
  return Profile::ranked(3, std::move(games), {}, Unlisted::kUnranked);
}

SpatialConfig centrist_vs_offset_config() { return {{0.0, 0.5}, PercentileGrid{99}, 3.0}; }

Profile centrist_vs_offset() { return generate_rated_profile(centrist_vs_offset_config()); }

}  // namespace votelab::scenarios
