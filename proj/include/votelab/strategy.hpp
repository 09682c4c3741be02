#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "votelab/ballots.hpp"
#include "votelab/rules.hpp"

namespace votelab {

/// k supporters of `favored` exaggerate: favored gets the top sincere rating,
/// opponent the bottom one.
struct AttackSpec {
  CandidateId favored;
  CandidateId opponent;
  std::size_t k = 0;
};

struct RatingExtremes {
  double lo;
  double hi;
};

/// Lowest and highest rating any voter gives any candidate.
RatingExtremes global_rating_extremes(const Profile& profile);

/// Voters (counting weight) who rate favored strictly above opponent.
std::size_t sympathizer_count(const Profile& profile, CandidateId favored, CandidateId opponent);

/// The attackers are the k sympathizers who rate the opponent lowest; equal
/// ratings go to the lower ballot index first. Weighted ballots split when only
/// part of their weight is needed.
Profile apply_strategic_voters(const Profile& profile, const AttackSpec& spec);

/// Ballot indices of the attackers, in selection order, for a unit-weight profile.
std::vector<std::size_t> strategic_voter_order(const Profile& profile, CandidateId favored,
                                               CandidateId opponent);

/// Smallest k in 1..sympathizers that makes `favored` the sole winner under `rule`.
std::optional<std::size_t> min_flippers(const Profile& profile, const Rule& rule, CandidateId favored,
                                        CandidateId opponent);
std::optional<std::size_t> min_flippers(const Profile& profile,
                                        const std::function<Outcome(const Profile&)>& rule,
                                        CandidateId favored, CandidateId opponent);

/// Maps ratings to grades min(G, floor(r / width) + 1); bin edges go to the upper bin.
Profile discretize_profile(const Profile& profile, double bin_width = 0.5, std::size_t grade_count = 6);

int discretize_rating(double rating, double bin_width = 0.5, std::size_t grade_count = 6);

}  // namespace votelab
